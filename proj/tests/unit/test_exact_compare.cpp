#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "cubext/exact_compare.hpp"
#include "test_support.hpp"

using namespace cubext;
using cubext::testing::uniform;

namespace {

const QuadBasis& qi_basis() {
  static const Order o(field_for(-4));
  static const QuadBasis b = basis_of(o);
  return b;
}

FieldElem q(const mpq_class& v) { return FieldElem::from_rational(qi_basis(), v); }

// (p + sqrt n) / d as the root of (d x - p)^2 - n, n not a square.
struct QuadIrr {
  long p, n, d;
};

AlgebraicReal make(const QuadIrr& v) {
  const mpz_class s = sqrt(mpz_class(v.n));
  const KPoly f({q(v.p * v.p - v.n), q(-2 * v.p * v.d), q(v.d * v.d)});
  return AlgebraicReal::rational_root(f, mpq_class(v.p + s, v.d), mpq_class(v.p + s + 1, v.d));
}

// Independent oracle: the value at 2000 bits straight from MPFR.
Mpfr oracle(const QuadIrr& v) {
  Mpfr r(2000);
  mpfr_set_si(r.get(), v.n, MPFR_RNDN);
  mpfr_sqrt(r.get(), r.get(), MPFR_RNDN);
  mpfr_add_si(r.get(), r.get(), v.p, MPFR_RNDN);
  mpfr_div_si(r.get(), r.get(), v.d, MPFR_RNDN);
  return r;
}

Cmp oracle_cmp(const Mpfr& a, const Mpfr& b) {
  Mpfr diff(2000);
  mpfr_sub(diff.get(), a.get(), b.get(), MPFR_RNDN);
  if (mpfr_zero_p(diff.get()) || mpfr_get_exp(diff.get()) < -1900) return Cmp::Equal;
  return mpfr_sgn(diff.get()) < 0 ? Cmp::Less : Cmp::Greater;
}

long non_square(std::mt19937_64& g, long hi) {
  for (;;) {
    const long n = uniform(g, 2, hi);
    const long s = static_cast<long>(std::sqrt(static_cast<double>(n)));
    if (s * s != n && (s + 1) * (s + 1) != n) return n;
  }
}

}  // namespace

TEST(ExactCompare, DefaultCap) {
  EXPECT_EQ(default_precision_cap(1), 4096u);
  EXPECT_EQ(default_precision_cap(10000), 4096u);
  EXPECT_EQ(default_precision_cap(std::int64_t(1) << 62), 4096u);
}

TEST(ExactCompare, RandomPairsMatchOracle) {
  std::mt19937_64 g(2024);
  for (int i = 0; i < 3000; ++i) {
    const QuadIrr a{uniform(g, -20, 20), non_square(g, 500), uniform(g, 1, 12)};
    const QuadIrr b{uniform(g, -20, 20), non_square(g, 500), uniform(g, 1, 12)};
    const Cmp want = oracle_cmp(oracle(a), oracle(b));
    EXPECT_EQ(compare(make(a), make(b)), want) << a.p << " " << a.n << " " << a.d << " vs " << b.p << " " << b.n
                                               << " " << b.d;
  }
}

TEST(ExactCompare, EngineeredEqualities) {
  std::mt19937_64 g(7);
  for (int i = 0; i < 300; ++i) {
    const QuadIrr a{uniform(g, -20, 20), non_square(g, 300), uniform(g, 1, 9)};
    const long k = uniform(g, 2, 6);
    // (k p + sqrt(k^2 n)) / (k d) is the same number with a different polynomial and bracket.
    const QuadIrr b{k * a.p, k * k * a.n, k * a.d};
    CompareStats st;
    EXPECT_EQ(compare(make(a), make(b), 4096, &st), Cmp::Equal);
    EXPECT_EQ(oracle_cmp(oracle(a), oracle(b)), Cmp::Equal);
  }
  // A rational against itself through a quadratic with a rational root.
  const KPoly f({q(-2), q(1), q(1)});  // (x + 2)(x - 1)
  EXPECT_EQ(compare(AlgebraicReal::rational_root(f, mpq_class(1, 2), 2), AlgebraicReal::rational(qi_basis(), 1)),
            Cmp::Equal);
}

TEST(ExactCompare, PellConvergentsNeedPrecision) {
  // p/q -> sqrt 2 with |p/q - sqrt 2| ~ 1 / (2 sqrt 2 q^2).
  mpz_class p = 1, qq = 1;
  const AlgebraicReal r2 = make({0, 2, 1});
  for (int i = 0; i < 80; ++i) {
    const mpz_class np = p + 2 * qq, nq = p + qq;
    p = np;
    qq = nq;
    const mpq_class c(p, qq);
    CompareStats st;
    const Cmp got = compare(AlgebraicReal::rational(qi_basis(), c), r2, 1u << 14, &st);
    // p^2 - 2 q^2 alternates sign: > 0 means p/q > sqrt 2.
    const mpz_class pell = p * p - 2 * qq * qq;
    EXPECT_EQ(got, pell > 0 ? Cmp::Greater : Cmp::Less) << i;
  }
  // Past 2^64 in the denominator a 128-bit cap cannot separate them.
  EXPECT_GT(mpz_sizeinbase(qq.get_mpz_t(), 2), 64u);
  EXPECT_THROW(compare(AlgebraicReal::rational(qi_basis(), mpq_class(p, qq)), r2, 128), PrecisionExhausted);
}

TEST(ExactCompare, MahlerBoundBelowSeparation) {
  std::mt19937_64 g(31);
  for (int i = 0; i < 200; ++i) {
    std::vector<long> roots;
    while (roots.size() < 3) {
      const long r = uniform(g, -40, 40);
      if (std::find(roots.begin(), roots.end(), r) == roots.end()) roots.push_back(r);
    }
    const long den = uniform(g, 1, 7);
    KPoly f = KPoly::constant(q(1));
    double sep = INFINITY;
    for (std::size_t a = 0; a < 3; ++a) {
      f = f * KPoly::linear_root(q(mpq_class(roots[a], den)));
      for (std::size_t b = a + 1; b < 3; ++b) sep = std::min(sep, std::fabs(double(roots[a] - roots[b]) / den));
    }
    const MahlerBound mb = mahler_bound(f);
    EXPECT_EQ(mb.m, 3);
    EXPECT_LE(mb.delta_lower.to_double(MPFR_RNDU), sep);
    EXPECT_GT(mb.delta_lower.to_double(), 0.0);
  }
  const KPoly sq = KPoly::linear_root(q(1)) * KPoly::linear_root(q(1));
  EXPECT_THROW(mahler_bound(sq), NotSeparable);
  EXPECT_THROW(mahler_bound(KPoly::linear_root(q(1))), std::invalid_argument);
}

TEST(ExactCompare, BadBracketRejected) {
  const KPoly f({q(-2), q(0), q(1)});
  EXPECT_THROW(AlgebraicReal::rational_root(f, 2, 3), std::invalid_argument);
  EXPECT_THROW(AlgebraicReal::rational_root(f, 0, mpq_class(0)), std::invalid_argument);
}

class VanishingAllFields : public ::testing::TestWithParam<int> {};

// Each polynomial vanishes at the matching entry of the covariant.
TEST_P(VanishingAllFields, PolysVanishOnCovariant) {
  const Order o(field_for(GetParam()));
  std::mt19937_64 g(55 - GetParam());
  for (int i = 0; i < 15; ++i) {
    const CubicForm f = cubext::testing::random_separable_form(o, g, 4);
    const VanishingPolys v = vanishing_polys(o, f);
    const HermitianForm h = julia_covariant<Mpfr>(o, f, 256);
    const double sd = std::sqrt(static_cast<double>(o.params().D));
    const std::pair<const KPoly*, double> cases[] = {{&v.f_P, h.P.mid().to_double()},
                                                     {&v.f_ReQ, h.Q.re.mid().to_double()},
                                                     {&v.f_ImQ, h.Q.im.mid().to_double() / sd},
                                                     {&v.f_R, h.R.mid().to_double()}};
    for (const auto& [poly, x] : cases) {
      double scale = 0;
      for (int k = 0; k <= poly->degree(); ++k) scale += std::abs(poly->coeff(k).to_complex()) * std::pow(std::fabs(x), k);
      EXPECT_LT(std::abs(poly->eval(std::complex<double>(x, 0))), 1e-8 * scale) << to_string(o, f);
    }
  }
}

// FormDecider signs agree with a wide-margin 512-bit evaluation.
TEST_P(VanishingAllFields, DeciderMatchesHighPrecision) {
  const Order o(field_for(GetParam()));
  std::mt19937_64 g(66 - GetParam());
  for (int i = 0; i < 100; ++i) {
    const CubicForm f = cubext::testing::random_separable_form(o, g, 6);
    FormDecider dec(o, f);
    for (int k = 0; k < 5; ++k) {
      const LinearPredicate p{{uniform(g, -3, 3), uniform(g, -3, 3), uniform(g, -3, 3), uniform(g, -3, 3)}};
      const Interval<Mpfr> y = dec.enclose(p, 512);
      const int want = y.certain_sign();
      if (want == 0) continue;
      EXPECT_EQ(static_cast<int>(dec.sign(p)), want) << to_string(o, f) << " " << p.to_string();
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Fields, VanishingAllFields, ::testing::ValuesIn(cubext::testing::all_fields()));

TEST(FormDecider, ExactZeros) {
  const Order o(field_for(-4));
  // H(x^3 + y^3) = (9, 0, 9): P - R and Re Q, Im Q vanish exactly.
  FormDecider dec(o, {1, 0, 0, 1});
  EXPECT_EQ(dec.sign({{1, 0, 0, -1}}), Sign::Zero);
  EXPECT_EQ(dec.sign({{0, 1, 0, 0}}), Sign::Zero);
  EXPECT_EQ(dec.sign({{0, 0, 1, 0}}), Sign::Zero);
  EXPECT_EQ(dec.sign({{1, 0, 0, 0}}), Sign::Positive);
  EXPECT_EQ(dec.sign({{-1, 0, 0, 0}}), Sign::Negative);
  EXPECT_GE(dec.exact_calls(), 1u);
}

TEST(FormDecider, EmptyCapThrows) {
  const Order o(field_for(-4));
  FormDecider dec(o, {1, 0, 0, 1}, 64);
  EXPECT_THROW(dec.sign({{1, 0, 0, -1}}), PrecisionExhausted);
}
