#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "cubext/enumerator.hpp"
#include "cubext/reduction.hpp"
#include "test_support.hpp"

using namespace cubext;
using cubext::testing::random_elem;
using cubext::testing::random_nonzero;

namespace {

std::vector<CubicForm> reduced_forms(int d_K, std::int64_t X) {
  VectorSink sink;
  EnumerateOptions opts;
  opts.allow_uncertified_domain = true;
  enumerate(field_for(d_K), X, sink, opts);
  std::vector<CubicForm> out;
  for (const auto& r : sink.records) out.push_back(r.form);
  return out;
}

}  // namespace

TEST(Reduction, LoopBoundsQi) {
  const LoopBounds lb = loop_bounds(field_for(-4), 10000);
  EXPECT_NEAR(lb.cH, std::sqrt(3.0) * std::cbrt(0.5) * std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(lb.cH, 1.9442, 1e-4);
  EXPECT_NEAR(lb.X14, 10.0, 1e-12);
  EXPECT_NEAR(lb.a0_max, std::pow(3.0, -0.75) * std::pow(0.5, -0.75) * std::pow(10000.0, 0.125), 1e-12);
}

TEST(Reduction, ResidueBoxOfThreeA) {
  const Order o(field_for(-4));
  const auto b = b0_values(o, 1);
  std::set<std::pair<std::int64_t, std::int64_t>> got;
  for (RingElem e : b) got.insert({e.x, e.y});
  std::set<std::pair<std::int64_t, std::int64_t>> want;
  for (int x = 0; x <= 2; ++x)
    for (int y = 0; y <= 2; ++y) want.insert({x, y});
  EXPECT_EQ(got, want);
  for (int d : cubext::testing::all_fields()) {
    const Order od(field_for(d));
    for (RingElem a : {RingElem(1), RingElem(1, 1), RingElem(2, -1)})
      EXPECT_EQ(static_cast<std::int64_t>(b0_values(od, a).size()), 9 * od.norm(a)) << d;
  }
}

class ReductionAllFields : public ::testing::TestWithParam<int> {};

TEST_P(ReductionAllFields, DiscQuadraticIdentity) {
  const Order o(field_for(GetParam()));
  std::mt19937_64 g(8 - GetParam());
  for (int i = 0; i < 500; ++i) {
    const RingElem a = random_nonzero(g, 5), b = random_elem(g, 5), c = random_elem(g, 5), d = random_elem(g, 9);
    const DiscQuadratic q = disc_quadratic(o, a, b, c);
    EXPECT_EQ(disc_cubic(o, {a, b, c, d}), o.mul(q.A, o.sqr(d)) + o.mul(q.B, d) + q.C);
    const std::complex<double> A = o.to_complex(q.A), B = o.to_complex(q.B), C = o.to_complex(q.C);
    for (auto x : {q.x1, q.x2}) {
      const double scale = std::abs(A) * std::norm(x) + std::abs(B) * std::abs(x) + std::abs(C);
      EXPECT_LE(std::abs(A * x * x + B * x + C), 1e-9 * scale + 1e-12);
    }
  }
}

TEST_P(ReductionAllFields, TauReduce) {
  const Order o(field_for(GetParam()));
  std::mt19937_64 g(9 - GetParam());
  for (int i = 0; i < 300; ++i) {
    const CubicForm f = cubext::testing::random_form(g, 6);
    const TauReduction t = tau_reduce(o, f);
    EXPECT_EQ(t.F0, translate(o, f, t.k));
    const auto box = b0_values(o, f.a);
    EXPECT_NE(std::find(box.begin(), box.end(), t.F0.b), box.end());
    // Unique: every translate reduces to the same F0.
    const RingElem j = random_elem(g, 7);
    EXPECT_EQ(tau_reduce(o, translate(o, f, j)).F0, t.F0);
    // Translation keeps the seminvariants.
    const Seminvariants s = seminvariants(o, f), s0 = seminvariants(o, t.F0);
    EXPECT_EQ(s.P_H, s0.P_H);
    EXPECT_EQ(s.U_H, s0.U_H);
  }
}

TEST(Reduction, JuliaPositionRecoversReducedForms) {
  for (int d : {-4, -3, -8}) {
    const Order o(field_for(d));
    const auto forms = reduced_forms(d, 3000);
    ASSERT_FALSE(forms.empty()) << d;
    std::size_t edge = 0;
    for (const CubicForm& f : forms) {
      FormDecider dec(o, f);
      ASSERT_NE(is_julia_reduced(o, f, dec), Reducedness::No) << to_string(o, f);
      const TauReduction t = tau_reduce(o, f);
      const JuliaPosition jp = julia_position(o, t.F0);
      // The cell of C / O_K is half-open; a form on its edge may come back as a neighbouring translate.
      if (jp.F != f) {
        ++edge;
        bool neighbour = false;
        for (RingElem k : o.elements_of_norm_at_most(2)) neighbour = neighbour || translate(o, jp.F, k) == f;
        EXPECT_TRUE(neighbour) << to_string(o, f);
        continue;
      }
      EXPECT_EQ(translate(o, t.F0, -jp.k), f);
    }
    EXPECT_LT(edge * 4, forms.size()) << d;
  }
}

// Brute force: every k with z + k in the closed F_K (written out per field) is a candidate.
TEST_P(ReductionAllFields, CandidateTranslatesCoverTheDomain) {
  const FieldParams& fp = field_for(GetParam());
  const Order o(fp);
  const double sD = fp.sqrt_D();
  auto in_F = [&](std::complex<double> w) {
    const double x = w.real(), y = w.imag(), e = 1e-12;
    switch (fp.kind) {
      case DomainKind::Qi: return x >= -e && x <= 0.5 + e && y >= -e && y <= 0.5 + e;
      case DomainKind::Qsqrt2: return std::fabs(x) <= 0.5 + e && y >= -e && y <= sD / 4 + e;
      case DomainKind::Qsqrt3: return x >= -e && x <= 0.5 + e && std::fabs(y) <= x / sD + e;
      case DomainKind::Generic: return std::fabs(x) <= 0.5 + e && y >= -e && y <= sD / 4 + e;
    }
    return false;
  };
  std::mt19937_64 g(4 - GetParam());
  int inside = 0;
  for (int i = 0; i < 300; ++i) {
    const double x = std::uniform_real_distribution<double>(-20, 20)(g);
    const double y = std::uniform_real_distribution<double>(-20, 20)(g);
    const auto ks = candidate_translates(o, {Interval<double>(x - 1e-9, x + 1e-9), Interval<double>(y - 1e-9, y + 1e-9)});
    for (std::int64_t ky = -60; ky <= 60; ++ky)
      for (std::int64_t kx = -60; kx <= 60; ++kx) {
        const RingElem k(kx, ky);
        if (!in_F(std::complex<double>(x, y) + o.to_complex(k))) continue;
        ++inside;
        EXPECT_NE(std::find(ks.begin(), ks.end(), k), ks.end()) << x << " " << y;
      }
  }
  EXPECT_GT(inside, 10);
}

TEST(Reduction, NeighbouringFormsAreNotReduced) {
  const Order o(field_for(-4));
  const auto forms = reduced_forms(-4, 3000);
  int checked = 0;
  for (const CubicForm& f : forms) {
    for (RingElem k : {RingElem(1), RingElem(-1), RingElem(0, 1), RingElem(0, -1)}) {
      const CubicForm g = translate(o, f, k);
      FormDecider dec(o, g);
      EXPECT_EQ(is_julia_reduced(o, g, dec), Reducedness::No) << to_string(o, f);
      ++checked;
    }
  }
  EXPECT_GT(checked, 0);
}

// Contrapositive of the leading-coefficient bound.
TEST(Reduction, LargeLeadingCoefficientIsNotReduced) {
  const Order o(field_for(-4));
  std::mt19937_64 g(12);
  int tested = 0;
  for (int i = 0; i < 3000 && tested < 200; ++i) {
    CubicForm f = cubext::testing::random_separable_form(o, g, 8);
    const std::int64_t n = o.norm(disc_cubic(o, f));
    const LoopBounds lb = loop_bounds(field_for(-4), n);
    if (std::sqrt(static_cast<double>(o.norm(f.a))) <= lb.a0_max * (1 + 1e-9)) continue;
    ++tested;
    FormDecider dec(o, f);
    EXPECT_EQ(is_julia_reduced(o, f, dec), Reducedness::No) << to_string(o, f);
  }
  EXPECT_GT(tested, 50);
}

TEST(Reduction, EnumeratedFormsRespectLoopBounds) {
  const Order o(field_for(-4));
  const std::int64_t X = 3000;
  const LoopBounds lb = loop_bounds(field_for(-4), X);
  for (const CubicForm& f : reduced_forms(-4, X)) {
    const CubicForm f0 = tau_reduce(o, f).F0;
    EXPECT_LE(std::abs(o.to_complex(f0.a)), lb.a0_max * (1 + 1e-9));
    const double c_max = (std::norm(o.to_complex(f0.b)) + lb.cH * lb.X14) / (3 * std::abs(o.to_complex(f0.a)));
    EXPECT_LE(std::abs(o.to_complex(f0.c)), c_max * (1 + 1e-9));
    const auto cs = c0_values(o, lb, f0.a, f0.b);
    EXPECT_NE(std::find(cs.begin(), cs.end(), f0.c), cs.end());
    const auto ds = d0_values(o, lb, f0.a, f0.b, f0.c);
    EXPECT_NE(std::find(ds.begin(), ds.end(), f0.d), ds.end());
  }
}

INSTANTIATE_TEST_SUITE_P(Fields, ReductionAllFields, ::testing::ValuesIn(cubext::testing::all_fields()));
