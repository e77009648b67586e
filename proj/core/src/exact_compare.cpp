#include "cubext/exact_compare.hpp"

#include <array>
#include <cmath>
#include <mutex>

namespace cubext {

PrecisionExhausted::PrecisionExhausted(unsigned needed_, unsigned cap_, const std::string& what)
    : std::runtime_error("precision cap of " + std::to_string(cap_) + " bits exhausted (" + what + ", next step " +
                         std::to_string(needed_) + " bits)"),
      needed(needed_),
      cap(cap_) {}

unsigned default_precision_cap(std::int64_t X) {
  const double lg = std::log2(static_cast<double>(std::max<std::int64_t>(X, 2)));
  return std::max(4096u, static_cast<unsigned>(64.0 * std::ceil(lg)));
}

AlgebraicReal::AlgebraicReal(KPoly van_poly, Encloser enclose) : f_(std::move(van_poly)), enc_(std::move(enclose)) {
  if (f_.is_zero()) throw std::invalid_argument("vanishing polynomial must be nonzero");
}

AlgebraicReal AlgebraicReal::rational(QuadBasis b, const mpq_class& q) {
  return AlgebraicReal(KPoly::linear_root(FieldElem::from_rational(b, q)),
                       [q](unsigned prec) { return Interval<Mpfr>::from_mpq(q, prec); });
}

namespace {

mpq_class as_rational(const FieldElem& e) {
  if (!e.is_rational()) throw std::invalid_argument("expected a rational value");
  return mpq_class(e.x(), e.den());
}

int rational_sign_at(const std::vector<mpq_class>& c, const mpq_class& x) {
  mpq_class v = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * x + *it;
  return sgn(v);
}

struct Bracket {
  std::vector<mpq_class> coeffs;
  mpq_class lo, hi;
  int sign_lo = 0;
  std::mutex mu;
};

}  // namespace

AlgebraicReal AlgebraicReal::rational_root(const KPoly& f, const mpq_class& lo, const mpq_class& hi) {
  auto st = std::make_shared<Bracket>();
  for (const auto& c : f.coeffs()) st->coeffs.push_back(as_rational(c));
  st->lo = lo;
  st->hi = hi;
  st->sign_lo = rational_sign_at(st->coeffs, lo);
  const int sh = rational_sign_at(st->coeffs, hi);
  if (st->sign_lo == 0 || sh == 0 || st->sign_lo == sh)
    throw std::invalid_argument("bracket endpoints must have opposite nonzero signs");
  return AlgebraicReal(f, [st](unsigned prec) {
    std::lock_guard<std::mutex> lock(st->mu);
    mpz_class scale = 1;
    {
      mpq_class a = abs(st->lo) + 1;
      while (a > 1) {
        a /= 2;
        scale *= 2;
      }
    }
    mpq_class tol(scale);
    tol /= mpz_class(1) << static_cast<mp_bitcnt_t>(prec);
    while (st->hi - st->lo > tol) {
      mpq_class mid = (st->lo + st->hi) / 2;
      const int s = rational_sign_at(st->coeffs, mid);
      if (s == 0) {
        st->lo = st->hi = mid;
        break;
      }
      if (s == st->sign_lo)
        st->lo = mid;
      else
        st->hi = mid;
    }
    return Interval<Mpfr>(Num<Mpfr>::from_mpq(st->lo, prec, Dir::Down), Num<Mpfr>::from_mpq(st->hi, prec, Dir::Up));
  });
}

namespace {

using IM = Interval<Mpfr>;

IM pow_interval(const IM& x, unsigned e, unsigned prec) {
  IM r = IM::from_long(1, prec);
  for (unsigned i = 0; i < e; ++i) r = r * x;
  return r;
}

}  // namespace

MahlerBound mahler_bound(const KPoly& f) {
  if (f.degree() < 2) throw std::invalid_argument("Mahler bound needs degree >= 2");
  const FieldElem disc = discriminant(f);
  if (disc.is_zero()) throw NotSeparable("polynomial is not separable");
  const unsigned prec = 256;
  const int m = f.degree();

  mpq_class norm2 = 0;
  for (const auto& c : f.coeffs()) norm2 += c.norm();
  const IM f2 = IM::from_mpq(norm2, prec).sqrt();
  // |disc|^{1/2} = norm(disc)^{1/4}
  const IM disc_half = IM::from_mpq(disc.norm(), prec).sqrt().sqrt();
  mpz_class mm;
  mpz_ui_pow_ui(mm.get_mpz_t(), static_cast<unsigned long>(m), static_cast<unsigned long>(m + 2));
  const IM m_term = IM::from_long(1, prec) / IM::from_mpz(mm, prec).sqrt();
  const IM f_term = IM::from_long(1, prec) / pow_interval(f2, static_cast<unsigned>(m - 1), prec);
  const IM delta = IM::from_long(3, prec).sqrt() * m_term * disc_half * f_term;

  MahlerBound mb;
  mb.m = m;
  mb.disc_f = disc;
  mb.M_f_upper = f2.hi();
  mb.delta_lower = delta.lo();
  return mb;
}

const char* to_string(Cmp c) {
  switch (c) {
    case Cmp::Less: return "Less";
    case Cmp::Equal: return "Equal";
    case Cmp::Greater: return "Greater";
  }
  return "?";
}

namespace {

std::optional<Cmp> disjoint(const IM& a, const IM& b) {
  if (Num<Mpfr>::cmp(a.hi(), b.lo()) < 0) return Cmp::Less;
  if (Num<Mpfr>::cmp(a.lo(), b.hi()) > 0) return Cmp::Greater;
  return std::nullopt;
}

void note_prec(CompareStats* st, unsigned p) {
  if (st) st->max_precision = std::max(st->max_precision, p);
}

}  // namespace

Cmp compare(const AlgebraicReal& alpha, const AlgebraicReal& beta, unsigned cap, CompareStats* stats) {
  unsigned p = 64;
  IM a = alpha.enclose(p), b = beta.enclose(p);
  note_prec(stats, p);
  if (auto r = disjoint(a, b)) return *r;

  const KPoly f = squarefree_part(alpha.van_poly() * beta.van_poly());
  if (f.degree() == 1) return Cmp::Equal;
  if (stats) stats->used_mahler = true;

  const MahlerBound mb = mahler_bound(f);
  Mpfr eps(mb.delta_lower.prec());
  mpfr_div_ui(eps.get(), mb.delta_lower.get(), 4, MPFR_RNDD);
  Mpfr two_eps(eps.prec());
  mpfr_mul_ui(two_eps.get(), eps.get(), 2, MPFR_RNDD);

  // Start near the precision the separation demands.
  const long ebits = -mpfr_get_exp(eps.get());
  const double mag = std::max(std::fabs(a.lo().to_double()), std::fabs(a.hi().to_double()));
  p = static_cast<unsigned>(std::max<long>(128, ebits + static_cast<long>(std::log2(1.0 + mag)) + 32));
  for (;; p *= 2) {
    if (p > cap) throw PrecisionExhausted(p, cap, "comparison refinement");
    a = alpha.enclose(p);
    b = beta.enclose(p);
    note_prec(stats, p);
    if (auto r = disjoint(a, b)) return *r;
    if (Num<Mpfr>::cmp(a.width(), eps) < 0 && Num<Mpfr>::cmp(b.width(), eps) < 0) {
      const IM d = a - b;
      // Distinct roots of f are at least 4 eps apart, and d has width below 2 eps.
      if (Num<Mpfr>::cmp(d.hi(), two_eps) < 0 && Num<Mpfr>::cmp(Num<Mpfr>::neg(d.lo()), two_eps) < 0)
        return Cmp::Equal;
    }
  }
}

template <class T>
Interval<T> predicate_value(const Order& o, const CubicForm& f, const Hermitian<T>& h, const LinearPredicate& pred) {
  const unsigned prec = h.precision;
  const std::int64_t D = o.params().D;
  const std::int64_t na = o.norm(f.a);
  auto I = [&](std::int64_t v) { return Interval<T>::from_long(v, prec); };
  const Interval<T> V = h.Q.im / sqrt_D_interval<T>(o, prec);
  const Interval<T> lin = I(pred.c[0]) * h.P + I(pred.c[1]) * h.Q.re + I(pred.c[2]) * V + I(pred.c[3]) * h.R;
  return I(2 * D) * I(na) * I(na) * lin;
}

template Interval<double> predicate_value<double>(const Order&, const CubicForm&, const Hermitian<double>&,
                                                  const LinearPredicate&);
template Interval<Mpfr> predicate_value<Mpfr>(const Order&, const CubicForm&, const Hermitian<Mpfr>&,
                                              const LinearPredicate&);

namespace {

using CB = CBox<Mpfr>;

// The unique integer in [lo, hi], if any.
std::optional<mpz_class> unique_integer(const IM& v) {
  if (!v.finite()) return std::nullopt;
  Mpfr w = v.width();
  if (mpfr_cmp_d(w.get(), 0.5) >= 0) return std::nullopt;
  mpz_class lo, hi;
  mpfr_get_z(lo.get_mpz_t(), v.lo().get(), MPFR_RNDU);
  mpfr_get_z(hi.get_mpz_t(), v.hi().get(), MPFR_RNDD);
  if (lo != hi) return std::nullopt;
  return lo;
}

// Coefficients routinely exceed 64 bits, so the lattice point stays in mpz.
std::optional<FieldElem> round_to_lattice(const Order& o, const CB& c, const IM& im_omega) {
  const auto y = unique_integer(c.im / im_omega);
  if (!y) return std::nullopt;
  const unsigned prec = c.re.prec();
  const IM x_iv = c.re - IM::from_mpz(*y, prec) * IM::from_mpq(o.params().omega_re(), prec);
  const auto x = unique_integer(x_iv);
  if (!x) return std::nullopt;
  return FieldElem(basis_of(o), *x, *y);
}

}  // namespace

KPoly predicate_polynomial(const Order& o, const CubicForm& f, const LinearPredicate& pred, unsigned* used_prec) {
  if (pred.is_zero()) throw std::invalid_argument("zero predicate");
  const std::int64_t D = o.params().D;
  const std::int64_t na = o.norm(f.a);
  static const std::array<std::array<int, 3>, 6> perms{
      {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};

  for (unsigned prec = 128; prec <= kMaxRootPrecision; prec *= 2) {
    unsigned used = prec;
    const RootBoxes<Mpfr> al = form_roots<Mpfr>(o, f, prec, &used);
    const unsigned wp = used;
    auto I = [&](std::int64_t v) { return IM::from_long(v, wp); };
    const CB s = to_box<Mpfr>(o, o.sqrt_minus_D(), wp);
    const IM scale = I(na) * I(na);
    std::array<CB, 3> be;
    for (int i = 0; i < 3; ++i) be[i] = al[i].conj();

    std::vector<CB> poly{CB{I(1), I(0)}};  // coefficient of X^k at index k
    for (const auto& pi : perms) {
      CB p = CB::zero(wp), q = CB::zero(wp), qb = CB::zero(wp), r = CB::zero(wp);
      for (int i = 0; i < 3; ++i) {
        const int j = (i + 1) % 3, k = (i + 2) % 3;
        const CB de = (al[j] - al[k]) * (be[pi[j]] - be[pi[k]]);
        p += de;
        q -= al[i] * de;
        qb -= be[pi[i]] * de;
        r += al[i] * be[pi[i]] * de;
      }
      CB y = I(2 * D * pred.c[0]) * p + I(D * pred.c[1]) * (q + qb) - I(pred.c[2]) * (s * (q - qb)) +
             I(2 * D * pred.c[3]) * r;
      y = scale * y;
      // poly *= (X - y)
      std::vector<CB> next(poly.size() + 1, CB::zero(wp));
      for (std::size_t k = 0; k < poly.size(); ++k) {
        next[k + 1] += poly[k];
        next[k] -= poly[k] * y;
      }
      poly = std::move(next);
    }

    const IM im_omega = sqrt_D_interval<Mpfr>(o, wp) * IM::from_mpq(o.params().omega_im_over_sqrtD(), wp);
    std::vector<FieldElem> coeffs;
    bool ok = true;
    for (const auto& c : poly) {
      auto e = round_to_lattice(o, c, im_omega);
      if (!e) {
        ok = false;
        break;
      }
      coeffs.push_back(std::move(*e));
    }
    if (ok) {
      if (used_prec) *used_prec = wp;
      return KPoly(std::move(coeffs));
    }
  }
  throw RootIsolationFailed("vanishing polynomial coefficients did not separate");
}

VanishingPolys vanishing_polys(const Order& o, const CubicForm& f) {
  const QuadBasis b = basis_of(o);
  const FieldElem s = FieldElem::from_rational(b, mpq_class(2 * o.params().D * o.norm(f.a)));
  auto make = [&](LinearPredicate p) { return predicate_polynomial(o, f, p).compose_scale(s).monic(); };
  return {make({{1, 0, 0, 0}}), make({{0, 1, 0, 0}}), make({{0, 0, 1, 0}}), make({{0, 0, 0, 1}})};
}

FormDecider::FormDecider(const Order& o, const CubicForm& f, unsigned precision_cap)
    : o_(o), f_(f), cap_(precision_cap) {}

const HermitianForm& FormDecider::normalized(unsigned prec) {
  auto it = cache_.find(prec);
  if (it != cache_.end()) return it->second;
  unsigned used = prec;
  const RootBoxes<Mpfr> r = form_roots<Mpfr>(o_, f_, prec, &used);
  max_prec_ = std::max(max_prec_, used);
  return cache_.emplace(prec, normalized_covariant<Mpfr>(r, used)).first->second;
}

Interval<Mpfr> FormDecider::enclose(const LinearPredicate& pred, unsigned prec) {
  return predicate_value<Mpfr>(o_, f_, normalized(prec), pred);
}

Interval<double> FormDecider::enclose_double(const LinearPredicate& pred) {
  if (!dbl_ && !dbl_failed_) {
    try {
      dbl_ = normalized_covariant<double>(form_roots<double>(o_, f_, 53), 53);
    } catch (const RootIsolationFailed&) {
      dbl_failed_ = true;
    }
  }
  if (!dbl_) return Interval<double>(-INFINITY, INFINITY);
  return predicate_value<double>(o_, f_, *dbl_, pred);
}

Sign FormDecider::sign(const LinearPredicate& pred) {
  if (pred.is_zero()) return Sign::Zero;
  if (auto it = answers_.find(pred); it != answers_.end()) return it->second;
  auto remember = [&](Sign s) {
    answers_.emplace(pred, s);
    return s;
  };

  if (int s = enclose_double(pred).certain_sign()) return remember(sign_of(s));
  if (int s = enclose(pred, 128).certain_sign()) return remember(sign_of(s));

  ++exact_calls_;
  unsigned used = 0;
  const KPoly G = predicate_polynomial(o_, f_, pred, &used);
  max_prec_ = std::max(max_prec_, used);
  if (!G.coeff(0).is_zero()) {
    // Y is a root of G and G(0) != 0, so Y != 0: refine until the sign shows.
    for (unsigned p = 256;; p *= 2) {
      if (p > cap_) throw PrecisionExhausted(p, cap_, "sign of " + pred.to_string());
      if (int s = enclose(pred, p).certain_sign()) return remember(sign_of(s));
    }
  }
  const AlgebraicReal y(G, [this, pred](unsigned p) { return enclose(pred, p); });
  const AlgebraicReal zero = AlgebraicReal::rational(basis_of(o_), 0);
  CompareStats st;
  const Cmp c = compare(y, zero, cap_, &st);
  max_prec_ = std::max(max_prec_, st.max_precision);
  return remember(sign_of(static_cast<int>(c)));
}

}  // namespace cubext
