#include "cubext/reduction.hpp"

#include <algorithm>
#include <cmath>

namespace cubext {

namespace {

// Outward padding for float-derived radii; extra candidates are filtered exactly later.
double pad(double r) { return r * (1.0 + 1e-9) + 1e-9; }

std::int64_t to_int(const mpq_class& q) {
  if (q.get_den() != 1) throw std::logic_error("expected an integer");
  return q.get_num().get_si();
}

}  // namespace

LoopBounds loop_bounds(const FieldParams& params, std::int64_t X) {
  if (X < 1) throw std::invalid_argument("bound X must be >= 1");
  LoopBounds lb;
  lb.X = X;
  const double tK = params.t_K();
  const double x = static_cast<double>(X);
  lb.a0_max = std::pow(3.0, -0.75) * std::pow(tK, -1.5) * std::pow(x, 0.125);
  lb.cH = std::sqrt(3.0) * std::pow(2.0, -1.0 / 3.0) / tK;
  lb.X14 = std::pow(x, 0.25);
  return lb;
}

DiscQuadratic disc_quadratic(const Order& o, RingElem a0, RingElem b0, RingElem c0) {
  DiscQuadratic q;
  const RingElem a2 = o.sqr(a0), b2 = o.sqr(b0), b3 = o.mul(b2, b0);
  q.A = -27 * a2;
  q.B = 18 * o.mul(o.mul(a0, b0), c0) - 4 * b3;
  q.C = o.mul(b2, o.sqr(c0)) - 4 * o.mul(a0, o.pow(c0, 3));
  // Roots where U_H^2 = 4 P_H^3: d0 = (9 a b c - 2 b^3 +- 2 P_H^{3/2}) / (27 a^2).
  const std::complex<double> a = o.to_complex(a0), b = o.to_complex(b0), c = o.to_complex(c0);
  const std::complex<double> P = b * b - 3.0 * a * c;
  const std::complex<double> s = P * std::sqrt(P);
  const std::complex<double> base = 9.0 * a * b * c - 2.0 * b * b * b;
  const std::complex<double> den = 27.0 * a * a;
  q.x1 = (base + 2.0 * s) / den;
  q.x2 = (base - 2.0 * s) / den;
  return q;
}

std::vector<RingElem> a0_values(const Order& o, const LoopBounds& lb) {
  const auto bound = static_cast<std::int64_t>(std::floor(pad(lb.a0_max * lb.a0_max)));
  std::vector<RingElem> out;
  for (RingElem e : o.elements_of_norm_at_most(bound))
    if (!e.is_zero()) out.push_back(e);
  return out;
}

std::vector<RingElem> b0_values(const Order& o, RingElem a0) { return o.residues_mod(3 * a0); }

std::vector<RingElem> c0_values(const Order& o, const LoopBounds& lb, RingElem a0, RingElem b0) {
  const double na = static_cast<double>(o.norm(a0));
  const double r = (static_cast<double>(o.norm(b0)) + lb.cH * lb.X14) / (3.0 * std::sqrt(na));
  return o.elements_in_disk({0.0, 0.0}, pad(r));
}

std::vector<RingElem> d0_values(const Order& o, const LoopBounds& lb, RingElem a0, RingElem b0, RingElem c0) {
  const DiscQuadratic q = disc_quadratic(o, a0, b0, c0);
  const double r = lb.X14 / std::sqrt(std::sqrt(static_cast<double>(o.norm(q.A))));
  std::vector<RingElem> cand;
  for (auto x : {q.x1, q.x2}) {
    const double rr = pad(r) + 1e-12 * std::abs(x);
    auto v = o.elements_in_disk(x, rr);
    cand.insert(cand.end(), v.begin(), v.end());
  }
  std::sort(cand.begin(), cand.end(), [&](RingElem a, RingElem b) { return o.less(a, b); });
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
  std::vector<RingElem> out;
  for (RingElem d : cand) {
    const RingElem disc = o.mul(o.mul(q.A, d) + q.B, d) + q.C;
    if (disc.is_zero()) continue;
    if (o.norm(disc) > lb.X) continue;
    out.push_back(d);
  }
  return out;
}

TauReduction tau_reduce(const Order& o, const CubicForm& F) {
  if (F.a.is_zero()) throw std::domain_error("tau reduction needs a != 0");
  const RingElem m = 3 * F.a;
  const RingElem b0 = o.reduce_mod(F.b, o.residue_box(m));
  const RingElem k = o.exact_divide(b0 - F.b, m);
  return {translate(o, F, k), k};
}

namespace {

struct Cell {
  std::int64_t r0x4, e0x4, wx4;
  bool open_left;
};

Cell cell_of(const FieldParams& p) {
  return {to_int(p.cell_re0 * 4), to_int(p.cell_eta0 * 4), to_int(p.cell_eta_width * 4), p.cell_re_open_left};
}

}  // namespace

JuliaPosition julia_position(const Order& o, const CubicForm& F0, unsigned cap) {
  const FieldParams& fp = o.params();
  const Cell cell = cell_of(fp);
  const Hermitian<Mpfr> h = julia_covariant<Mpfr>(o, F0, 64);
  const double P = h.P.mid().to_double();
  const std::complex<double> z0(-h.Q.re.mid().to_double() / P, -h.Q.im.mid().to_double() / P);
  const double w = fp.cell_eta_width.get_d();
  const double eta0 = z0.imag() / fp.sqrt_D();
  std::int64_t ky = static_cast<std::int64_t>(std::ceil((fp.cell_eta0.get_d() - eta0) / w));
  auto kx_for = [&](std::int64_t y) {
    const double re = z0.real() + y * fp.omega_re().get_d();
    const double r0 = fp.cell_re0.get_d();
    return static_cast<std::int64_t>(cell.open_left ? std::floor(r0 + 1 - re) : std::ceil(r0 - re));
  };
  std::int64_t kx = kx_for(ky);

  for (int iter = 0; iter < 16; ++iter) {
    const RingElem k{kx, ky};
    const CubicForm F = translate(o, F0, -k);
    FormDecider dec(o, F, cap);
    // In coefficients on (P, ReQ, ImQ/sqrtD, R), scaled by 4.
    const Sign lo = dec.sign({{-cell.r0x4, -4, 0, 0}});                // Re z - r0
    const Sign hi = dec.sign({{cell.r0x4 + 4, 4, 0, 0}});              // r0 + 1 - Re z
    const Sign elo = dec.sign({{-cell.e0x4, 0, -4, 0}});               // eta - e0
    const Sign ehi = dec.sign({{cell.e0x4 + cell.wx4, 0, 4, 0}});      // e0 + w - eta
    if (elo == Sign::Negative) {
      ++ky;
      kx = kx_for(ky);
      continue;
    }
    if (ehi != Sign::Positive) {
      --ky;
      kx = kx_for(ky);
      continue;
    }
    const bool lo_ok = cell.open_left ? lo == Sign::Positive : lo != Sign::Negative;
    const bool hi_ok = cell.open_left ? hi != Sign::Negative : hi == Sign::Positive;
    if (!lo_ok) {
      ++kx;
      continue;
    }
    if (!hi_ok) {
      --kx;
      continue;
    }
    return {k, F};
  }
  throw std::logic_error("julia_position did not settle");
}

std::vector<RingElem> candidate_translates(const Order& o, const CBox<double>& z0) {
  const FieldParams& fp = o.params();
  double re_lo = 0, re_hi = 0.5, eta_lo = 0, eta_hi = 0.5;
  switch (fp.kind) {
    case DomainKind::Qi: break;
    case DomainKind::Qsqrt2:
    case DomainKind::Generic:
      re_lo = -0.5;
      eta_hi = 0.25;
      break;
    case DomainKind::Qsqrt3:
      eta_lo = -1.0 / 6.0;
      eta_hi = 1.0 / 6.0;
      break;
  }
  const double m = 1e-9;
  const double sD = fp.sqrt_D();
  const double w = fp.omega_im_over_sqrtD().get_d();
  const double e_lo = z0.im.lo() / sD, e_hi = z0.im.hi() / sD;
  std::vector<RingElem> out;
  if (!std::isfinite(e_lo) || !std::isfinite(e_hi) || !std::isfinite(z0.re.lo()) || !std::isfinite(z0.re.hi()))
    return out;
  const auto ky_lo = static_cast<std::int64_t>(std::ceil((eta_lo - m - e_hi) / w));
  const auto ky_hi = static_cast<std::int64_t>(std::floor((eta_hi + m - e_lo) / w));
  const double tr = fp.omega_re().get_d();
  for (std::int64_t ky = ky_lo; ky <= ky_hi; ++ky) {
    const double shift = ky * tr;
    const auto kx_lo = static_cast<std::int64_t>(std::ceil(re_lo - m - z0.re.hi() - shift));
    const auto kx_hi = static_cast<std::int64_t>(std::floor(re_hi + m - z0.re.lo() - shift));
    for (std::int64_t kx = kx_lo; kx <= kx_hi; ++kx) out.push_back({kx, ky});
  }
  return out;
}

const char* to_string(Reducedness r) {
  switch (r) {
    case Reducedness::Yes: return "Yes";
    case Reducedness::No: return "No";
    case Reducedness::YesOnBoundary: return "YesOnBoundary";
  }
  return "?";
}

Reducedness is_julia_reduced(const Order& o, const CubicForm&, BoundaryDecider& decider) {
  switch (classify_domain(o.params(), decider).cls) {
    case DomainClass::Inside: return Reducedness::Yes;
    case DomainClass::OnBoundaryKept: return Reducedness::YesOnBoundary;
    default: return Reducedness::No;
  }
}

}  // namespace cubext
