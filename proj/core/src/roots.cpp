#include "cubext/roots.hpp"

#include <cmath>
#include <numbers>

namespace cubext {

namespace {

// Round-to-nearest complex arithmetic on midpoints for the iteration itself.
template <class T>
struct Mid {
  using N = Num<T>;
  using C = Cplx<T>;
  unsigned prec;

  C make(double re, double im) const { return {N::from_double(re, prec), N::from_double(im, prec)}; }
  C add(const C& a, const C& b) const { return {N::add(a.re, b.re, Dir::Near), N::add(a.im, b.im, Dir::Near)}; }
  C sub(const C& a, const C& b) const { return {N::sub(a.re, b.re, Dir::Near), N::sub(a.im, b.im, Dir::Near)}; }
  C mul(const C& a, const C& b) const {
    return {N::sub(N::mul(a.re, b.re, Dir::Near), N::mul(a.im, b.im, Dir::Near), Dir::Near),
            N::add(N::mul(a.re, b.im, Dir::Near), N::mul(a.im, b.re, Dir::Near), Dir::Near)};
  }
  T norm(const C& a) const { return N::add(N::mul(a.re, a.re, Dir::Near), N::mul(a.im, a.im, Dir::Near), Dir::Near); }
  C div(const C& a, const C& b) const {
    const T n = norm(b);
    const C p = mul(a, C{b.re, N::neg(b.im)});
    return {N::div(p.re, n, Dir::Near), N::div(p.im, n, Dir::Near)};
  }
  C one() const { return make(1.0, 0.0); }
  double abs_d(const C& a) const { return std::hypot(N::to_double(a.re, Dir::Near), N::to_double(a.im, Dir::Near)); }
  bool is_zero(const C& a) const { return N::sgn(a.re) == 0 && N::sgn(a.im) == 0; }
};

template <class T>
Cplx<T> mid_of(const CBox<T>& b) {
  return {b.re.mid(), b.im.mid()};
}

template <class T>
CBox<T> box_of(const Cplx<T>& c) {
  return {Interval<T>::point(c.re), Interval<T>::point(c.im)};
}

}  // namespace

template <class T>
std::optional<RootBoxes<T>> certified_cubic_roots(const CubicCoeffs<T>& f, unsigned prec, const RootApprox* seed,
                                                  RootApprox* approx_out) {
  using N = Num<T>;
  const Mid<T> m{prec};
  using C = Cplx<T>;
  if (f[0].contains_zero()) return std::nullopt;

  std::array<C, 4> cf;
  for (int i = 0; i < 4; ++i) cf[i] = mid_of(f[i]);

  std::array<C, 3> z;
  if (seed && seed->converged) {
    for (int i = 0; i < 3; ++i) z[i] = m.make(seed->z[i].real(), seed->z[i].imag());
  } else {
    // Start on a circle of Cauchy radius, rotated off the axes.
    const double a = m.abs_d(cf[0]);
    double rad = 0;
    for (int k = 1; k < 4; ++k) rad = std::max(rad, m.abs_d(cf[k]) / a);
    rad = 1.0 + rad;
    for (int i = 0; i < 3; ++i) {
      const double ang = 2.0 * std::numbers::pi * i / 3.0 + 0.4;
      z[i] = m.make(0.5 * rad * std::cos(ang), 0.5 * rad * std::sin(ang));
    }
  }

  auto eval = [&](const C& x, C& fx, C& dfx) {
    fx = cf[0];
    dfx = cf[0];
    fx = m.add(m.mul(fx, x), cf[1]);
    dfx = m.add(m.mul(dfx, x), fx);
    fx = m.add(m.mul(fx, x), cf[2]);
    dfx = m.add(m.mul(dfx, x), fx);
    fx = m.add(m.mul(fx, x), cf[3]);
  };

  const double tol = std::ldexp(1.0, -static_cast<int>(prec) + 6);
  const int max_iter = 80 + static_cast<int>(prec) / 4;
  bool converged = false;
  for (int it = 0; it < max_iter && !converged; ++it) {
    double biggest = 0;
    for (int i = 0; i < 3; ++i) {
      C fx, dfx;
      eval(z[i], fx, dfx);
      if (m.is_zero(fx)) continue;
      if (m.is_zero(dfx)) dfx = m.make(1e-30, 0.0);
      const C ratio = m.div(fx, dfx);
      C s = m.make(0.0, 0.0);
      for (int j = 0; j < 3; ++j) {
        if (j == i) continue;
        C diff = m.sub(z[i], z[j]);
        if (m.is_zero(diff)) diff = m.make(1e-30, 1e-30);
        s = m.add(s, m.div(m.one(), diff));
      }
      const C w = m.div(ratio, m.sub(m.one(), m.mul(ratio, s)));
      z[i] = m.sub(z[i], w);
      biggest = std::max(biggest, m.abs_d(w) / (1.0 + m.abs_d(z[i])));
    }
    if (!(biggest == biggest)) return std::nullopt;  // NaN
    converged = biggest <= tol;
  }
  if (approx_out) {
    approx_out->converged = true;
    for (int i = 0; i < 3; ++i)
      approx_out->z[i] = {N::to_double(z[i].re, Dir::Near), N::to_double(z[i].im, Dir::Near)};
  }

  // Certification in interval arithmetic.
  std::array<CBox<T>, 3> zb;
  for (int i = 0; i < 3; ++i) zb[i] = box_of(z[i]);
  std::array<T, 3> rad{N::zero(prec), N::zero(prec), N::zero(prec)};
  const Interval<T> three = Interval<T>::from_long(3, prec);
  for (int i = 0; i < 3; ++i) {
    CBox<T> fx = f[0];
    for (int k = 1; k < 4; ++k) fx = fx * zb[i] + f[k];
    CBox<T> den = f[0];
    for (int j = 0; j < 3; ++j)
      if (j != i) den = den * (zb[i] - zb[j]);
    if (den.contains_zero()) return std::nullopt;
    const CBox<T> w = fx / den;
    rad[i] = (three * Interval<T>::point(w.abs_upper())).hi();
    if (!N::finite(rad[i])) return std::nullopt;
  }
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      const T gap = (zb[i] - zb[j]).abs_lower();
      const T need = N::add(rad[i], rad[j], Dir::Up);
      if (N::cmp(gap, need) <= 0) return std::nullopt;
    }
  RootBoxes<T> out;
  for (int i = 0; i < 3; ++i) {
    const Interval<T> r(N::neg(rad[i]), rad[i]);
    out[i] = {zb[i].re + r, zb[i].im + r};
  }
  return out;
}

template <class T>
double relative_radius(const RootBoxes<T>& r) {
  double w = 0, scale = 1;
  for (const auto& b : r) {
    w = std::max({w, Num<T>::to_double(b.re.width(), Dir::Up), Num<T>::to_double(b.im.width(), Dir::Up)});
    scale = std::max(scale, 1.0 + Num<T>::to_double(b.abs_upper(), Dir::Up));
  }
  return 0.5 * w / scale;
}

template std::optional<RootBoxes<double>> certified_cubic_roots<double>(const CubicCoeffs<double>&, unsigned,
                                                                        const RootApprox*, RootApprox*);
template std::optional<RootBoxes<Mpfr>> certified_cubic_roots<Mpfr>(const CubicCoeffs<Mpfr>&, unsigned,
                                                                    const RootApprox*, RootApprox*);
template double relative_radius<double>(const RootBoxes<double>&);
template double relative_radius<Mpfr>(const RootBoxes<Mpfr>&);

}  // namespace cubext
