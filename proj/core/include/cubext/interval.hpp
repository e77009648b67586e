#pragma once

// Closed real intervals with outward rounding, over double or MPFR, and complex boxes.

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#include <gmpxx.h>
#include <mpfr.h>

namespace cubext {

class Mpfr {
 public:
  explicit Mpfr(mpfr_prec_t prec = 53) {
    mpfr_init2(v_, prec);
    mpfr_set_zero(v_, 1);
  }
  Mpfr(const Mpfr& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  Mpfr(Mpfr&& o) noexcept {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, o.v_);
  }
  Mpfr& operator=(const Mpfr& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  Mpfr& operator=(Mpfr&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~Mpfr() { mpfr_clear(v_); }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
  double to_double(mpfr_rnd_t r = MPFR_RNDN) const { return mpfr_get_d(v_, r); }
  std::string to_string(int digits = 20) const;

 private:
  mpfr_t v_;
};

enum class Dir { Down, Up, Near };

template <class T>
struct Num;

template <>
struct Num<double> {
  static double widen(double r, Dir d) {
    switch (d) {
      case Dir::Down: return r - (std::fabs(r) * 0x1p-51 + 0x1p-1074);
      case Dir::Up: return r + (std::fabs(r) * 0x1p-51 + 0x1p-1074);
      case Dir::Near: return r;
    }
    return r;
  }
  static double zero(unsigned) { return 0.0; }
  static unsigned prec(double) { return 53; }
  static double add(double a, double b, Dir d) { return widen(a + b, d); }
  static double sub(double a, double b, Dir d) { return widen(a - b, d); }
  static double mul(double a, double b, Dir d) { return widen(a * b, d); }
  static double div(double a, double b, Dir d) { return widen(a / b, d); }
  static double sqrt(double a, Dir d) { return widen(std::sqrt(a), d); }
  static double neg(double a) { return -a; }
  static int cmp(double a, double b) { return a < b ? -1 : (a > b ? 1 : 0); }
  static int sgn(double a) { return cmp(a, 0.0); }
  static double from_long(long v, unsigned, Dir d) {
    const double r = static_cast<double>(v);
    return (static_cast<long>(r) == v) ? r : widen(r, d);
  }
  static double from_mpz(const mpz_class& z, unsigned, Dir d) {
    if (z.fits_slong_p()) return from_long(z.get_si(), 53, d);
    return widen(z.get_d(), d);
  }
  static double from_mpq(const mpq_class& q, unsigned, Dir d) {
    if (q.get_den() == 1) return from_mpz(q.get_num(), 53, d);
    return widen(q.get_d(), d);
  }
  static double from_double(double v, unsigned) { return v; }
  static double to_double(double v, Dir) { return v; }
  static bool finite(double v) { return std::isfinite(v); }
};

template <>
struct Num<Mpfr> {
  static mpfr_rnd_t rnd(Dir d) { return d == Dir::Down ? MPFR_RNDD : (d == Dir::Up ? MPFR_RNDU : MPFR_RNDN); }
  static Mpfr zero(unsigned p) { return Mpfr(p); }
  static unsigned prec(const Mpfr& a) { return static_cast<unsigned>(a.prec()); }
  static mpfr_prec_t pmax(const Mpfr& a, const Mpfr& b) { return std::max(a.prec(), b.prec()); }
  static Mpfr add(const Mpfr& a, const Mpfr& b, Dir d) {
    Mpfr r(pmax(a, b));
    mpfr_add(r.get(), a.get(), b.get(), rnd(d));
    return r;
  }
  static Mpfr sub(const Mpfr& a, const Mpfr& b, Dir d) {
    Mpfr r(pmax(a, b));
    mpfr_sub(r.get(), a.get(), b.get(), rnd(d));
    return r;
  }
  static Mpfr mul(const Mpfr& a, const Mpfr& b, Dir d) {
    Mpfr r(pmax(a, b));
    mpfr_mul(r.get(), a.get(), b.get(), rnd(d));
    return r;
  }
  static Mpfr div(const Mpfr& a, const Mpfr& b, Dir d) {
    Mpfr r(pmax(a, b));
    mpfr_div(r.get(), a.get(), b.get(), rnd(d));
    return r;
  }
  static Mpfr sqrt(const Mpfr& a, Dir d) {
    Mpfr r(a.prec());
    mpfr_sqrt(r.get(), a.get(), rnd(d));
    return r;
  }
  static Mpfr neg(const Mpfr& a) {
    Mpfr r(a.prec());
    mpfr_neg(r.get(), a.get(), MPFR_RNDN);
    return r;
  }
  static int cmp(const Mpfr& a, const Mpfr& b) { return mpfr_cmp(a.get(), b.get()); }
  static int sgn(const Mpfr& a) { return mpfr_sgn(a.get()); }
  static Mpfr from_long(long v, unsigned p, Dir d) {
    Mpfr r(p);
    mpfr_set_si(r.get(), v, rnd(d));
    return r;
  }
  static Mpfr from_mpz(const mpz_class& z, unsigned p, Dir d) {
    Mpfr r(p);
    mpfr_set_z(r.get(), z.get_mpz_t(), rnd(d));
    return r;
  }
  static Mpfr from_mpq(const mpq_class& q, unsigned p, Dir d) {
    Mpfr r(p);
    mpfr_set_q(r.get(), q.get_mpq_t(), rnd(d));
    return r;
  }
  static Mpfr from_double(double v, unsigned p) {
    Mpfr r(std::max<unsigned>(p, 53));
    mpfr_set_d(r.get(), v, MPFR_RNDN);
    return r;
  }
  static double to_double(const Mpfr& v, Dir d) { return v.to_double(rnd(d)); }
  static bool finite(const Mpfr& v) { return mpfr_number_p(v.get()) != 0; }
};

class IntervalDomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

template <class T>
class Interval {
  using N = Num<T>;

 public:
  Interval() : lo_(N::zero(53)), hi_(N::zero(53)) {}
  Interval(T lo, T hi) : lo_(std::move(lo)), hi_(std::move(hi)) {}
  static Interval point(const T& v) { return Interval(v, v); }
  static Interval zero(unsigned prec) { return Interval(N::zero(prec), N::zero(prec)); }
  static Interval from_long(long v, unsigned prec) {
    return Interval(N::from_long(v, prec, Dir::Down), N::from_long(v, prec, Dir::Up));
  }
  static Interval from_mpz(const mpz_class& z, unsigned prec) {
    return Interval(N::from_mpz(z, prec, Dir::Down), N::from_mpz(z, prec, Dir::Up));
  }
  static Interval from_mpq(const mpq_class& q, unsigned prec) {
    return Interval(N::from_mpq(q, prec, Dir::Down), N::from_mpq(q, prec, Dir::Up));
  }
  // Exact double value (for T = Mpfr the precision is at least 53).
  static Interval from_double(double v, unsigned prec) { return point(N::from_double(v, prec)); }

  const T& lo() const { return lo_; }
  const T& hi() const { return hi_; }
  unsigned prec() const { return N::prec(lo_); }

  T mid() const { return N::div(N::add(lo_, hi_, Dir::Near), N::from_long(2, prec(), Dir::Near), Dir::Near); }
  // Upper bound on hi - lo.
  T width() const { return N::sub(hi_, lo_, Dir::Up); }
  // Upper bound on max |x|.
  T mag() const {
    T a = N::neg(lo_);
    return N::cmp(a, hi_) > 0 ? a : hi_;
  }
  // Lower bound on min |x|.
  T mig() const {
    if (N::sgn(lo_) > 0) return lo_;
    if (N::sgn(hi_) < 0) return N::neg(hi_);
    return N::zero(prec());
  }
  bool contains_zero() const { return N::sgn(lo_) <= 0 && N::sgn(hi_) >= 0; }
  bool positive() const { return N::sgn(lo_) > 0; }
  bool negative() const { return N::sgn(hi_) < 0; }
  bool finite() const { return N::finite(lo_) && N::finite(hi_); }
  // -1 / +1 when the sign is certain, 0 when the interval straddles or touches zero.
  int certain_sign() const { return positive() ? 1 : (negative() ? -1 : 0); }
  bool contains(const Interval& o) const { return N::cmp(lo_, o.lo_) <= 0 && N::cmp(hi_, o.hi_) >= 0; }

  Interval operator-() const { return Interval(N::neg(hi_), N::neg(lo_)); }
  friend Interval operator+(const Interval& a, const Interval& b) {
    return Interval(N::add(a.lo_, b.lo_, Dir::Down), N::add(a.hi_, b.hi_, Dir::Up));
  }
  friend Interval operator-(const Interval& a, const Interval& b) {
    return Interval(N::sub(a.lo_, b.hi_, Dir::Down), N::sub(a.hi_, b.lo_, Dir::Up));
  }
  friend Interval operator*(const Interval& a, const Interval& b) {
    if (N::sgn(a.lo_) >= 0 && N::sgn(b.lo_) >= 0)
      return Interval(N::mul(a.lo_, b.lo_, Dir::Down), N::mul(a.hi_, b.hi_, Dir::Up));
    T l1 = N::mul(a.lo_, b.lo_, Dir::Down), l2 = N::mul(a.lo_, b.hi_, Dir::Down);
    T l3 = N::mul(a.hi_, b.lo_, Dir::Down), l4 = N::mul(a.hi_, b.hi_, Dir::Down);
    T u1 = N::mul(a.lo_, b.lo_, Dir::Up), u2 = N::mul(a.lo_, b.hi_, Dir::Up);
    T u3 = N::mul(a.hi_, b.lo_, Dir::Up), u4 = N::mul(a.hi_, b.hi_, Dir::Up);
    return Interval(min4(l1, l2, l3, l4), max4(u1, u2, u3, u4));
  }
  friend Interval operator/(const Interval& a, const Interval& b) {
    if (b.contains_zero()) throw IntervalDomainError("interval division by an interval containing zero");
    T l1 = N::div(a.lo_, b.lo_, Dir::Down), l2 = N::div(a.lo_, b.hi_, Dir::Down);
    T l3 = N::div(a.hi_, b.lo_, Dir::Down), l4 = N::div(a.hi_, b.hi_, Dir::Down);
    T u1 = N::div(a.lo_, b.lo_, Dir::Up), u2 = N::div(a.lo_, b.hi_, Dir::Up);
    T u3 = N::div(a.hi_, b.lo_, Dir::Up), u4 = N::div(a.hi_, b.hi_, Dir::Up);
    return Interval(min4(l1, l2, l3, l4), max4(u1, u2, u3, u4));
  }
  Interval& operator+=(const Interval& o) { return *this = *this + o; }
  Interval& operator-=(const Interval& o) { return *this = *this - o; }
  Interval& operator*=(const Interval& o) { return *this = *this * o; }

  Interval sqr() const {
    if (N::sgn(lo_) >= 0) return Interval(N::mul(lo_, lo_, Dir::Down), N::mul(hi_, hi_, Dir::Up));
    if (N::sgn(hi_) <= 0) return Interval(N::mul(hi_, hi_, Dir::Down), N::mul(lo_, lo_, Dir::Up));
    T m = mag();
    return Interval(N::zero(prec()), N::mul(m, m, Dir::Up));
  }
  // Square root of the nonnegative part; throws if the interval is entirely negative.
  Interval sqrt() const {
    if (N::sgn(hi_) < 0) throw IntervalDomainError("square root of a negative interval");
    T l = N::sgn(lo_) > 0 ? N::sqrt(lo_, Dir::Down) : N::zero(prec());
    return Interval(std::move(l), N::sqrt(hi_, Dir::Up));
  }
  Interval scaled(long k) const { return *this * from_long(k, prec()); }

  // Outward conversion to double bounds.
  Interval<double> to_double() const {
    return Interval<double>(N::to_double(lo_, Dir::Down), N::to_double(hi_, Dir::Up));
  }

 private:
  static T min4(T& a, T& b, T& c, T& d) {
    T* m = &a;
    if (N::cmp(b, *m) < 0) m = &b;
    if (N::cmp(c, *m) < 0) m = &c;
    if (N::cmp(d, *m) < 0) m = &d;
    return std::move(*m);
  }
  static T max4(T& a, T& b, T& c, T& d) {
    T* m = &a;
    if (N::cmp(b, *m) > 0) m = &b;
    if (N::cmp(c, *m) > 0) m = &c;
    if (N::cmp(d, *m) > 0) m = &d;
    return std::move(*m);
  }

  T lo_, hi_;
};

// Rectangular complex enclosure.
template <class T>
struct CBox {
  Interval<T> re, im;

  static CBox zero(unsigned prec) { return {Interval<T>::zero(prec), Interval<T>::zero(prec)}; }
  CBox conj() const { return {re, -im}; }
  CBox operator-() const { return {-re, -im}; }
  friend CBox operator+(const CBox& a, const CBox& b) { return {a.re + b.re, a.im + b.im}; }
  friend CBox operator-(const CBox& a, const CBox& b) { return {a.re - b.re, a.im - b.im}; }
  friend CBox operator*(const CBox& a, const CBox& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend CBox operator*(const Interval<T>& s, const CBox& b) { return {s * b.re, s * b.im}; }
  CBox& operator+=(const CBox& o) { return *this = *this + o; }
  CBox& operator-=(const CBox& o) { return *this = *this - o; }
  CBox& operator*=(const CBox& o) { return *this = *this * o; }
  Interval<T> norm() const { return re.sqr() + im.sqr(); }
  friend CBox operator/(const CBox& a, const CBox& b) {
    const Interval<T> n = b.norm();
    const CBox p = a * b.conj();
    return {p.re / n, p.im / n};
  }
  // Upper bound on |z| over the box.
  T abs_upper() const { return norm().sqrt().hi(); }
  // Lower bound on |z| over the box.
  T abs_lower() const {
    Interval<T> m = Interval<T>::point(re.mig()).sqr() + Interval<T>::point(im.mig()).sqr();
    return m.sqrt().lo();
  }
  bool contains_zero() const { return re.contains_zero() && im.contains_zero(); }
};

// Plain (non-enclosure) complex value used by the iterative solvers.
template <class T>
struct Cplx {
  T re, im;
};

std::string to_string(const Interval<Mpfr>& iv, int digits = 20);
std::string to_string(const Interval<double>& iv);

}  // namespace cubext
