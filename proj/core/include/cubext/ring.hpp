#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "cubext/field_params.hpp"

namespace cubext {

class ArithmeticOverflow : public std::overflow_error {
 public:
  ArithmeticOverflow() : std::overflow_error("64-bit overflow in O_K arithmetic") {}
};

namespace checked {
inline std::int64_t add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw ArithmeticOverflow();
  return r;
}
inline std::int64_t sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw ArithmeticOverflow();
  return r;
}
inline std::int64_t mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw ArithmeticOverflow();
  return r;
}
inline std::int64_t narrow(__int128 v) {
  if (v > INT64_MAX || v < INT64_MIN) throw ArithmeticOverflow();
  return static_cast<std::int64_t>(v);
}
}  // namespace checked

// x + y*w in the integral basis {1, w} of O_K. Additive operations need no field context.
struct RingElem {
  std::int64_t x = 0;
  std::int64_t y = 0;

  constexpr RingElem() = default;
  constexpr RingElem(std::int64_t x_, std::int64_t y_ = 0) : x(x_), y(y_) {}

  bool is_zero() const { return x == 0 && y == 0; }
  friend bool operator==(const RingElem&, const RingElem&) = default;
  friend RingElem operator+(RingElem a, RingElem b) { return {checked::add(a.x, b.x), checked::add(a.y, b.y)}; }
  friend RingElem operator-(RingElem a, RingElem b) { return {checked::sub(a.x, b.x), checked::sub(a.y, b.y)}; }
  RingElem operator-() const { return {checked::sub(0, x), checked::sub(0, y)}; }
  friend RingElem operator*(std::int64_t k, RingElem a) { return {checked::mul(k, a.x), checked::mul(k, a.y)}; }
  RingElem& operator+=(RingElem o) { return *this = *this + o; }
  RingElem& operator-=(RingElem o) { return *this = *this - o; }
};

class NotDivisible : public std::domain_error {
 public:
  NotDivisible() : std::domain_error("exact division by a non-divisor") {}
};

// Multiplicative structure of O_K: w^2 = t*w - n.
class Order {
 public:
  explicit Order(const FieldParams& params);

  const FieldParams& params() const { return *params_; }
  int trace() const { return t_; }
  std::int64_t norm_omega() const { return n_; }

  RingElem mul(RingElem a, RingElem b) const;
  RingElem sqr(RingElem a) const { return mul(a, a); }
  RingElem pow(RingElem a, unsigned e) const;
  RingElem conj(RingElem a) const;
  std::int64_t norm(RingElem a) const;
  std::int64_t trace_of(RingElem a) const;  // a + conj(a)

  std::optional<RingElem> try_divide(RingElem num, RingElem den) const;
  RingElem exact_divide(RingElem num, RingElem den) const;
  bool divides(RingElem d, RingElem e) const;
  bool is_unit(RingElem a) const { return norm(a) == 1; }
  const std::vector<RingElem>& units() const { return units_; }
  // Among the associates of a, the one maximizing (Re, Im) lexicographically.
  RingElem canonical_associate(RingElem a) const;

  // sqrt(-D) as an element of O_K.
  RingElem sqrt_minus_D() const;

  // Twice the real part and the w-coordinate; both integers. Im(a) = y * Im(w).
  std::int64_t twice_re(RingElem a) const { return checked::add(checked::mul(2, a.x), checked::mul(t_, a.y)); }
  std::complex<double> to_complex(RingElem a) const;
  std::complex<double> omega() const { return omega_; }

  // Ordering by (norm, Re, Im).
  int compare(RingElem a, RingElem b) const;
  bool less(RingElem a, RingElem b) const { return compare(a, b) < 0; }

  // Exactly norm(m) pairwise incongruent representatives: the box
  // {x + y*w : 0 <= x < n1, 0 <= y < n2} for the HNF basis (n1, 0), (s, n2) of (m).
  struct ResidueBox {
    std::int64_t n1 = 0, n2 = 0, s = 0;
  };
  ResidueBox residue_box(RingElem m) const;
  std::vector<RingElem> residues_mod(RingElem m) const;
  // The representative of e in the residue box of m.
  RingElem reduce_mod(RingElem e, const ResidueBox& box) const;

  // All elements with norm <= bound, ordered by (norm, Re, Im).
  std::vector<RingElem> elements_of_norm_at_most(std::int64_t bound) const;
  // All elements within distance radius of center, ordered by (norm, Re, Im).
  std::vector<RingElem> elements_in_disk(std::complex<double> center, double radius) const;

  std::string to_string(RingElem a) const;
  RingElem parse(const std::string& s) const;

 private:
  const FieldParams* params_;
  int t_;
  std::int64_t n_;
  std::complex<double> omega_;
  std::vector<RingElem> units_;
};

// Basis data (w^2 = t*w - n) carried by every exact field element so operators need no context.
struct QuadBasis {
  int t = 0;
  std::int64_t n = 0;
  bool valid() const { return n != 0; }
  friend bool operator==(const QuadBasis&, const QuadBasis&) = default;
};

// (x + y*w) / den with den > 0 and gcd(x, y, den) = 1.
class FieldElem {
 public:
  FieldElem() : den_(1) {}
  FieldElem(QuadBasis b, mpz_class x, mpz_class y = 0, mpz_class den = 1);
  static FieldElem from_ring(QuadBasis b, RingElem e) {
    return FieldElem(b, mpz_class(static_cast<long>(e.x)), mpz_class(static_cast<long>(e.y)));
  }
  static FieldElem from_rational(QuadBasis b, const mpq_class& q);

  const mpz_class& x() const { return x_; }
  const mpz_class& y() const { return y_; }
  const mpz_class& den() const { return den_; }
  QuadBasis basis() const { return b_; }

  bool is_zero() const { return x_ == 0 && y_ == 0; }
  bool is_rational() const { return y_ == 0; }
  bool is_integral() const { return den_ == 1; }

  FieldElem conj() const;
  mpq_class norm() const;
  FieldElem inverse() const;
  // Real and imaginary parts as doubles and as exact data for interval conversion.
  std::complex<double> to_complex() const;

  friend bool operator==(const FieldElem& a, const FieldElem& b) {
    return a.x_ == b.x_ && a.y_ == b.y_ && a.den_ == b.den_;
  }
  friend FieldElem operator+(const FieldElem& a, const FieldElem& b);
  friend FieldElem operator-(const FieldElem& a, const FieldElem& b);
  friend FieldElem operator*(const FieldElem& a, const FieldElem& b);
  friend FieldElem operator/(const FieldElem& a, const FieldElem& b);
  FieldElem operator-() const;
  FieldElem& operator+=(const FieldElem& o) { return *this = *this + o; }
  FieldElem& operator-=(const FieldElem& o) { return *this = *this - o; }
  FieldElem& operator*=(const FieldElem& o) { return *this = *this * o; }

  std::string to_string() const;

 private:
  void canonicalize();
  static QuadBasis join(const FieldElem& a, const FieldElem& b);

  QuadBasis b_;
  mpz_class x_, y_, den_;
};

inline QuadBasis basis_of(const Order& o) { return {o.trace(), o.norm_omega()}; }

}  // namespace cubext
