#pragma once

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "cubext/ring.hpp"

namespace cubext {

// Dense univariate polynomial over K; coeffs[i] multiplies X^i. Empty means zero.
class KPoly {
 public:
  KPoly() = default;
  explicit KPoly(std::vector<FieldElem> coeffs);
  static KPoly constant(const FieldElem& c);
  static KPoly monomial(const FieldElem& c, std::size_t degree);
  // X - root
  static KPoly linear_root(const FieldElem& root);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<FieldElem>& coeffs() const { return c_; }
  const FieldElem& coeff(std::size_t i) const { return c_[i]; }
  const FieldElem& lead() const { return c_.back(); }

  friend bool operator==(const KPoly& a, const KPoly& b) { return a.c_ == b.c_; }
  friend KPoly operator+(const KPoly& a, const KPoly& b);
  friend KPoly operator-(const KPoly& a, const KPoly& b);
  friend KPoly operator*(const KPoly& a, const KPoly& b);
  KPoly operator-() const;
  KPoly scaled(const FieldElem& s) const;

  KPoly derivative() const;
  KPoly monic() const;
  // p = q*d + r with deg r < deg d
  static std::pair<KPoly, KPoly> divmod(const KPoly& p, const KPoly& d);
  FieldElem eval(const FieldElem& x) const;
  std::complex<double> eval(std::complex<double> x) const;
  // p(s*X)
  KPoly compose_scale(const FieldElem& s) const;

  std::string to_string() const;

 private:
  void trim();
  std::vector<FieldElem> c_;
};

// Monic gcd; gcd(0, 0) is an error.
KPoly gcd(const KPoly& a, const KPoly& b);
// p / gcd(p, p'), made monic.
KPoly squarefree_part(const KPoly& p);
FieldElem resultant(const KPoly& a, const KPoly& b);
// (-1)^{m(m-1)/2} Res(f, f') / lc(f)
FieldElem discriminant(const KPoly& f);

}  // namespace cubext
