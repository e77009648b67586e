#include "cubext/kpoly.hpp"

#include <stdexcept>

namespace cubext {

KPoly::KPoly(std::vector<FieldElem> coeffs) : c_(std::move(coeffs)) { trim(); }

KPoly KPoly::constant(const FieldElem& c) { return KPoly({c}); }

KPoly KPoly::monomial(const FieldElem& c, std::size_t degree) {
  std::vector<FieldElem> v(degree + 1);
  v[degree] = c;
  return KPoly(std::move(v));
}

KPoly KPoly::linear_root(const FieldElem& root) {
  return KPoly({-root, FieldElem(root.basis(), 1)});
}

void KPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

KPoly operator+(const KPoly& a, const KPoly& b) {
  std::vector<FieldElem> r(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (i < a.c_.size()) r[i] += a.c_[i];
    if (i < b.c_.size()) r[i] += b.c_[i];
  }
  return KPoly(std::move(r));
}

KPoly KPoly::operator-() const {
  std::vector<FieldElem> r;
  r.reserve(c_.size());
  for (const auto& c : c_) r.push_back(-c);
  return KPoly(std::move(r));
}

KPoly operator-(const KPoly& a, const KPoly& b) { return a + (-b); }

KPoly operator*(const KPoly& a, const KPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<FieldElem> r(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
  }
  return KPoly(std::move(r));
}

KPoly KPoly::scaled(const FieldElem& s) const {
  std::vector<FieldElem> r;
  r.reserve(c_.size());
  for (const auto& c : c_) r.push_back(c * s);
  return KPoly(std::move(r));
}

KPoly KPoly::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<FieldElem> r;
  for (std::size_t i = 1; i < c_.size(); ++i)
    r.push_back(c_[i] * FieldElem(c_[i].basis(), static_cast<long>(i)));
  return KPoly(std::move(r));
}

KPoly KPoly::monic() const {
  if (is_zero()) return {};
  return scaled(lead().inverse());
}

std::pair<KPoly, KPoly> KPoly::divmod(const KPoly& p, const KPoly& d) {
  if (d.is_zero()) throw std::domain_error("polynomial division by zero");
  std::vector<FieldElem> rem = p.c_;
  const int dd = d.degree();
  if (p.degree() < dd) return {KPoly(), p};
  std::vector<FieldElem> quo(static_cast<std::size_t>(p.degree() - dd + 1));
  const FieldElem inv = d.lead().inverse();
  for (int i = p.degree(); i >= dd; --i) {
    if (rem[i].is_zero()) continue;
    const FieldElem q = rem[i] * inv;
    quo[i - dd] = q;
    for (int j = 0; j <= dd; ++j) rem[i - dd + j] -= q * d.c_[j];
  }
  return {KPoly(std::move(quo)), KPoly(std::move(rem))};
}

FieldElem KPoly::eval(const FieldElem& x) const {
  FieldElem r;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
  return r;
}

std::complex<double> KPoly::eval(std::complex<double> x) const {
  std::complex<double> r = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + it->to_complex();
  return r;
}

KPoly KPoly::compose_scale(const FieldElem& s) const {
  std::vector<FieldElem> r = c_;
  FieldElem pw(s.basis(), 1);
  for (auto& c : r) {
    c = c * pw;
    pw = pw * s;
  }
  return KPoly(std::move(r));
}

std::string KPoly::to_string() const {
  if (c_.empty()) return "0";
  std::string s;
  for (int i = degree(); i >= 0; --i) {
    if (c_[i].is_zero()) continue;
    if (!s.empty()) s += " + ";
    s += c_[i].to_string();
    if (i > 0) s += "*X^" + std::to_string(i);
  }
  return s;
}

KPoly gcd(const KPoly& a, const KPoly& b) {
  if (a.is_zero() && b.is_zero()) throw std::domain_error("gcd of two zero polynomials");
  KPoly x = a, y = b;
  while (!y.is_zero()) {
    KPoly r = KPoly::divmod(x, y).second;
    x = std::move(y);
    y = r.monic();
  }
  return x.monic();
}

KPoly squarefree_part(const KPoly& p) {
  if (p.degree() <= 0) return p.monic();
  const KPoly g = gcd(p, p.derivative());
  return KPoly::divmod(p, g).first.monic();
}

FieldElem resultant(const KPoly& a, const KPoly& b) {
  if (a.is_zero() || b.is_zero()) return FieldElem();
  const QuadBasis q = a.lead().basis().valid() ? a.lead().basis() : b.lead().basis();
  // Res(f, g) = (-1)^{mn} lc(g)^{m - deg r} Res(g, r) with r = f mod g
  KPoly f = a, g = b;
  FieldElem acc(q, 1);
  while (true) {
    const int m = f.degree(), n = g.degree();
    if (n == 0) {
      for (int i = 0; i < m; ++i) acc = acc * g.lead();
      return acc;
    }
    if (m == 0) {
      for (int i = 0; i < n; ++i) acc = acc * f.lead();
      return acc;
    }
    KPoly r = KPoly::divmod(f, g).second;
    if (r.is_zero()) return FieldElem();
    if ((m % 2 == 1) && (n % 2 == 1)) acc = -acc;
    for (int i = 0; i < m - r.degree(); ++i) acc = acc * g.lead();
    f = std::move(g);
    g = std::move(r);
  }
}

FieldElem discriminant(const KPoly& f) {
  const int m = f.degree();
  if (m < 1) throw std::domain_error("discriminant of a constant");
  FieldElem r = resultant(f, f.derivative()) / f.lead();
  if ((m * (m - 1) / 2) % 2 == 1) r = -r;
  return r;
}

}  // namespace cubext
