#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>

#include "cubext/field_params.hpp"
#include "cubext/forms.hpp"
#include "cubext/interval.hpp"
#include "cubext/kpoly.hpp"

namespace cubext {

class PrecisionExhausted : public std::runtime_error {
 public:
  PrecisionExhausted(unsigned needed, unsigned cap, const std::string& what);
  unsigned needed, cap;
};

// Default cap: max(4096, 64 * log2 X) bits.
unsigned default_precision_cap(std::int64_t X);

// A real algebraic number: a nonzero polynomial over K vanishing at it, plus a procedure
// returning an enclosure at a requested working precision. Enclosures must tighten as the
// precision grows and must always contain the same number.
class AlgebraicReal {
 public:
  using Encloser = std::function<Interval<Mpfr>(unsigned prec)>;

  AlgebraicReal(KPoly van_poly, Encloser enclose);
  static AlgebraicReal rational(QuadBasis b, const mpq_class& q);
  // The root of f in [lo, hi], located by exact bisection. f must have rational coefficients and
  // f(lo), f(hi) must have opposite nonzero signs.
  static AlgebraicReal rational_root(const KPoly& f, const mpq_class& lo, const mpq_class& hi);

  const KPoly& van_poly() const { return f_; }
  Interval<Mpfr> enclose(unsigned prec) const { return enc_(prec); }

 private:
  KPoly f_;
  Encloser enc_;
};

struct MahlerBound {
  int m = 0;
  FieldElem disc_f;
  Mpfr M_f_upper;    // >= ||f||_2 >= M(f)
  Mpfr delta_lower;  // certified lower bound on the root separation
};

class NotSeparable : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

MahlerBound mahler_bound(const KPoly& f);

enum class Cmp { Less = -1, Equal = 0, Greater = 1 };
const char* to_string(Cmp c);

struct CompareStats {
  unsigned max_precision = 0;
  bool used_mahler = false;
};

Cmp compare(const AlgebraicReal& alpha, const AlgebraicReal& beta, unsigned precision_cap = 4096,
            CompareStats* stats = nullptr);

// Vanishing polynomials of P, Re Q, Im Q / sqrt(D) and R of the Julia covariant.
struct VanishingPolys {
  KPoly f_P, f_ReQ, f_ImQ, f_R;
};
VanishingPolys vanishing_polys(const Order& o, const CubicForm& f);

// Monic polynomial over O_K (returned with integral FieldElem coefficients) vanishing at
// Y = 2D |a|^4 (c0 p + c1 Re q + c2 Im q / sqrt(D) + c3 r), where (p, q, r) is the covariant divided by |a|^2.
KPoly predicate_polynomial(const Order& o, const CubicForm& f, const LinearPredicate& pred,
                           unsigned* used_prec = nullptr);

// Certified predicate signs for one form. Tries double intervals, then multiprecision
// refinement, then the exact comparison against 0.
class FormDecider : public BoundaryDecider {
 public:
  FormDecider(const Order& o, const CubicForm& f, unsigned precision_cap = 4096);
  Sign sign(const LinearPredicate& pred) override;

  unsigned max_precision_used() const { return max_prec_; }
  unsigned exact_calls() const { return exact_calls_; }
  // Enclosure of Y for the predicate at the given precision.
  Interval<Mpfr> enclose(const LinearPredicate& pred, unsigned prec);
  Interval<double> enclose_double(const LinearPredicate& pred);
  const HermitianForm& normalized(unsigned prec);
  // Supplies the 64-bit normalized covariant when the caller already has certified roots.
  void seed_double(const Hermitian<double>& h) { dbl_ = h; }

 private:
  const Order& o_;
  CubicForm f_;
  unsigned cap_;
  unsigned max_prec_ = 53;
  unsigned exact_calls_ = 0;
  std::optional<Hermitian<double>> dbl_;
  bool dbl_failed_ = false;
  std::map<unsigned, HermitianForm> cache_;
  std::map<LinearPredicate, Sign> answers_;
};

// Y from a normalized covariant (p, q, r).
template <class T>
Interval<T> predicate_value(const Order& o, const CubicForm& f, const Hermitian<T>& normalized,
                            const LinearPredicate& pred);

}  // namespace cubext
