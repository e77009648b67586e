#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace cubext {

enum class DomainKind { Qi, Qsqrt2, Qsqrt3, Generic };

class UnsupportedField : public std::invalid_argument {
 public:
  explicit UnsupportedField(int d_K);
  int d_K;
};

// Constants for one of the nine imaginary quadratic fields of class number one.
// O_K = Z[w] with w^2 = omega_trace * w - omega_norm.
struct FieldParams {
  int d_K = 0;
  int D = 0;  // K = Q(sqrt(-D))
  mpq_class tK_sq;
  mpq_class c_K;
  DomainKind kind = DomainKind::Generic;
  int omega_trace = 0;
  std::int64_t omega_norm = 0;
  std::string omega_name;

  // Half-open cell of C/O_K that contains F_K:
  // Re z in [cell_re0, cell_re0 + 1) (or (.., ..] when cell_re_open_left),
  // eta = Im z / sqrt(D) in [cell_eta0, cell_eta0 + cell_eta_width).
  mpq_class cell_re0;
  bool cell_re_open_left = false;
  mpq_class cell_eta0;
  mpq_class cell_eta_width;

  // Enumeration is certified only where every boundary face is unambiguous.
  bool certified() const { return kind != DomainKind::Generic; }
  double t_K() const;
  double sqrt_D() const;
  // Im(w) / sqrt(D) as a rational: 1 for i and sqrt(-2), 1/2 otherwise.
  mpq_class omega_im_over_sqrtD() const;
  mpq_class omega_re() const { return mpq_class(omega_trace, 2); }
};

const FieldParams& field_for(int d_K);
const std::array<int, 9>& supported_discriminants();

struct DomainPoint {
  std::complex<double> z;
  double t = 1.0;
};

enum class Sign { Negative = -1, Zero = 0, Positive = 1 };

inline Sign sign_of(int s) { return s < 0 ? Sign::Negative : (s > 0 ? Sign::Positive : Sign::Zero); }

// Sign test on a Hermitian form (P, Q, R): the sign of
//   c[0]*P + c[1]*Re(Q) + c[2]*Im(Q)/sqrt(D) + c[3]*R.
// With z = -Q/P, eta = Im(z)/sqrt(D) and rho2 = |z|^2 + t^2 = R/P this is P times
//   c[0] - c[1]*Re(z) - c[2]*eta + c[3]*rho2.
struct LinearPredicate {
  std::array<std::int64_t, 4> c{};

  std::string to_string() const;
  bool is_zero() const { return c[0] == 0 && c[1] == 0 && c[2] == 0 && c[3] == 0; }
  LinearPredicate operator-() const { return {{-c[0], -c[1], -c[2], -c[3]}}; }
  friend bool operator==(const LinearPredicate&, const LinearPredicate&) = default;
  friend auto operator<=>(const LinearPredicate&, const LinearPredicate&) = default;
};

// Raised when a decider cannot settle a predicate at its current resources.
class Undecidable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class BoundaryDecider {
 public:
  virtual ~BoundaryDecider() = default;
  virtual Sign sign(const LinearPredicate& pred) = 0;
};

// Exact decider for a point with rational Re z, eta = Im z / sqrt(D) and rho2 = |z|^2 + t^2.
class RationalPointDecider : public BoundaryDecider {
 public:
  RationalPointDecider(mpq_class re_z, mpq_class eta, mpq_class rho2);
  Sign sign(const LinearPredicate& pred) override;

 private:
  mpq_class re_z_, eta_, rho2_;
};

// Decides nothing; every call raises Undecidable.
class NullDecider : public BoundaryDecider {
 public:
  Sign sign(const LinearPredicate& pred) override;
};

enum class DomainClass { Inside, Outside, OnBoundaryKept, OnBoundaryRejected };

struct DomainVerdict {
  DomainClass cls = DomainClass::Outside;
  // Generic fields only: the point sits on the face whose tie-break is not specified.
  bool ambiguous_face = false;
};

// Walls of the closure of the domain; a point is in the closure iff every wall is >= 0.
const std::vector<LinearPredicate>& domain_walls(const FieldParams& params);

bool in_F_K(const FieldParams& params, std::complex<double> z);

DomainVerdict classify_domain(const FieldParams& params, BoundaryDecider& decider);

// Float test first; predicates within the error budget go to the decider.
DomainClass in_fundamental_domain(const FieldParams& params, const DomainPoint& p, BoundaryDecider& decider);

const char* to_string(DomainClass c);

}  // namespace cubext
