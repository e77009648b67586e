#pragma once

#include <array>
#include <complex>
#include <stdexcept>
#include <string>

#include "cubext/field_params.hpp"
#include "cubext/interval.hpp"
#include "cubext/ring.hpp"
#include "cubext/roots.hpp"

namespace cubext {

// a x^3 + b x^2 y + c x y^2 + d y^3
struct CubicForm {
  RingElem a, b, c, d;
  friend bool operator==(const CubicForm&, const CubicForm&) = default;
};

struct GL2Mat {
  RingElem A{1}, B{0}, C{0}, D{1};
  friend bool operator==(const GL2Mat&, const GL2Mat&) = default;
  static GL2Mat identity() { return {}; }
  static GL2Mat translation(RingElem k) { return {1, k, 0, 1}; }
};

class NonUnitDeterminant : public std::domain_error {
 public:
  NonUnitDeterminant() : std::domain_error("matrix determinant is not a unit of O_K") {}
};

class RepeatedRoots : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class RootIsolationFailed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr unsigned kMaxRootPrecision = 1u << 16;

RingElem disc_cubic(const Order& o, const CubicForm& f);
RingElem det(const Order& o, const GL2Mat& m);
GL2Mat mat_mul(const Order& o, const GL2Mat& m, const GL2Mat& n);
GL2Mat scalar_mat(RingElem u);
// det(M)^{-1} F(Ax + By, Cx + Dy)
CubicForm act_cubic(const Order& o, const GL2Mat& m, const CubicForm& f);
// F(x + k y, y), i.e. the translation (1, k; 0, 1)
CubicForm translate(const Order& o, const CubicForm& f, RingElem k);
// (a-bar, -b-bar, c-bar, -d-bar)
CubicForm mirror(const Order& o, const CubicForm& f);
CubicForm scale(const Order& o, RingElem u, const CubicForm& f);
// Ordering by (norm, Re, Im) on a, then b, c, d.
int compare_forms(const Order& o, const CubicForm& f, const CubicForm& g);

struct Seminvariants {
  RingElem P_H, U_H;
};
Seminvariants seminvariants(const Order& o, const CubicForm& f);

std::string to_string(const Order& o, const CubicForm& f);
std::string to_string(const Order& o, const GL2Mat& m);

// Interval enclosure of an O_K element.
template <class T>
CBox<T> to_box(const Order& o, RingElem e, unsigned prec);
template <class T>
Interval<T> sqrt_D_interval(const Order& o, unsigned prec);

template <class T>
CubicCoeffs<T> cubic_coeffs(const Order& o, const CubicForm& f, unsigned prec);

// Hermitian form P|x|^2 + Q conj(x) y + conj(Q) x conj(y) + R |y|^2, i.e. the matrix [[P, Q], [conj Q, R]].
template <class T>
struct Hermitian {
  Interval<T> P;
  CBox<T> Q;
  Interval<T> R;
  unsigned precision = 53;

  Interval<T> Delta() const { return P * R - Q.norm(); }
};
using HermitianForm = Hermitian<Mpfr>;

template <class T>
Hermitian<T> make_hermitian(double P, std::complex<double> Q, double R, unsigned prec);

// Covariant data normalized by |a|^2: p = sum |al_j - al_k|^2, q = -sum al_i |al_j - al_k|^2,
// r = sum |al_i|^2 |al_j - al_k|^2. The Julia covariant is |a|^2 (p, q, r).
template <class T>
Hermitian<T> normalized_covariant(const RootBoxes<T>& roots, unsigned prec);

// Julia covariant with certified enclosures. For Mpfr the precision is raised internally until
// the roots separate; for double a failure raises RootIsolationFailed.
template <class T>
Hermitian<T> julia_covariant(const Order& o, const CubicForm& f, unsigned prec);

// M^* H M
template <class T>
Hermitian<T> act_hermitian(const Order& o, const GL2Mat& m, const Hermitian<T>& h);

// z = -Q/P, t = sqrt(Delta)/P (midpoints).
template <class T>
DomainPoint phi_map(const Hermitian<T>& h);

// The roots of F(x, 1) at the requested precision, escalating internally when the
// inclusion disks do not separate. Throws RepeatedRoots when a = 0 or disc = 0.
template <class T>
RootBoxes<T> form_roots(const Order& o, const CubicForm& f, unsigned prec, unsigned* used_prec = nullptr);

}  // namespace cubext
