#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "cubext/exact_compare.hpp"
#include "cubext/field_params.hpp"
#include "cubext/forms.hpp"
#include "cubext/ring.hpp"

namespace cubext {

struct TauReducedForm {
  CubicForm F0;
  std::size_t a0_index = 0;
};

struct LoopBounds {
  std::int64_t X = 1;
  double a0_max = 0;  // 3^{-3/4} t_K^{-3/2} X^{1/8}
  double cH = 0;      // 3^{1/2} 2^{-1/3} / t_K
  double X14 = 0;     // X^{1/4}
};

LoopBounds loop_bounds(const FieldParams& params, std::int64_t X);

// disc(F0) = A d0^2 + B d0 + C, with the two roots of the quadratic.
struct DiscQuadratic {
  RingElem A, B, C;
  std::complex<double> x1, x2;
};
DiscQuadratic disc_quadratic(const Order& o, RingElem a0, RingElem b0, RingElem c0);

// Nonzero a0 with |a0| <= a0_max, by (norm, Re, Im).
std::vector<RingElem> a0_values(const Order& o, const LoopBounds& lb);
// The residue box of 3 a0, y-coordinate outer, x inner.
std::vector<RingElem> b0_values(const Order& o, RingElem a0);
// |c0| <= (|b0|^2 + cH X^{1/4}) / (3 |a0|), by (norm, Re, Im).
std::vector<RingElem> c0_values(const Order& o, const LoopBounds& lb, RingElem a0, RingElem b0);
// d0 within X^{1/4}/sqrt|A| of a root of the disc quadratic, with disc != 0 and norm(disc) <= X
// checked exactly; by (norm, Re, Im).
std::vector<RingElem> d0_values(const Order& o, const LoopBounds& lb, RingElem a0, RingElem b0, RingElem c0);

// F0 = tau_k F with b0 in the residue box of 3a; k is unique.
struct TauReduction {
  CubicForm F0;
  RingElem k;
};
TauReduction tau_reduce(const Order& o, const CubicForm& F);

// The unique k with z0 + k in the half-open cell of C/O_K containing F_K, and F = tau_{-k} F0.
struct JuliaPosition {
  RingElem k;
  CubicForm F;
};
JuliaPosition julia_position(const Order& o, const CubicForm& F0, unsigned precision_cap = 4096);

// Lattice translates k for which z0 + k can lie in the closure of F_K (over-approximation from
// an enclosure of z0).
std::vector<RingElem> candidate_translates(const Order& o, const CBox<double>& z0);

enum class Reducedness { Yes, No, YesOnBoundary };
const char* to_string(Reducedness r);

Reducedness is_julia_reduced(const Order& o, const CubicForm& F, BoundaryDecider& decider);

}  // namespace cubext
