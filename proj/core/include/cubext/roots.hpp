#pragma once

#include <array>
#include <complex>
#include <optional>

#include "cubext/interval.hpp"

namespace cubext {

// Coefficients of a*x^3 + b*x^2 + c*x + d as complex enclosures, highest degree first.
template <class T>
using CubicCoeffs = std::array<CBox<T>, 4>;

template <class T>
using RootBoxes = std::array<CBox<T>, 3>;

struct RootApprox {
  std::array<std::complex<double>, 3> z{};
  bool converged = false;
};

// Aberth iteration at the working precision, then Smith's inclusion disks
// |z - z_i| <= 3 |f(z_i) / (a prod_{j != i}(z_i - z_j))|. Succeeds only when the three disks
// are pairwise disjoint, in which case each box holds exactly one root.
// seed: starting points (e.g. a lower precision run); optional.
template <class T>
std::optional<RootBoxes<T>> certified_cubic_roots(const CubicCoeffs<T>& f, unsigned prec,
                                                  const RootApprox* seed = nullptr, RootApprox* approx_out = nullptr);

// Upper bound on the largest box half-width, relative to 1 + max |root|.
template <class T>
double relative_radius(const RootBoxes<T>& r);

}  // namespace cubext
