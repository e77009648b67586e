#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "cubext/field_params.hpp"
#include "cubext/forms.hpp"
#include "cubext/interval.hpp"
#include "cubext/ring.hpp"

namespace cubext::testing {

inline std::int64_t uniform(std::mt19937_64& g, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(g);
}

inline RingElem random_elem(std::mt19937_64& g, std::int64_t r) { return {uniform(g, -r, r), uniform(g, -r, r)}; }

inline RingElem random_nonzero(std::mt19937_64& g, std::int64_t r) {
  for (;;)
    if (RingElem e = random_elem(g, r); !e.is_zero()) return e;
}

inline CubicForm random_form(std::mt19937_64& g, std::int64_t r) {
  return {random_nonzero(g, r), random_elem(g, r), random_elem(g, r), random_elem(g, r)};
}

// Random form with a != 0 and disc != 0.
inline CubicForm random_separable_form(const Order& o, std::mt19937_64& g, std::int64_t r) {
  for (;;) {
    CubicForm f = random_form(g, r);
    if (!disc_cubic(o, f).is_zero()) return f;
  }
}

// Product of a few elementary matrices and a unit diagonal: an element of GL2(O_K).
inline GL2Mat random_gl2(const Order& o, std::mt19937_64& g, int steps = 3, std::int64_t r = 2) {
  const auto& units = o.units();
  auto unit = [&] { return units[static_cast<std::size_t>(uniform(g, 0, static_cast<std::int64_t>(units.size()) - 1))]; };
  GL2Mat m{unit(), 0, 0, unit()};
  for (int i = 0; i < steps; ++i) {
    const RingElem k = random_elem(g, r);
    const GL2Mat e = uniform(g, 0, 1) ? GL2Mat{1, k, 0, 1} : GL2Mat{1, 0, k, 1};
    m = mat_mul(o, m, e);
  }
  return m;
}

inline bool overlaps(const Interval<Mpfr>& a, const Interval<Mpfr>& b) {
  return mpfr_cmp(a.lo().get(), b.hi().get()) <= 0 && mpfr_cmp(b.lo().get(), a.hi().get()) <= 0;
}

inline bool overlaps(const CBox<Mpfr>& a, const CBox<Mpfr>& b) { return overlaps(a.re, b.re) && overlaps(a.im, b.im); }

inline bool overlaps(const Hermitian<Mpfr>& a, const Hermitian<Mpfr>& b) {
  return overlaps(a.P, b.P) && overlaps(a.Q, b.Q) && overlaps(a.R, b.R);
}

// |Delta(H_F) / (3 |disc F|) - 1| from a covariant enclosure, as a double.
inline double delta_relative_error(const Order& o, const CubicForm& f, const Hermitian<Mpfr>& h) {
  const unsigned prec = h.precision;
  const Interval<Mpfr> delta = h.Delta();
  const Interval<Mpfr> n = Interval<Mpfr>::from_long(o.norm(disc_cubic(o, f)), prec);
  const Interval<Mpfr> want = Interval<Mpfr>::from_long(3, prec) * n.sqrt();
  const Interval<Mpfr> rel = (delta - want) / want;
  return std::max(std::fabs(rel.lo().to_double(MPFR_RNDD)), std::fabs(rel.hi().to_double(MPFR_RNDU)));
}

inline const std::vector<int>& all_fields() {
  static const std::vector<int> v{-3, -4, -7, -8, -11, -19, -43, -67, -163};
  return v;
}

}  // namespace cubext::testing
