#include "cubext/linalg.hpp"

namespace cubext {

namespace {

template <class T>
bool is_zero_entry(const T& v) {
  if constexpr (std::is_same_v<T, FieldElem>)
    return v.is_zero();
  else
    return v == 0;
}

// Gauss-Jordan in place; returns pivot columns.
template <class T>
std::vector<std::size_t> eliminate(std::vector<std::vector<T>>& m) {
  std::vector<std::size_t> pivots;
  if (m.empty()) return pivots;
  const std::size_t rows = m.size(), cols = m[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && is_zero_entry(m[p][c])) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    const T inv = T(1) / m[r][c];
    for (auto& e : m[r]) e = e * inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || is_zero_entry(m[i][c])) continue;
      const T f = m[i][c];
      for (std::size_t j = 0; j < cols; ++j) m[i][j] = m[i][j] - f * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

template <class T>
std::vector<std::vector<T>> kernel_of(std::vector<std::vector<T>> m, std::size_t cols, const T& one) {
  const auto pivots = eliminate(m);
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::vector<T>> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<T> v(cols, one - one);
    v[free] = one;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = (one - one) - m[i][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace

}  // namespace cubext

namespace cubext {

// FieldElem(1) needs basis data for divisions by non-rational pivots; take it from the matrix.
namespace {
QuadBasis basis_in(const KMatrix& m) {
  for (const auto& row : m)
    for (const auto& e : row)
      if (e.basis().valid()) return e.basis();
  return {};
}

std::vector<std::size_t> eliminate_k(KMatrix& m) {
  std::vector<std::size_t> pivots;
  if (m.empty()) return pivots;
  const std::size_t rows = m.size(), cols = m[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c].is_zero()) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    const FieldElem inv = m[r][c].inverse();
    for (auto& e : m[r]) e = e * inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c].is_zero()) continue;
      const FieldElem f = m[i][c];
      for (std::size_t j = 0; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}
}  // namespace

std::size_t rank_over_K(KMatrix m) { return eliminate_k(m).size(); }

std::vector<std::vector<FieldElem>> kernel_over_K(const KMatrix& m0) {
  KMatrix m = m0;
  if (m.empty()) return {};
  const QuadBasis b = basis_in(m);
  const std::size_t cols = m[0].size();
  const auto pivots = eliminate_k(m);
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::vector<FieldElem>> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<FieldElem> v(cols);
    v[free] = FieldElem(b, 1);
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -m[i][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

QMatrix rref(QMatrix m) {
  const auto pivots = eliminate(m);
  m.resize(pivots.size());
  return m;
}

std::size_t rank_over_Q(const QMatrix& m) {
  QMatrix c = m;
  return eliminate(c).size();
}

std::vector<std::vector<mpq_class>> kernel_over_Q(const QMatrix& m) {
  if (m.empty()) return {};
  return kernel_of(m, m[0].size(), mpq_class(1));
}

}  // namespace cubext
