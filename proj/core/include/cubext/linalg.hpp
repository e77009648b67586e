#pragma once

#include <vector>

#include <gmpxx.h>

#include "cubext/ring.hpp"

namespace cubext {

using KMatrix = std::vector<std::vector<FieldElem>>;
using QMatrix = std::vector<std::vector<mpq_class>>;

std::size_t rank_over_K(KMatrix m);
// Basis of {v : m v = 0}.
std::vector<std::vector<FieldElem>> kernel_over_K(const KMatrix& m);

// Reduced row echelon form over Q with zero rows removed.
QMatrix rref(QMatrix m);
std::size_t rank_over_Q(const QMatrix& m);
std::vector<std::vector<mpq_class>> kernel_over_Q(const QMatrix& m);

}  // namespace cubext
