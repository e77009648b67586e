#pragma once

#include <chrono>
#include <cstdint>
#include <stdexcept>

#include "cubext/exact_compare.hpp"
#include "cubext/field_params.hpp"
#include "cubext/forms.hpp"
#include "cubext/records.hpp"

namespace cubext {

struct RunStats {
  std::int64_t X = 0;
  std::uint64_t candidates_iterated = 0;
  std::uint64_t kept_reduced = 0;
  std::uint64_t kept_irreducible = 0;
  std::uint64_t kept_maximal = 0;
  std::uint64_t emitted = 0;
  std::chrono::duration<double> wall_time{0};
  unsigned max_precision_used = 53;

  RunStats& operator+=(const RunStats& o);
};

struct EnumerateOptions {
  // Emit the mirror of each interior form with Re z > 0 and skip those with Re z < 0.
  // Refused for d_K = -3, -4, where the mirror can be equivalent to the form itself.
  bool pair_conjugates = false;
  bool allow_uncertified_domain = false;
  unsigned precision_cap = 0;  // 0 selects default_precision_cap(X)
};

class UnsupportedDomain : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Streams one record per class of cubic extension L/K with norm of disc(L/K) <= X.
RunStats enumerate(const FieldParams& params, std::int64_t X, RecordSink& sink, const EnumerateOptions& opts = {});

// Same records, in the same order, with the (a0, b0) range split across jobs workers.
RunStats enumerate_parallel(const FieldParams& params, std::int64_t X, int jobs, RecordSink& sink,
                            const EnumerateOptions& opts = {});

// (a, b, c, d) -> (conj a, -conj b, conj c, -conj d); H goes to (P, -conj Q, R).
CubicForm half_count_pairing(const Order& o, const CubicForm& f);

// The minimal element of {u M F : M in the stabilizer, u a unit} under compare_forms.
CubicForm orbit_minimum(const Order& o, const CubicForm& f, const std::vector<GL2Mat>& stabilizer);

}  // namespace cubext
