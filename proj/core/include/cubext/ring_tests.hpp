#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "cubext/forms.hpp"
#include "cubext/ring.hpp"

namespace cubext {

// Prime factorization of a positive integer as (p, e) pairs, smallest prime first.
// Trial division, then Miller-Rabin and Pollard rho for the cofactor.
std::vector<std::pair<std::int64_t, int>> factor_integer(std::int64_t n);
bool is_prime_u64(std::uint64_t n);

// Memoized factorization, safe for concurrent use.
const std::vector<std::pair<std::int64_t, int>>& factor_cached(std::int64_t n);

// The primes of O_K above the rational prime p, as canonical associates.
std::vector<RingElem> primes_above(const Order& o, std::int64_t p);

// True iff F(x, 1) has no root in K. Requires a != 0.
bool is_irreducible(const Order& o, const CubicForm& F);

struct MaximalityReport {
  bool is_irreducible = false;
  bool is_maximal = false;
  std::optional<RingElem> failing_prime;
  std::int64_t disc_norm = 0;
};

// Checks irreducibility, then maximality at every pi with pi^2 | disc(F).
MaximalityReport is_maximal(const Order& o, const CubicForm& F);

// pi-maximality of the ring attached to F (F nonzero).
bool is_pi_maximal(const Order& o, const CubicForm& F, RingElem pi);

}  // namespace cubext
