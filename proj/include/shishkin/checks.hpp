#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "shishkin/solver.hpp"

namespace shishkin {

/// Strictly increasing epsilon vector with log10(eps) uniform on
/// [-12, log10(alpha/36)], so the small-epsilon condition holds. Neighbours are at least
/// 0.01 decades apart.
std::vector<double> random_admissible_epsilon(std::mt19937_64& rng, std::size_t n, double alpha);

/// Mesh construction invariants for n in 1..max_n, p in 1..max_p, with
/// `per_case` epsilon vectors each (the first is chosen to give b = 0).
CheckReport check_mesh_invariants(std::uint64_t seed, std::size_t max_n = 4, std::size_t max_p = 5,
                                  std::size_t per_case = 200);

/// Intersection points x^(s)_{i,j} for random ordered 4-tuples, s in {1, 3/2}:
/// defining-equation residual, orderings in i and j, and the upper bounds.
CheckReport check_intersection_points(std::uint64_t seed, std::size_t trials = 1000);

}  // namespace shishkin
