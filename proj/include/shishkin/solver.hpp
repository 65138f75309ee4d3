#pragma once

#include <cstdint>
#include <string>

#include "shishkin/discretization.hpp"

namespace shishkin {

/// Block condition numbers above this abort the elimination.
inline constexpr double kMaxBlockCondition = 1e12;

/// Block Thomas elimination without block pivoting; returns the N-1 interior
/// values. Throws SingularBlockError naming the first ill-conditioned row.
MeshFunction solve_block_tridiagonal(const BlockTridiagonalSystem& sys);

struct SolveOptions {
    bool allow_large_epsilon = false;
    int samples = kDefaultSamples;
    bool validate = true;
};

struct DiscreteSolution {
    ShishkinMesh mesh;
    MeshFunction values;          ///< N+1 rows, boundary rows included
    double residual_norm = 0.0;   ///< max |L^N U - f| over interior nodes
};

/// Refuses problems failing the conditions on A, the epsilon ordering or
/// range, or (unless allowed) the small-epsilon condition, with ValidationError.
void require_solvable(const Problem& p, const SolveOptions& options);

/// Transitions, mesh, assembly and block solve for N intervals.
DiscreteSolution solve_problem(const Problem& p, std::size_t N, const SolveOptions& options = {});

/// Assembly and solve on a prebuilt mesh.
DiscreteSolution solve_on_mesh(const Problem& p, const ShishkinMesh& mesh, const SolveOptions& options = {});

struct CheckReport {
    std::string name;
    bool passed = false;
    std::size_t trials = 0;
    std::size_t violations = 0;
    double min_value = 0.0;
    double max_value = 0.0;
    std::string detail;
};

/// Guard on (N-1) n for checks that form dense matrices.
inline constexpr std::size_t kMaxDenseSize = 4096;

/// Discrete maximum principle via inverse-nonnegativity of the assembled
/// matrix: passes iff min(inv) >= -1e-10 * max(inv).
CheckReport check_discrete_max_principle(const BlockTridiagonalSystem& sys);

/// Random mesh functions Psi (boundary rows included) against
/// ||Psi(x_j)|| <= max{||Psi(0)||, ||Psi(1)||, ||L^N Psi|| / alpha}.
/// Odd-numbered trials draw Psi as the discrete solution for random data,
/// even-numbered trials draw every nodal value independently.
CheckReport check_discrete_stability(const BlockTridiagonalSystem& sys, std::size_t trials, double alpha,
                                     std::uint64_t seed = 20240521);

}  // namespace shishkin
