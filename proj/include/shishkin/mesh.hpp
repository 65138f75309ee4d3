#pragma once

#include <cstddef>
#include <vector>

namespace shishkin {

/// Transition points tau_1 < ... < tau_n <= 1/4 of the piecewise-uniform
/// mesh and the mesh-class vector b. Indices are 0-based: tau[k] is tau_{k+1}.
struct TransitionParams {
    std::vector<double> tau;
    /// b[k] == 1 iff the sqrt(eps) ln N branch was strictly smaller.
    std::vector<int> b;
    std::size_t n = 0;
    std::size_t N = 0;
    double alpha = 0.0;
    std::vector<double> epsilon;

    bool is_uniform_class() const;
};

/// True iff N = 2^(n+p+1) for an integer p >= 1.
bool admissible_intervals(std::size_t n, std::size_t N);

/// Smallest admissible N for a system of size n.
std::size_t min_intervals(std::size_t n);

/// tau_n = min{1/4, 2 sqrt(eps_n/alpha) ln N}, then downward
/// tau_k = min{tau_{k+1}/2, 2 sqrt(eps_k/alpha) ln N}. Ties select the first
/// branch (b_k = 0). Throws InputError on inadmissible N, unsorted eps or alpha <= 0.
TransitionParams compute_transitions(const std::vector<double>& epsilon, double alpha, std::size_t N);

struct ShishkinMesh {
    std::vector<double> points;
    TransitionParams params;
    /// Intervals per sub-interval, left to right (2n+1 entries).
    std::vector<std::size_t> interval_counts;

    std::size_t N() const noexcept { return points.size() - 1; }
    /// x_j - x_{j-1}, for 1 <= j <= N.
    double spacing(std::size_t j) const { return points[j] - points[j - 1]; }
};

/// Places uniform sub-meshes: N/2^(n+1) intervals on [0, tau_1] and its mirror,
/// N/2^(n-k+2) on (tau_k, tau_{k+1}] and its mirror, N/2 on (tau_n, 1 - tau_n].
/// `refinement` multiplies every count while keeping tau fixed, so the
/// resulting mesh contains every node of the refinement = 1 mesh.
/// The right half is the exact mirror x_{N-j} = 1 - x_j of the left half.
ShishkinMesh build_mesh(const TransitionParams& params, std::size_t refinement = 1);

enum class Side { Left, Right, Both };

/// B^l_i(x) = exp(-x sqrt(alpha/eps_i)), B^r_i(x) = B^l_i(1-x), B_i = B^l_i + B^r_i.
struct LayerFunctions {
    double alpha = 1.0;
    std::vector<double> epsilon;

    double left(std::size_t i, double x) const;
    double right(std::size_t i, double x) const;
    double both(std::size_t i, double x) const;
};

/// 0-based component index i.
double layer_value(const LayerFunctions& lf, Side side, std::size_t i, double x);

/// The unique x with B^l_i(x)/eps_i^s = B^l_j(x)/eps_j^s:
/// x = 2s ln(sqrt(eps_j)/sqrt(eps_i)) / (sqrt(alpha) (1/sqrt(eps_i) - 1/sqrt(eps_j))).
/// Requires 0 < eps_i < eps_j, alpha > 0 and 0 < s <= 3/2; throws InputError otherwise.
double intersection_point(double epsilon_i, double epsilon_j, double alpha, double s);

struct MeshPiece {
    double left = 0.0;
    double right = 0.0;
    std::size_t count = 0;
    double spacing = 0.0;
};

/// Mesh geometry at the transition point tau_k.
struct TransitionGeometry {
    std::size_t k = 0;          ///< 1-based
    std::size_t index = 0;      ///< j with x_j = tau_k
    double tau = 0.0;
    double h = 0.0;             ///< x_j - x_{j-1}
    double H = 0.0;             ///< x_{j+1} - x_j
    double h_expected = 0.0;
    double H_expected = 0.0;
};

struct MeshReport {
    std::vector<MeshPiece> pieces;
    /// Points where the mesh size changes, detected from the actual spacings.
    std::vector<double> jump_points;
    std::vector<TransitionGeometry> transitions;
    /// Largest relative deviation of h_k, H_k from their closed forms.
    double max_identity_error = 0.0;

    bool uniform() const noexcept { return jump_points.empty(); }
};

inline constexpr double kJumpTolerance = 1e-12;

MeshReport mesh_report(const ShishkinMesh& mesh);

}  // namespace shishkin
