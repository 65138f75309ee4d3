#include "shishkin/mesh.hpp"

#include <algorithm>
#include <bit>
#include <cfloat>
#include <cmath>

#include <fmt/format.h>

#include "shishkin/error.hpp"

namespace shishkin {

bool TransitionParams::is_uniform_class() const {
    return std::all_of(b.begin(), b.end(), [](int v) { return v == 0; });
}

bool admissible_intervals(std::size_t n, std::size_t N) {
    if (n == 0 || n > 24) return false;
    return std::has_single_bit(N) && N >= min_intervals(n) && N <= (std::size_t{1} << 40);
}

std::size_t min_intervals(std::size_t n) { return std::size_t{1} << (n + 2); }

TransitionParams compute_transitions(const std::vector<double>& epsilon, double alpha, std::size_t N) {
    const std::size_t n = epsilon.size();
    if (n == 0) throw InputError("compute_transitions: epsilon is empty");
    if (!admissible_intervals(n, N))
        throw InputError(fmt::format("N = {} is not of the form 2^(n+p+1) with p >= 1 (n = {}, smallest N = {})", N,
                                     n, min_intervals(n)));
    if (!(alpha > 0.0) || !std::isfinite(alpha)) throw InputError("compute_transitions: alpha must be positive");
    for (std::size_t i = 0; i < n; ++i) {
        if (!(epsilon[i] > 0.0)) throw InputError("compute_transitions: epsilon entries must be positive");
        if (i > 0 && !(epsilon[i - 1] < epsilon[i]))
            throw InputError("compute_transitions: epsilon must be strictly increasing");
    }

    TransitionParams tp;
    tp.n = n;
    tp.N = N;
    tp.alpha = alpha;
    tp.epsilon = epsilon;
    tp.tau.assign(n, 0.0);
    tp.b.assign(n, 0);

    const double log_n = std::log(static_cast<double>(N));
    double cap = 0.25;
    for (std::size_t k = n; k-- > 0;) {
        const double layer = 2.0 * std::sqrt(epsilon[k] / alpha) * log_n;
        if (cap <= layer) {
            tp.tau[k] = cap;
            tp.b[k] = 0;
        } else {
            tp.tau[k] = layer;
            tp.b[k] = 1;
        }
        cap = tp.tau[k] / 2.0;
    }
    return tp;
}

namespace {

void fill_piece(std::vector<double>& pts, double a, double b, std::size_t count) {
    const double step = (b - a) / static_cast<double>(count);
    for (std::size_t i = 1; i < count; ++i) pts.push_back(a + static_cast<double>(i) * step);
    pts.push_back(b);
}

}  // namespace

ShishkinMesh build_mesh(const TransitionParams& params, std::size_t refinement) {
    const std::size_t n = params.n;
    if (refinement == 0 || !std::has_single_bit(refinement))
        throw InputError("build_mesh: refinement must be a power of two");
    if (params.tau.size() != n || !admissible_intervals(n, params.N))
        throw InputError("build_mesh: inconsistent transition parameters");
    const std::size_t N = params.N * refinement;

    // Left half: [0,tau_1], (tau_k, tau_{k+1}] for k = 1..n-1, then (tau_n, 1/2].
    std::vector<std::size_t> half_counts;
    half_counts.push_back(N >> (n + 1));
    for (std::size_t k = 1; k < n; ++k) half_counts.push_back(N >> (n - k + 2));
    half_counts.push_back(N / 4);

    std::vector<double> left{0.0};
    left.reserve(N / 2 + 1);
    double a = 0.0;
    for (std::size_t piece = 0; piece <= n; ++piece) {
        const double b = piece < n ? params.tau[piece] : 0.5;
        fill_piece(left, a, b, half_counts[piece]);
        a = b;
    }

    ShishkinMesh mesh;
    mesh.params = params;
    mesh.points.resize(N + 1);
    for (std::size_t j = 0; j <= N / 2; ++j) mesh.points[j] = left[j];
    for (std::size_t j = 0; j < N / 2; ++j) mesh.points[N - j] = 1.0 - left[j];
    mesh.points[N / 2] = 0.5;

    mesh.interval_counts.assign(half_counts.begin(), half_counts.end() - 1);
    mesh.interval_counts.push_back(N / 2);
    for (std::size_t k = n; k-- > 0;) mesh.interval_counts.push_back(half_counts[k]);
    return mesh;
}

double LayerFunctions::left(std::size_t i, double x) const {
    return std::exp(-x * std::sqrt(alpha / epsilon.at(i)));
}

double LayerFunctions::right(std::size_t i, double x) const { return left(i, 1.0 - x); }

double LayerFunctions::both(std::size_t i, double x) const { return left(i, x) + right(i, x); }

double layer_value(const LayerFunctions& lf, Side side, std::size_t i, double x) {
    switch (side) {
    case Side::Left: return lf.left(i, x);
    case Side::Right: return lf.right(i, x);
    case Side::Both: return lf.both(i, x);
    }
    return 0.0;
}

double intersection_point(double epsilon_i, double epsilon_j, double alpha, double s) {
    if (!(epsilon_i > 0.0) || !(epsilon_i < epsilon_j))
        throw InputError("intersection_point: requires 0 < eps_i < eps_j");
    if (!(alpha > 0.0)) throw InputError("intersection_point: alpha must be positive");
    if (!(s > 0.0 && s <= 1.5)) throw InputError("intersection_point: s must lie in (0, 3/2]");
    const double log_ratio = 0.5 * (std::log(epsilon_j) - std::log(epsilon_i));
    const double rate_gap = 1.0 / std::sqrt(epsilon_i) - 1.0 / std::sqrt(epsilon_j);
    return 2.0 * s * log_ratio / (std::sqrt(alpha) * rate_gap);
}

MeshReport mesh_report(const ShishkinMesh& mesh) {
    MeshReport report;
    const auto& x = mesh.points;
    const std::size_t N = mesh.N();
    const std::size_t n = mesh.params.n;

    std::size_t j = 0;
    for (std::size_t count : mesh.interval_counts) {
        MeshPiece piece{x[j], x[j + count], count, (x[j + count] - x[j]) / static_cast<double>(count)};
        report.pieces.push_back(piece);
        j += count;
    }

    for (std::size_t i = 1; i < N; ++i) {
        const double h = x[i] - x[i - 1];
        const double H = x[i + 1] - x[i];
        // Mirrored nodes near x = 1 carry absolute rounding of a few ulp(1).
        const double slack = kJumpTolerance * std::max(H, h) + 8.0 * DBL_EPSILON;
        if (std::abs(H - h) > slack) report.jump_points.push_back(x[i]);
    }

    const auto& tau = mesh.params.tau;
    const double Nd = static_cast<double>(N);
    std::size_t index = 0;
    for (std::size_t k = 1; k <= n; ++k) {
        index += mesh.interval_counts[k - 1];
        TransitionGeometry g;
        g.k = k;
        g.index = index;
        g.tau = tau[k - 1];
        g.h = x[index] - x[index - 1];
        g.H = x[index + 1] - x[index];
        // [0, tau_1] holds N/2^(n+1) intervals; deeper pieces N/2^(n-k+3).
        if (k == 1)
            g.h_expected = std::ldexp(tau[0], static_cast<int>(n + 1)) / Nd;
        else
            g.h_expected = std::ldexp(tau[k - 1] - tau[k - 2], static_cast<int>(n - k + 3)) / Nd;
        const double next = k < n ? tau[k] : 0.5;
        g.H_expected = std::ldexp(next - tau[k - 1], static_cast<int>(n - k + 2)) / Nd;
        report.max_identity_error = std::max({report.max_identity_error, std::abs(g.h - g.h_expected) / g.h_expected,
                                              std::abs(g.H - g.H_expected) / g.H_expected});
        report.transitions.push_back(g);
    }
    return report;
}

}  // namespace shishkin
