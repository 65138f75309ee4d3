#include "shishkin/checks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "shishkin/mesh.hpp"

namespace shishkin {

std::vector<double> random_admissible_epsilon(std::mt19937_64& rng, std::size_t n, double alpha) {
    const double hi = std::log10(alpha / 36.0);
    std::uniform_real_distribution<double> exponent(-12.0, hi);
    std::vector<double> logs(n);
    for (;;) {
        for (auto& l : logs) l = exponent(rng);
        std::sort(logs.begin(), logs.end());
        bool separated = true;
        for (std::size_t i = 1; i < n; ++i) separated = separated && logs[i] - logs[i - 1] >= 0.01;
        if (separated) break;
    }
    std::vector<double> eps(n);
    for (std::size_t i = 0; i < n; ++i) eps[i] = std::min(std::pow(10.0, logs[i]), alpha / 36.0);
    return eps;
}

namespace {

struct Tally {
    std::size_t violations = 0;
    std::string first;

    void fail(std::string what) {
        if (violations++ == 0) first = std::move(what);
    }
};

}  // namespace

CheckReport check_mesh_invariants(std::uint64_t seed, std::size_t max_n, std::size_t max_p, std::size_t per_case) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> alpha_dist(0.1, 2.0);
    Tally tally;
    std::size_t cases = 0;
    double worst_geom0 = 0.0;
    double worst_symmetry = 0.0;
    constexpr double kUlpOne = std::numeric_limits<double>::epsilon();

    for (std::size_t n = 1; n <= max_n; ++n) {
        for (std::size_t p = 1; p <= max_p; ++p) {
            const std::size_t N = std::size_t{1} << (n + p + 1);
            for (std::size_t t = 0; t < per_case; ++t) {
                const double alpha = alpha_dist(rng);
                std::vector<double> eps;
                if (t == 0) {
                    for (std::size_t k = 0; k < n; ++k)
                        eps.push_back(alpha / 36.0 * std::ldexp(1.0, -2 * static_cast<int>(n - 1 - k)));
                } else {
                    eps = random_admissible_epsilon(rng, n, alpha);
                }
                ++cases;
                const auto tag = [&] { return fmt::format("n={} p={} trial={}", n, p, t); };
                const TransitionParams tp = compute_transitions(eps, alpha, N);
                const ShishkinMesh mesh = build_mesh(tp);

                std::size_t total = 0;
                for (auto c : mesh.interval_counts) total += c;
                if (total != N) tally.fail(tag() + ": interval counts do not sum to N");

                if (!(tp.tau.front() > 0.0 && tp.tau.back() <= 0.25)) tally.fail(tag() + ": tau outside (0, 1/4]");
                for (std::size_t k = 1; k < n; ++k)
                    if (!(tp.tau[k - 1] < tp.tau[k])) tally.fail(tag() + ": tau chain not increasing");

                const auto& x = mesh.points;
                if (x.front() != 0.0 || x.back() != 1.0) tally.fail(tag() + ": endpoints are not 0 and 1");
                double smin = std::numeric_limits<double>::infinity(), smax = 0.0;
                for (std::size_t j = 1; j <= N; ++j) {
                    const double h = x[j] - x[j - 1];
                    if (!(h > 0.0)) tally.fail(tag() + ": points not strictly increasing");
                    smin = std::min(smin, h);
                    smax = std::max(smax, h);
                }
                if (tp.is_uniform_class() && smax - smin > 2.0 * kUlpOne)
                    tally.fail(tag() + fmt::format(": b = 0 but spacing varies by {:.3g}", smax - smin));
                if (t == 0 && !tp.is_uniform_class()) tally.fail(tag() + ": uniform-class vector produced b != 0");

                for (std::size_t k = 0; k < n; ++k) {
                    if (tp.b[k] != 1) continue;
                    const LayerFunctions lf{alpha, eps};
                    const double dev = std::abs(lf.left(k, tp.tau[k]) * double(N) * double(N) - 1.0);
                    worst_geom0 = std::max(worst_geom0, dev);
                    if (!(dev < 1e-10)) tally.fail(tag() + fmt::format(": B^l_k(tau_k) N^2 - 1 = {:.3g}", dev));
                }

                for (std::size_t j = 0; j <= N; ++j) {
                    const double dev = std::abs(x[j] + x[N - j] - 1.0);
                    worst_symmetry = std::max(worst_symmetry, dev);
                    if (!(dev < 1e-14)) tally.fail(tag() + ": mesh not symmetric about 1/2");
                }
            }
        }
    }

    CheckReport r;
    r.name = "mesh-invariants";
    r.trials = cases;
    r.violations = tally.violations;
    r.passed = tally.violations == 0;
    r.max_value = std::max(worst_geom0, worst_symmetry);
    r.detail = fmt::format("{} meshes, {} violations, max |B N^2 - 1| = {:.3g}, max symmetry defect = {:.3g}{}", cases,
                           tally.violations, worst_geom0, worst_symmetry,
                           tally.violations ? "; first: " + tally.first : "");
    return r;
}

CheckReport check_intersection_points(std::uint64_t seed, std::size_t trials) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> alpha_dist(0.1, 2.0);
    constexpr std::size_t n = 4;
    Tally tally;
    double worst_residual = 0.0;

    for (std::size_t t = 0; t < trials; ++t) {
        const double alpha = alpha_dist(rng);
        const std::vector<double> eps = random_admissible_epsilon(rng, n, alpha);
        for (double s : {1.0, 1.5}) {
            auto point = [&](std::size_t i, std::size_t j) { return intersection_point(eps[i], eps[j], alpha, s); };
            const auto tag = [&](std::size_t i, std::size_t j) {
                return fmt::format("trial={} s={} (i,j)=({},{})", t, s, i + 1, j + 1);
            };
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = i + 1; j < n; ++j) {
                    const double x = point(i, j);
                    const double lhs = std::exp(-x * std::sqrt(alpha / eps[i])) / std::pow(eps[i], s);
                    const double rhs = std::exp(-x * std::sqrt(alpha / eps[j])) / std::pow(eps[j], s);
                    const double residual = std::abs(lhs - rhs) / std::max(lhs, rhs);
                    worst_residual = std::max(worst_residual, residual);
                    if (!(residual < 1e-12)) tally.fail(tag(i, j) + fmt::format(": residual {:.3g}", residual));
                    if (!(x < 2.0 * s * std::sqrt(eps[j] / alpha))) tally.fail(tag(i, j) + ": x >= 2s sqrt(eps_j/alpha)");
                    if (!(x > 0.0 && x < 0.5)) tally.fail(tag(i, j) + ": x outside (0, 1/2)");
                    if (i + 1 < j && !(x < point(i + 1, j))) tally.fail(tag(i, j) + ": x_{i,j} >= x_{i+1,j}");
                    if (j + 1 < n && !(x < point(i, j + 1))) tally.fail(tag(i, j) + ": x_{i,j} >= x_{i,j+1}");
                }
            }
        }
    }

    CheckReport r;
    r.name = "intersection-points";
    r.trials = trials;
    r.violations = tally.violations;
    r.passed = tally.violations == 0;
    r.max_value = worst_residual;
    r.detail = fmt::format("{} tuples x 2 values of s, {} violations, max relative residual = {:.3g}{}", trials,
                           tally.violations, worst_residual, tally.violations ? "; first: " + tally.first : "");
    return r;
}

}  // namespace shishkin
