// Acceptance gate: one line per criterion, nonzero exit if any fails.
// Metrics are recomputed here from raw solver output rather than taken
// from the library's own reports.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <fmt/format.h>

#include "shishkin/analysis.hpp"
#include "shishkin/checks.hpp"
#include "shishkin/mesh.hpp"
#include "shishkin/solver.hpp"

namespace {

using namespace shishkin;

struct Outcome {
    bool passed = false;
    std::string detail;
};

struct Criterion {
    int id;
    std::string name;
    double budget_s;
    std::function<Outcome()> run;
};

double ln3(double N) { return std::pow(std::log(N), 3); }

double raw_order(double e_coarse, double e_fine) { return std::log2(e_coarse / e_fine); }

double effective_order(double N, double e_coarse, double e_fine) {
    return std::log2((e_coarse / ln3(N)) / (e_fine / ln3(2.0 * N)));
}

double max_nodal_error(const DiscreteSolution& sol, const ExactSolution& u, const std::vector<double>& eps) {
    double err = 0.0;
    for (std::size_t j = 0; j < sol.mesh.points.size(); ++j)
        err = std::max(err, (sol.values.row(static_cast<Eigen::Index>(j)).transpose() - u(sol.mesh.points[j], eps))
                                .cwiseAbs()
                                .maxCoeff());
    return err;
}

std::vector<std::size_t> doubling(std::size_t from, std::size_t to) {
    std::vector<std::size_t> out;
    for (std::size_t N = from; N <= to; N *= 2) out.push_back(N);
    return out;
}

BlockTridiagonalSystem system_for(const Problem& p, std::size_t N) {
    return assemble(p, build_mesh(compute_transitions(p.epsilon, p.alpha, N)));
}

Outcome constant_solution() {
    const Problem& p = builtin_problem("Pconst").problem;
    double worst = 0.0;
    for (std::size_t N : doubling(8, 1024)) {
        const auto sol = solve_problem(p, N);
        worst = std::max(worst, (sol.values.array() - 1.0).abs().maxCoeff());
    }
    return {worst < 1e-12, fmt::format("max |U - 1| = {:.3g} over N = 8..1024", worst)};
}

Outcome scalar_convergence() {
    const auto& np = builtin_problem("P1");
    const Problem p = with_epsilon(np.problem, {1e-8});
    const auto Ns = doubling(64, 1024);
    std::vector<double> e;
    for (auto N : Ns) e.push_back(max_nodal_error(solve_problem(p, N), *np.exact, p.epsilon));
    bool decreasing = true;
    for (std::size_t i = 1; i < e.size(); ++i) decreasing = decreasing && e[i] < e[i - 1];
    const double raw = raw_order(e[3], e[4]);
    const double eff = effective_order(512.0, e[3], e[4]);
    return {decreasing && raw >= 1.3 && eff >= 1.8,
            fmt::format("errors {:.3e}; decreasing = {}; 512->1024 raw order {:.3f}, effective {:.3f}",
                        fmt::join(e, " "), decreasing, raw, eff)};
}

Outcome epsilon_uniformity() {
    const auto& np = builtin_problem("P1");
    const auto Ns = doubling(128, 1024);
    std::vector<double> uniform(Ns.size(), 0.0);
    for (int k = 1; k <= 6; ++k) {
        const Problem p = with_epsilon(np.problem, {std::pow(10.0, -2.0 * k)});
        for (std::size_t i = 0; i < Ns.size(); ++i)
            uniform[i] = std::max(uniform[i], max_nodal_error(solve_problem(p, Ns[i]), *np.exact, p.epsilon));
    }
    std::vector<double> c;
    for (std::size_t i = 0; i < Ns.size(); ++i) {
        const double N = static_cast<double>(Ns[i]);
        c.push_back(uniform[i] * N * N / ln3(N));
    }
    const auto [lo, hi] = std::minmax_element(c.begin(), c.end());
    const double spread = *hi / *lo;
    return {spread < 1.5, fmt::format("bound constants {:.4f}; max/min = {:.3f}", fmt::join(c, " "), spread)};
}

Outcome system_two_mesh() {
    const Problem& base = builtin_problem("P3").problem;
    const auto Ns = doubling(64, 512);
    std::vector<double> uniform(Ns.size(), 0.0);
    for (double e1 : {1e-8, 1e-6})
        for (double e2 : {1e-4, 1e-2}) {
            const Problem p = with_epsilon(base, {e1, e2});
            for (std::size_t i = 0; i < Ns.size(); ++i) {
                const auto tp = compute_transitions(p.epsilon, p.alpha, Ns[i]);
                const auto coarse = solve_on_mesh(p, build_mesh(tp, 1));
                const auto fine = solve_on_mesh(p, build_mesh(tp, 2));
                double err = 0.0;
                for (Eigen::Index j = 0; j < coarse.values.rows(); ++j)
                    err = std::max(err, (coarse.values.row(j) - fine.values.row(2 * j)).cwiseAbs().maxCoeff());
                uniform[i] = std::max(uniform[i], err);
            }
        }
    const std::size_t last = Ns.size() - 2;
    const double raw = raw_order(uniform[last], uniform[last + 1]);
    const double eff = effective_order(static_cast<double>(Ns[last]), uniform[last], uniform[last + 1]);
    return {raw >= 1.3 && eff >= 1.7, fmt::format("uniform two-mesh errors {:.3e}; 256->512 raw order {:.3f}, "
                                                  "effective {:.3f}",
                                                  fmt::join(uniform, " "), raw, eff)};
}

Outcome mesh_invariants() {
    std::mt19937_64 rng(20240521);
    std::uniform_real_distribution<double> alpha_dist(0.1, 2.0);
    std::size_t meshes = 0, violations = 0;
    double geom = 0.0, symmetry = 0.0;
    for (std::size_t n = 1; n <= 4; ++n)
        for (std::size_t p = 1; p <= 5; ++p) {
            const std::size_t N = std::size_t{1} << (n + p + 1);
            for (int t = 0; t < 200; ++t) {
                const double alpha = alpha_dist(rng);
                const auto eps = random_admissible_epsilon(rng, n, alpha);
                const auto tp = compute_transitions(eps, alpha, N);
                const auto mesh = build_mesh(tp);
                ++meshes;
                bool ok = mesh.points.size() == N + 1 && mesh.points.front() == 0.0 && mesh.points.back() == 1.0;
                std::size_t total = 0;
                for (auto c : mesh.interval_counts) total += c;
                ok = ok && total == N;
                for (std::size_t k = 0; k < n; ++k) {
                    const double next = k + 1 < n ? tp.tau[k + 1] : 0.5;
                    ok = ok && tp.tau[k] > 0.0 && tp.tau[k] <= next / 2.0 && tp.tau[k] <= 0.25;
                }
                for (std::size_t j = 1; j <= N; ++j) ok = ok && mesh.points[j] > mesh.points[j - 1];
                for (std::size_t j = 0; j <= N; ++j)
                    symmetry = std::max(symmetry, std::abs(mesh.points[N - j] - (1.0 - mesh.points[j])));
                // Walk the pieces: every piece is uniform; with b = 0 neighbours share one step.
                std::size_t j0 = 0;
                std::vector<double> steps;
                for (auto c : mesh.interval_counts) {
                    const double h = (mesh.points[j0 + c] - mesh.points[j0]) / static_cast<double>(c);
                    for (std::size_t j = j0 + 1; j <= j0 + c; ++j)
                        ok = ok && std::abs(mesh.points[j] - mesh.points[j - 1] - h) <= 1e-12 * h + 4e-16;
                    steps.push_back(h);
                    j0 += c;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    if (tp.b[k] == 0) {
                        // b_k = 0 merges piece k with piece k-1 (or the edge piece).
                        const double lhs = steps[k], rhs = steps[k + 1];
                        if (k == 0 || tp.b[k - 1] == 0)
                            ok = ok && (k + 1 < n ? true : std::abs(lhs - rhs) <= 1e-12 * rhs);
                    } else {
                        const double b = std::exp(-tp.tau[k] * std::sqrt(alpha / eps[k]));
                        const double d = std::abs(b * double(N) * double(N) - 1.0);
                        geom = std::max(geom, d);
                        ok = ok && d < 1e-10;
                    }
                }
                if (tp.is_uniform_class()) {
                    const double h = 1.0 / static_cast<double>(N);
                    for (std::size_t j = 1; j <= N; ++j)
                        ok = ok && std::abs(mesh.points[j] - mesh.points[j - 1] - h) <= 1e-12 * h;
                }
                if (!ok) ++violations;
            }
        }
    const bool passed = violations == 0 && symmetry < 1e-14;
    return {passed, fmt::format("{} meshes, {} violations, max |B N^2 - 1| = {:.3g}, symmetry defect {:.3g}", meshes,
                                violations, geom, symmetry)};
}

Outcome intersection_lemma() {
    std::mt19937_64 rng(20240521);
    std::uniform_real_distribution<double> alpha_dist(0.1, 2.0);
    std::size_t violations = 0;
    double residual = 0.0;
    for (int t = 0; t < 1000; ++t) {
        const double alpha = alpha_dist(rng);
        const auto e = random_admissible_epsilon(rng, 4, alpha);
        for (double s : {1.0, 1.5}) {
            auto x = [&](std::size_t i, std::size_t j) { return intersection_point(e[i], e[j], alpha, s); };
            for (std::size_t i = 0; i < 4; ++i)
                for (std::size_t j = i + 1; j < 4; ++j) {
                    const double v = x(i, j);
                    const double lhs = -v * std::sqrt(alpha / e[i]) - s * std::log(e[i]);
                    const double rhs = -v * std::sqrt(alpha / e[j]) - s * std::log(e[j]);
                    const double r = std::abs(lhs - rhs) / std::max(std::abs(lhs), std::abs(rhs));
                    residual = std::max(residual, r);
                    bool ok = r < 1e-12 && v > 0.0 && v < 2.0 * s * std::sqrt(e[j] / alpha) && v < 0.5;
                    if (i + 1 < j) ok = ok && v < x(i + 1, j);
                    if (j + 1 < 4) ok = ok && v < x(i, j + 1);
                    if (!ok) ++violations;
                }
        }
    }
    return {violations == 0,
            fmt::format("1000 tuples x 2 values of s, {} violations, max relative residual {:.3g}", violations,
                        residual)};
}

double min_ratio(const Eigen::MatrixXd& inv) { return inv.minCoeff() / inv.maxCoeff(); }

Outcome max_principle() {
    std::string detail;
    bool passed = true;
    for (const auto& np : builtin_problems()) {
        const Eigen::MatrixXd inv = to_dense(system_for(np.problem, 16)).fullPivLu().inverse();
        const bool ok = inv.minCoeff() >= -1e-10 * inv.maxCoeff();
        passed = passed && ok;
        detail += fmt::format("{} min/max {:.2g}; ", np.name, min_ratio(inv));
    }
    const Eigen::MatrixXd bad = to_dense(system_for(fixture_problem("a1-violation").problem, 16)).fullPivLu().inverse();
    const bool fixture_fails = bad.minCoeff() < -1e-10 * bad.maxCoeff();
    passed = passed && fixture_fails;
    detail += fmt::format("a1-violation fixture min/max {:.2g} ({})", min_ratio(bad),
                          fixture_fails ? "rejected" : "NOT rejected");
    return {passed, detail};
}

Outcome stability() {
    const Problem& p = builtin_problem("P2").problem;
    const auto sys = system_for(p, 16);
    const Eigen::MatrixXd m = to_dense(sys);
    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(m);
    const Eigen::Index rows = m.rows();
    std::mt19937_64 rng(20240521);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::size_t violations = 0;
    double worst = 0.0;
    for (int t = 0; t < 1000; ++t) {
        Eigen::Vector2d left, right;
        left << u(rng), u(rng);
        right << u(rng), u(rng);
        Eigen::VectorXd interior(rows);
        if (t % 2 == 0) {
            for (Eigen::Index i = 0; i < rows; ++i) interior(i) = u(rng);
        } else {
            // Interior values from the discrete problem with random data.
            Eigen::VectorXd g(rows);
            for (Eigen::Index i = 0; i < rows; ++i) g(i) = u(rng);
            g.head(2) -= sys.sub.front() * left;
            g.tail(2) -= sys.super.back() * right;
            interior = lu.solve(g);
        }
        Eigen::VectorXd l = m * interior;
        l.head(2) += sys.sub.front() * left;
        l.tail(2) += sys.super.back() * right;
        const double bound = std::max({left.cwiseAbs().maxCoeff(), right.cwiseAbs().maxCoeff(),
                                       l.cwiseAbs().maxCoeff() / p.alpha});
        const double norm = std::max({interior.cwiseAbs().maxCoeff(), left.cwiseAbs().maxCoeff(),
                                      right.cwiseAbs().maxCoeff()});
        worst = std::max(worst, norm / bound);
        if (norm > bound * (1.0 + 1e-12)) ++violations;
    }
    return {violations == 0, fmt::format("1000 trials, {} violations, max ||Psi|| / bound = {:.6f}", violations, worst)};
}

Outcome solver_oracle() {
    double worst = 0.0;
    for (const auto& np : builtin_problems())
        for (std::size_t N : {8u, 16u, 32u}) {
            if (!admissible_intervals(np.problem.n(), N)) continue;
            const auto sys = system_for(np.problem, N);
            const MeshFunction u = solve_block_tridiagonal(sys);
            const Eigen::VectorXd ref = to_dense(sys).fullPivLu().solve(stacked_rhs(sys));
            const Eigen::VectorXd flat = Eigen::Map<const Eigen::VectorXd>(u.data(), u.size());
            worst = std::max(worst, (flat - ref).cwiseAbs().maxCoeff() / ref.cwiseAbs().maxCoeff());
        }
    return {worst < 1e-10, fmt::format("max relative discrepancy {:.3g}", worst)};
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "constant-solution exactness", 1.0, constant_solution},
        {2, "scalar closed-form convergence", 10.0, scalar_convergence},
        {3, "epsilon-uniformity", 60.0, epsilon_uniformity},
        {4, "system two-mesh orders", 120.0, system_two_mesh},
        {5, "mesh invariant suite", 10.0, mesh_invariants},
        {6, "intersection-point suite", 5.0, intersection_lemma},
        {7, "discrete maximum principle", 5.0, max_principle},
        {8, "discrete stability", 5.0, stability},
        {9, "solver oracle equivalence", 5.0, solver_oracle},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_time = secs < c.budget_s;
        const bool ok = o.passed && in_time;
        if (!ok) ++failures;
        fmt::print("{} [{}] {} ({:.2f}s / {:.0f}s{}): {}\n", ok ? "PASS" : "FAIL", c.id, c.name, secs, c.budget_s,
                   in_time ? "" : ", over budget", o.detail);
    }
    fmt::print("{} of {} criteria passed\n", criteria.size() - static_cast<std::size_t>(failures), criteria.size());
    return failures == 0 ? 0 : 1;
}
