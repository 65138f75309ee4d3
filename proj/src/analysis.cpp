#include "shishkin/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <exception>

#include <fmt/format.h>

#include "shishkin/error.hpp"
#include "shishkin/kernels.hpp"

namespace shishkin {

double exact_error(const DiscreteSolution& sol, const ExactSolution& exact, const std::vector<double>& epsilon) {
    const auto& x = sol.mesh.points;
    double err = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) {
        const Eigen::VectorXd u = exact(x[j], epsilon);
        err = std::max(err, (sol.values.row(static_cast<Eigen::Index>(j)).transpose() - u).cwiseAbs().maxCoeff());
    }
    return err;
}

double two_mesh_error(const Problem& p, std::size_t N, const SolveOptions& options) {
    if (options.validate) require_solvable(p, options);
    const TransitionParams tp = compute_transitions(p.epsilon, p.alpha, N);
    SolveOptions inner = options;
    inner.validate = false;
    const DiscreteSolution coarse = solve_on_mesh(p, build_mesh(tp, 1), inner);
    const DiscreteSolution fine = solve_on_mesh(p, build_mesh(tp, 2), inner);
    double err = 0.0;
    for (Eigen::Index j = 0; j <= static_cast<Eigen::Index>(N); ++j)
        err = std::max(err, (coarse.values.row(j) - fine.values.row(2 * j)).cwiseAbs().maxCoeff());
    return err;
}

namespace {

void check_doubling(const std::vector<std::size_t>& Ns) {
    if (Ns.size() < 2) throw InputError("a convergence series needs at least two values of N");
    for (std::size_t i = 1; i < Ns.size(); ++i)
        if (Ns[i] != 2 * Ns[i - 1]) throw InputError("each N in a series must double the previous one");
}

}  // namespace

std::vector<ErrorRecord> error_records(const std::vector<std::size_t>& Ns, const std::vector<double>& errors) {
    check_doubling(Ns);
    if (errors.size() != Ns.size()) throw InputError("error_records: one error per N required");
    std::vector<ErrorRecord> out(Ns.size());
    for (std::size_t i = 0; i < Ns.size(); ++i) {
        const double N = static_cast<double>(Ns[i]);
        const double lnN = std::log(N);
        out[i].N = Ns[i];
        out[i].error = errors[i];
        out[i].bound_constant = errors[i] * N * N / (lnN * lnN * lnN);
        if (i + 1 < Ns.size()) {
            const double ratio = errors[i] / errors[i + 1];
            const double log_gain = std::log2(std::log(2.0 * N) / lnN);
            out[i].order = std::log2(ratio);
            out[i].effective_order = *out[i].order + 3.0 * log_gain;
            out[i].effective_order_log2 = *out[i].order + 2.0 * log_gain;
        }
    }
    return out;
}

std::string_view mode_name(ErrorMode m) { return m == ErrorMode::Exact ? "exact" : "two_mesh"; }

std::vector<ErrorRecord> convergence_series(const Problem& p, const std::vector<std::size_t>& Ns, ErrorMode mode,
                                            const std::optional<ExactSolution>& exact, const SolveOptions& options) {
    check_doubling(Ns);
    if (mode == ErrorMode::Exact && !exact) throw InputError("exact mode needs a closed-form solution");
    if (options.validate) require_solvable(p, options);
    SolveOptions inner = options;
    inner.validate = false;

    std::vector<double> errors;
    errors.reserve(Ns.size());
    for (std::size_t N : Ns) {
        if (mode == ErrorMode::Exact)
            errors.push_back(exact_error(solve_problem(p, N, inner), *exact, p.epsilon));
        else
            errors.push_back(two_mesh_error(p, N, inner));
    }
    return error_records(Ns, errors);
}

std::vector<std::vector<double>> epsilon_grid_product(const std::vector<std::vector<double>>& per_component) {
    std::vector<std::vector<double>> out{{}};
    for (const auto& values : per_component) {
        std::vector<std::vector<double>> next;
        for (const auto& prefix : out)
            for (double v : values) {
                auto t = prefix;
                t.push_back(v);
                next.push_back(std::move(t));
            }
        out = std::move(next);
    }
    std::erase_if(out, [](const std::vector<double>& e) {
        return std::adjacent_find(e.begin(), e.end(), std::greater_equal<>()) != e.end();
    });
    return out;
}

ConvergenceReport epsilon_sweep(const Problem& base, std::string problem_id,
                                const std::vector<std::vector<double>>& eps_grid, const std::vector<std::size_t>& Ns,
                                ErrorMode mode, const std::optional<ExactSolution>& exact,
                                const SweepOptions& options) {
    check_doubling(Ns);
    ConvergenceReport report;
    report.problem_id = std::move(problem_id);
    report.mode = mode;
    report.Ns = Ns;

    std::vector<Problem> jobs;
    for (const auto& eps : eps_grid) {
        const std::string label = fmt::format("eps = ({:.3g})", fmt::join(eps, ", "));
        if (eps.size() != base.n()) {
            report.notices.push_back(fmt::format("skipped {}: expected {} components", label, base.n()));
            continue;
        }
        Problem p = with_epsilon(base, eps);
        const ValidationReport v = validate_problem(p, options.solve.samples);
        if (!v.solver_ready(options.solve.allow_large_epsilon)) {
            std::string why;
            for (const auto& c : v.conditions)
                if (!c.passed) why += fmt::format("{}{}", why.empty() ? "" : ", ", condition_name(c.condition));
            report.notices.push_back(fmt::format("skipped {}: {}", label, why));
            continue;
        }
        jobs.push_back(std::move(p));
    }

    const int threads = options.threads > 0 ? options.threads : kernels::sweep_threads();
    std::vector<EpsilonSeries> results(jobs.size());
    std::vector<std::exception_ptr> failures(jobs.size());
    SolveOptions inner = options.solve;
    inner.validate = false;
    const auto count = static_cast<std::ptrdiff_t>(jobs.size());
#pragma omp parallel for schedule(dynamic) num_threads(threads)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
        const auto k = static_cast<std::size_t>(i);
        try {
            results[k].epsilon = jobs[k].epsilon;
            results[k].records = convergence_series(jobs[k], Ns, mode, exact, inner);
        } catch (...) {
            failures[k] = std::current_exception();
        }
    }
    for (const auto& f : failures)
        if (f) std::rethrow_exception(f);

    for (auto& s : results) {
        const double first = s.records.front().bound_constant;
        double largest = first;
        for (const auto& r : s.records) largest = std::max(largest, r.bound_constant);
        s.bound_growth = first > 0.0 ? largest / first : 1.0;
        s.flagged = s.bound_growth > options.growth_factor;
    }
    report.series = std::move(results);

    if (!report.series.empty()) {
        std::vector<double> uniform(Ns.size(), 0.0);
        for (const auto& s : report.series)
            for (std::size_t i = 0; i < Ns.size(); ++i) uniform[i] = std::max(uniform[i], s.records[i].error);
        report.uniform = error_records(Ns, uniform);
    }
    return report;
}

}  // namespace shishkin
