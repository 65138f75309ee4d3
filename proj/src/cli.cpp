#include "shishkin/cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "shishkin/analysis.hpp"
#include "shishkin/checks.hpp"
#include "shishkin/config.hpp"
#include "shishkin/error.hpp"
#include "shishkin/io.hpp"

namespace shishkin::cli {

namespace {

struct Flags {
    std::string config_path;
    std::string out;
    std::optional<std::uint64_t> seed;
    std::string format;
    bool allow_large_epsilon = false;
    bool debug_dump = false;
    std::string problem;
    std::string epsilon;
    std::optional<std::size_t> N;
    std::string Ns;
    std::string mode;
    std::optional<std::size_t> trials;
    bool synthetic = false;
    std::vector<std::string> fixtures;
};

RunConfig make_config(const Flags& f) {
    RunConfig c = f.config_path.empty() ? RunConfig{} : load_config(f.config_path);
    if (!f.problem.empty()) set_config_value(c, "problem", f.problem);
    if (!f.epsilon.empty()) set_config_value(c, "epsilon", f.epsilon);
    if (f.N) c.N = *f.N;
    if (!f.Ns.empty()) set_config_value(c, "Ns", f.Ns);
    if (!f.mode.empty()) set_config_value(c, "mode", f.mode);
    if (!f.out.empty()) c.out = f.out;
    if (f.seed) c.seed = *f.seed;
    if (f.trials) c.trials = *f.trials;
    if (!f.format.empty()) set_config_value(c, "format", f.format);
    if (f.allow_large_epsilon) c.allow_large_epsilon = true;
    if (f.debug_dump) c.debug_dump = true;
    return c;
}

SolveOptions solve_options(const RunConfig& c) {
    SolveOptions o;
    o.allow_large_epsilon = c.allow_large_epsilon;
    o.samples = c.samples;
    return o;
}

std::ofstream open_output(const RunConfig& c, const std::string& name) {
    std::filesystem::create_directories(c.out);
    const auto path = std::filesystem::path(c.out) / name;
    std::ofstream file(path, std::ios::binary);
    if (!file) throw InputError(fmt::format("cannot write '{}'", path.string()));
    return file;
}

std::string data_name(const RunConfig& c, std::string_view stem) {
    return fmt::format("{}.{}", stem, c.format == OutputFormat::Gnuplot ? "dat" : "csv");
}

std::string vector_text(const std::vector<double>& v) { return fmt::format("({:.6g})", fmt::join(v, ", ")); }

void print_problem(std::ostream& out, const NamedProblem& np) {
    fmt::print(out, "problem {} (n = {}): {}\n", np.name, np.problem.n(), np.description);
    fmt::print(out, "epsilon = {}, alpha = {:.6g}\n", vector_text(np.problem.epsilon), np.problem.alpha);
}

int cmd_validate(const RunConfig& c, std::ostream& out) {
    const NamedProblem np = resolve_problem(c);
    print_problem(out, np);
    const ValidationReport report = validate_problem(np.problem, c.samples);
    for (const auto& r : report.conditions) {
        std::string_view verdict = r.passed ? "PASS" : "FAIL";
        if (!r.passed && r.condition == Condition::SmallEpsilon && c.allow_large_epsilon) verdict = "WARN";
        fmt::print(out, "{:<18} {}  {}\n", condition_name(r.condition), verdict, r.detail);
    }
    const bool ready = report.solver_ready(c.allow_large_epsilon);
    fmt::print(out, "verdict: {}\n", ready ? "solver-ready" : "rejected");
    return ready ? kExitOk : kExitCheckFailed;
}

int cmd_mesh(const RunConfig& c, std::ostream& out) {
    const NamedProblem np = resolve_problem(c);
    const Problem& p = np.problem;
    const ValidationReport v = validate_problem(p, c.samples);
    for (Condition cond : {Condition::EpsilonOrdering, Condition::EpsilonRange}) {
        if (!v.get(cond).passed) {
            fmt::print(out, "rejected: {} ({})\n", condition_name(cond), v.get(cond).detail);
            return kExitCheckFailed;
        }
    }
    const TransitionParams tp = compute_transitions(p.epsilon, p.alpha, c.N);
    const ShishkinMesh mesh = build_mesh(tp);
    const MeshReport report = mesh_report(mesh);

    fmt::print(out, "N = {}, n = {}, alpha = {:.6g}\n", mesh.N(), tp.n, tp.alpha);
    for (std::size_t k = 0; k < tp.n; ++k) fmt::print(out, "tau_{} = {:.6g}  b_{} = {}\n", k + 1, tp.tau[k], k + 1, tp.b[k]);
    fmt::print(out, "b = ({})\n", fmt::join(tp.b, ", "));
    std::size_t total = 0;
    for (auto cnt : mesh.interval_counts) total += cnt;
    fmt::print(out, "counts: {} (sum {})\n", fmt::join(mesh.interval_counts, " "), total);
    if (report.uniform()) {
        fmt::print(out, "mesh class: uniform\n");
    } else {
        std::vector<std::string> pts;
        for (double x : report.jump_points) pts.push_back(fmt::format("{:.6g}", x));
        fmt::print(out, "J_b = {{{}}}\n", fmt::join(pts, ", "));
    }
    for (const auto& g : report.transitions)
        fmt::print(out, "tau_{}: h = {:.6g}, H = {:.6g}\n", g.k, g.h, g.H);
    fmt::print(out, "spacing identity max relative error = {:.3g}\n", report.max_identity_error);

    auto file = open_output(c, "mesh.csv");
    io::write_mesh_csv(file, mesh);
    fmt::print(out, "wrote {}\n", (std::filesystem::path(c.out) / "mesh.csv").string());
    return kExitOk;
}

int cmd_solve(const RunConfig& c, std::ostream& out) {
    const NamedProblem np = resolve_problem(c);
    print_problem(out, np);
    const SolveOptions opts = solve_options(c);
    require_solvable(np.problem, opts);
    const TransitionParams tp = compute_transitions(np.problem.epsilon, np.problem.alpha, c.N);
    const ShishkinMesh mesh = build_mesh(tp);
    SolveOptions inner = opts;
    inner.validate = false;
    const DiscreteSolution sol = solve_on_mesh(np.problem, mesh, inner);

    fmt::print(out, "N = {}, residual max|L^N U - f| = {:.3e}\n", sol.mesh.N(), sol.residual_norm);
    fmt::print(out, "max |U| = {:.6g}\n", sol.values.cwiseAbs().maxCoeff());
    if (np.exact) fmt::print(out, "max nodal error vs closed form = {:.6e}\n", exact_error(sol, *np.exact, np.problem.epsilon));

    auto file = open_output(c, "solution.csv");
    io::write_solution_csv(file, sol);
    fmt::print(out, "wrote {}\n", (std::filesystem::path(c.out) / "solution.csv").string());
    if (c.debug_dump) {
        auto dump = open_output(c, "system.csv");
        io::write_system_csv(dump, assemble(np.problem, mesh));
        fmt::print(out, "wrote {}\n", (std::filesystem::path(c.out) / "system.csv").string());
    }
    return kExitOk;
}

void emit_report(const RunConfig& c, const ConvergenceReport& report, std::ostream& out) {
    const bool exact = report.mode == ErrorMode::Exact;
    for (std::size_t id = 0; id < report.series.size(); ++id) {
        const auto& s = report.series[id];
        fmt::print(out, "[eps_id {}] epsilon = {}{}\n", id, vector_text(s.epsilon),
                   s.flagged ? fmt::format("  FLAG: bound constant grew by {:.3g}x", s.bound_growth) : "");
        if (c.format == OutputFormat::Csv) {
            ConvergenceReport one = report;
            one.series = {s};
            io::write_series(out, one, OutputFormat::Csv);
        } else {
            io::write_table(out, s.records, exact);
        }
    }
    if (report.series.size() > 1) {
        fmt::print(out, "[uniform] max over {} epsilon vectors\n", report.series.size());
        if (c.format == OutputFormat::Csv) io::write_uniform(out, report, OutputFormat::Csv);
        else io::write_table(out, report.uniform, exact);
    }
    for (const auto& notice : report.notices) fmt::print(out, "notice: {}\n", notice);

    auto series = open_output(c, data_name(c, "series"));
    io::write_series(series, report, c.format);
    auto uniform = open_output(c, data_name(c, "uniform"));
    io::write_uniform(uniform, report, c.format);
    auto index = open_output(c, data_name(c, "epsilons"));
    io::write_epsilon_index(index, report, c.format);
    fmt::print(out, "wrote {}, {}, {} in {}\n", data_name(c, "series"), data_name(c, "uniform"),
               data_name(c, "epsilons"), c.out);
}

ErrorMode resolve_mode(const RunConfig& c, const NamedProblem& np) {
    if (c.mode) {
        if (*c.mode == ErrorMode::Exact && !np.exact)
            throw InputError(fmt::format("problem {} has no closed-form solution; use mode two_mesh", np.name));
        return *c.mode;
    }
    return np.exact ? ErrorMode::Exact : ErrorMode::TwoMesh;
}

int cmd_converge(const RunConfig& c, bool synthetic, std::ostream& out) {
    if (synthetic) {
        ConvergenceReport report;
        report.problem_id = "synthetic";
        report.mode = ErrorMode::Exact;
        report.Ns = c.Ns;
        std::vector<double> errors;
        for (auto N : c.Ns) errors.push_back(1.0 / (double(N) * double(N)));
        EpsilonSeries s;
        s.records = error_records(c.Ns, errors);
        report.series = {s};
        report.uniform = s.records;
        fmt::print(out, "synthetic self-test: e_N = N^-2\n");
        emit_report(c, report, out);
        for (const auto& r : s.records)
            if (r.order && std::abs(*r.order - 2.0) > 1e-12) return kExitCheckFailed;
        return kExitOk;
    }
    const NamedProblem np = resolve_problem(c);
    print_problem(out, np);
    const ErrorMode mode = resolve_mode(c, np);
    fmt::print(out, "mode = {}, Ns = {}\n", mode_name(mode), fmt::join(c.Ns, " "));
    SweepOptions opts;
    opts.solve = solve_options(c);
    opts.growth_factor = c.growth_factor;
    require_solvable(np.problem, opts.solve);
    const ConvergenceReport report =
        epsilon_sweep(np.problem, np.name, {np.problem.epsilon}, c.Ns, mode, np.exact, opts);
    emit_report(c, report, out);
    return kExitOk;
}

int cmd_sweep(const RunConfig& c, std::ostream& out) {
    const NamedProblem np = resolve_problem(c);
    print_problem(out, np);
    const ErrorMode mode = resolve_mode(c, np);
    auto grid = resolve_epsilon_grid(c);
    if (grid.empty()) grid.push_back(np.problem.epsilon);
    fmt::print(out, "mode = {}, Ns = {}, {} grid entries\n", mode_name(mode), fmt::join(c.Ns, " "), grid.size());
    SweepOptions opts;
    opts.solve = solve_options(c);
    opts.growth_factor = c.growth_factor;
    const ConvergenceReport report = epsilon_sweep(np.problem, np.name, grid, c.Ns, mode, np.exact, opts);
    if (report.series.empty()) {
        fmt::print(out, "no admissible epsilon vectors in the grid\n");
        for (const auto& notice : report.notices) fmt::print(out, "notice: {}\n", notice);
        return kExitCheckFailed;
    }
    emit_report(c, report, out);
    return kExitOk;
}

int cmd_check(const RunConfig& c, const Flags& f, std::ostream& out) {
    std::vector<CheckReport> reports;
    reports.push_back(check_mesh_invariants(c.seed));
    reports.push_back(check_intersection_points(c.seed));

    std::vector<NamedProblem> targets = builtin_problems();
    if (!f.config_path.empty() || !f.problem.empty()) {
        NamedProblem configured = resolve_problem(c);
        const bool is_builtin = std::any_of(targets.begin(), targets.end(),
                                            [&](const NamedProblem& b) { return b.name == configured.name; });
        if (!is_builtin) targets.push_back(std::move(configured));
    }
    for (const auto& name : f.fixtures) targets.push_back(fixture_problem(name));
    for (const auto& t : targets) {
        const TransitionParams tp = compute_transitions(t.problem.epsilon, t.problem.alpha, 16);
        CheckReport r = check_discrete_max_principle(assemble(t.problem, build_mesh(tp)));
        r.name += "[" + t.name + "]";
        reports.push_back(std::move(r));
    }

    const Problem& p2 = builtin_problem("P2").problem;
    const TransitionParams tp = compute_transitions(p2.epsilon, p2.alpha, 16);
    CheckReport stab = check_discrete_stability(assemble(p2, build_mesh(tp)), c.trials, p2.alpha, c.seed);
    stab.name += "[P2]";
    reports.push_back(std::move(stab));

    bool ok = true;
    for (const auto& r : reports) {
        fmt::print(out, "{} {}: {}\n", r.passed ? "PASS" : "FAIL", r.name, r.detail);
        ok = ok && r.passed;
    }
    fmt::print(out, "{}\n", ok ? "all suites passed" : "some suites failed");
    return ok ? kExitOk : kExitCheckFailed;
}

void add_common(CLI::App* sub, Flags& f) {
    sub->add_option("--config", f.config_path, "Config file (key = value lines)");
    sub->add_option("--out", f.out, "Output directory");
    sub->add_option("--seed", f.seed, "Random seed for checks");
    sub->add_option("--format", f.format, "Output format: csv, table or gnuplot");
    sub->add_flag("--allow-large-epsilon", f.allow_large_epsilon, "Downgrade the small-epsilon condition to a warning");
    sub->add_flag("--debug-dump", f.debug_dump, "Write the assembled system as CSV");
    sub->add_option("--problem", f.problem, "Builtin problem or fixture name");
    sub->add_option("--epsilon", f.epsilon, "Comma-separated perturbation parameters");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Shishkin-mesh solver for singularly perturbed reaction-diffusion systems", "shishkin-rd"};
    app.require_subcommand(1);
    Flags f;

    auto* validate = app.add_subcommand("validate", "Check the structural conditions on A and epsilon");
    auto* mesh = app.add_subcommand("mesh", "Build the piecewise-uniform mesh and write mesh.csv");
    auto* solve = app.add_subcommand("solve", "Solve the discrete problem and write solution.csv");
    auto* converge = app.add_subcommand("converge", "Error and order table over a doubling sequence of N");
    auto* sweep = app.add_subcommand("sweep", "Convergence tables over an epsilon grid plus the uniform series");
    auto* check = app.add_subcommand("check", "Run the invariant suites");
    for (auto* sub : {validate, mesh, solve, converge, sweep, check}) add_common(sub, f);
    for (auto* sub : {mesh, solve}) sub->add_option("-N,--intervals", f.N, "Number of mesh intervals");
    for (auto* sub : {converge, sweep}) {
        sub->add_option("--Ns", f.Ns, "Comma-separated doubling sequence of N");
        sub->add_option("--mode", f.mode, "exact or two_mesh");
    }
    converge->add_flag("--synthetic", f.synthetic, "Self-test the order computation on e_N = N^-2");
    check->add_option("--trials", f.trials, "Random trials for the stability suite");
    check->add_option("--fixture", f.fixtures, "Add a deliberately invalid fixture (a1-violation)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
    }

    try {
        const RunConfig c = make_config(f);
        if (*validate) return cmd_validate(c, out);
        if (*mesh) return cmd_mesh(c, out);
        if (*solve) return cmd_solve(c, out);
        if (*converge) return cmd_converge(c, f.synthetic, out);
        if (*sweep) return cmd_sweep(c, out);
        if (*check) return cmd_check(c, f, out);
    } catch (const ConfigError& e) {
        fmt::print(err, "config error: {}\n", e.what());
        return kExitUsage;
    } catch (const ValidationError& e) {
        fmt::print(err, "validation failed: {}\n", e.what());
        return kExitCheckFailed;
    } catch (const SingularBlockError& e) {
        fmt::print(err, "solve failed: {}\n", e.what());
        return kExitCheckFailed;
    } catch (const Error& e) {
        fmt::print(err, "error: {}\n", e.what());
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace shishkin::cli
