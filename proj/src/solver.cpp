#include "shishkin/solver.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <fmt/format.h>

#include "shishkin/error.hpp"
#include "shishkin/kernels.hpp"

namespace shishkin {

namespace {

Eigen::PartialPivLU<Eigen::MatrixXd> factor_pivot(const Eigen::MatrixXd& block, std::size_t row) {
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(block);
    const double rcond = lu.rcond();
    if (!(rcond > 1.0 / kMaxBlockCondition)) {
        const double cond = rcond > 0.0 ? 1.0 / rcond : std::numeric_limits<double>::infinity();
        throw SingularBlockError(row, cond,
                                 fmt::format("near-singular pivot block at row j = {} (condition estimate {:.3g}); "
                                             "check the sign and row-sum conditions on A",
                                             row, cond));
    }
    return lu;
}

}  // namespace

MeshFunction solve_block_tridiagonal(const BlockTridiagonalSystem& sys) {
    const std::size_t rows = sys.rows();
    const auto n = static_cast<Eigen::Index>(sys.n);
    if (rows == 0) return MeshFunction(0, n);

    std::vector<Eigen::MatrixXd> upper(rows);
    std::vector<Eigen::VectorXd> reduced(rows);

    {
        const auto lu = factor_pivot(sys.diag[0], 1);
        upper[0] = lu.solve(sys.super[0]);
        reduced[0] = lu.solve(sys.rhs[0]);
    }
    for (std::size_t r = 1; r < rows; ++r) {
        const Eigen::MatrixXd pivot = sys.diag[r] - sys.sub[r] * upper[r - 1];
        const auto lu = factor_pivot(pivot, r + 1);
        if (r + 1 < rows) upper[r] = lu.solve(sys.super[r]);
        reduced[r] = lu.solve(sys.rhs[r] - sys.sub[r] * reduced[r - 1]);
    }

    MeshFunction u(static_cast<Eigen::Index>(rows), n);
    u.row(static_cast<Eigen::Index>(rows - 1)) = reduced[rows - 1].transpose();
    for (std::size_t r = rows - 1; r-- > 0;) {
        const auto i = static_cast<Eigen::Index>(r);
        u.row(i) = (reduced[r] - upper[r] * u.row(i + 1).transpose()).transpose();
    }
    return u;
}

void require_solvable(const Problem& p, const SolveOptions& options) {
    const ValidationReport report = validate_problem(p, options.samples);
    if (report.solver_ready(options.allow_large_epsilon)) return;
    std::string failed;
    for (const auto& c : report.conditions) {
        if (c.passed || (c.condition == Condition::SmallEpsilon && options.allow_large_epsilon)) continue;
        failed += fmt::format("{}{} ({})", failed.empty() ? "" : "; ", condition_name(c.condition), c.detail);
    }
    throw ValidationError("problem rejected: " + failed);
}

DiscreteSolution solve_problem(const Problem& p, std::size_t N, const SolveOptions& options) {
    if (options.validate) require_solvable(p, options);
    const TransitionParams tp = compute_transitions(p.epsilon, p.alpha, N);
    SolveOptions inner = options;
    inner.validate = false;
    return solve_on_mesh(p, build_mesh(tp), inner);
}

DiscreteSolution solve_on_mesh(const Problem& p, const ShishkinMesh& mesh, const SolveOptions& options) {
    if (options.validate) require_solvable(p, options);
    const BlockTridiagonalSystem sys = assemble(p, mesh);
    const MeshFunction interior = solve_block_tridiagonal(sys);

    DiscreteSolution sol;
    sol.mesh = mesh;
    const auto N = static_cast<Eigen::Index>(sys.N);
    sol.values.resize(N + 1, static_cast<Eigen::Index>(sys.n));
    sol.values.row(0) = p.u_left.transpose();
    sol.values.middleRows(1, N - 1) = interior;
    sol.values.row(N) = p.u_right.transpose();
    sol.residual_norm = truncation_residual(sys, sol.values).cwiseAbs().maxCoeff();
    return sol;
}

namespace {

void guard_dense(const BlockTridiagonalSystem& sys) {
    const std::size_t size = sys.rows() * sys.n;
    if (size > kMaxDenseSize)
        throw InputError(fmt::format("dense check needs (N-1) n <= {}, got {}", kMaxDenseSize, size));
}

double node_norm(const MeshFunction& psi, Eigen::Index j) { return psi.row(j).cwiseAbs().maxCoeff(); }

}  // namespace

CheckReport check_discrete_max_principle(const BlockTridiagonalSystem& sys) {
    guard_dense(sys);
    const Eigen::MatrixXd inv = kernels::parallel::dense_inverse(to_dense(sys));
    CheckReport report;
    report.name = "discrete-max-principle";
    report.trials = 1;
    report.min_value = inv.minCoeff();
    report.max_value = inv.maxCoeff();
    report.passed = report.min_value >= -1e-10 * report.max_value;
    report.violations = report.passed ? 0 : 1;
    report.detail = fmt::format("inverse of {0}x{0} matrix: min entry {1:.6g}, max entry {2:.6g}", inv.rows(),
                                report.min_value, report.max_value);
    return report;
}

CheckReport check_discrete_stability(const BlockTridiagonalSystem& sys, std::size_t trials, double alpha,
                                     std::uint64_t seed) {
    guard_dense(sys);
    if (!(alpha > 0.0)) throw InputError("check_discrete_stability: alpha must be positive");
    CheckReport report;
    report.name = "discrete-stability";
    report.trials = trials;
    report.min_value = std::numeric_limits<double>::infinity();  // smallest slack bound - ||Psi||

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uniform(-1.0, 1.0);
    const auto N = static_cast<Eigen::Index>(sys.N);
    const auto n = static_cast<Eigen::Index>(sys.n);
    auto draw = [&](Eigen::Index rows) {
        MeshFunction m(rows, n);
        for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = uniform(rng);
        return m;
    };

    for (std::size_t t = 0; t < trials; ++t) {
        MeshFunction psi = draw(N + 1);
        if (t % 2 == 1) {
            BlockTridiagonalSystem data = sys;
            data.left_bc = psi.row(0).transpose();
            data.right_bc = psi.row(N).transpose();
            const MeshFunction g = draw(N - 1);
            for (std::size_t r = 0; r < data.rows(); ++r) data.rhs[r] = g.row(static_cast<Eigen::Index>(r)).transpose();
            data.rhs.front() -= data.sub.front() * data.left_bc;
            data.rhs.back() -= data.super.back() * data.right_bc;
            psi.middleRows(1, N - 1) = solve_block_tridiagonal(data);
        }
        const MeshFunction lpsi = kernels::parallel::apply_operator(sys, psi);
        const double bound =
            std::max({node_norm(psi, 0), node_norm(psi, N), lpsi.cwiseAbs().maxCoeff() / alpha});
        const double largest = psi.cwiseAbs().maxCoeff();
        report.min_value = std::min(report.min_value, bound - largest);
        report.max_value = std::max(report.max_value, largest / bound);
        if (largest > bound * (1.0 + 1e-12)) ++report.violations;
    }
    report.passed = report.violations == 0;
    report.detail = fmt::format("{} trials, {} violations, max ||Psi|| / bound = {:.6g}", trials, report.violations,
                                report.max_value);
    return report;
}

}  // namespace shishkin
