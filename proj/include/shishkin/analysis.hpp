#pragma once

#include <optional>
#include <string>
#include <vector>

#include "shishkin/problem.hpp"
#include "shishkin/solver.hpp"

namespace shishkin {

/// max over nodes and components of |U - u|.
double exact_error(const DiscreteSolution& sol, const ExactSolution& exact, const std::vector<double>& epsilon);

/// U^N against the solution on the mesh with the same tau and doubled
/// interval counts, compared at the N-mesh nodes.
double two_mesh_error(const Problem& p, std::size_t N, const SolveOptions& options = {});

struct ErrorRecord {
    std::size_t N = 0;
    double error = 0.0;
    /// log2(e_N / e_2N); absent for the last record.
    std::optional<double> order;
    /// Order after dividing out (ln N)^3: log2[(e_N / ln^3 N) / (e_2N / ln^3 2N)].
    std::optional<double> effective_order;
    /// Same with (ln N)^2.
    std::optional<double> effective_order_log2;
    /// e_N N^2 / (ln N)^3.
    double bound_constant = 0.0;
};

/// Builds records from per-N errors. Ns must double at every step.
std::vector<ErrorRecord> error_records(const std::vector<std::size_t>& Ns, const std::vector<double>& errors);

enum class ErrorMode { Exact, TwoMesh };

std::string_view mode_name(ErrorMode m);

/// Throws InputError for fewer than two N, N not doubling, or exact mode
/// without a closed-form solution.
std::vector<ErrorRecord> convergence_series(const Problem& p, const std::vector<std::size_t>& Ns, ErrorMode mode,
                                            const std::optional<ExactSolution>& exact = std::nullopt,
                                            const SolveOptions& options = {});

struct EpsilonSeries {
    std::vector<double> epsilon;
    std::vector<ErrorRecord> records;
    /// max bound_constant / bound_constant at the smallest N.
    double bound_growth = 1.0;
    bool flagged = false;
};

struct ConvergenceReport {
    std::string problem_id;
    ErrorMode mode = ErrorMode::TwoMesh;
    std::vector<std::size_t> Ns;
    std::vector<EpsilonSeries> series;
    std::vector<ErrorRecord> uniform;
    /// Grid entries that were skipped, with the reason.
    std::vector<std::string> notices;
};

struct SweepOptions {
    SolveOptions solve;
    /// Flag a series whose bound constant grows beyond this factor.
    double growth_factor = 1.5;
    /// 0 selects kernels::sweep_threads().
    int threads = 0;
};

/// Runs one convergence series per admissible epsilon vector. Entries that
/// are unsorted, coincident or fail validation are skipped with a notice.
/// Series run in parallel; results are ordered as in eps_grid.
ConvergenceReport epsilon_sweep(const Problem& base, std::string problem_id,
                                const std::vector<std::vector<double>>& eps_grid, const std::vector<std::size_t>& Ns,
                                ErrorMode mode, const std::optional<ExactSolution>& exact = std::nullopt,
                                const SweepOptions& options = {});

/// Cartesian product of per-component grids, keeping strictly increasing tuples.
std::vector<std::vector<double>> epsilon_grid_product(const std::vector<std::vector<double>>& per_component);

}  // namespace shishkin
