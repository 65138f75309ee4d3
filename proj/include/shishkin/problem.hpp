#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "shishkin/terms.hpp"

namespace shishkin {

/// -E u'' + A(x) u = f(x) on (0,1) with Dirichlet data, E = diag(epsilon).
struct Problem {
    std::vector<double> epsilon;
    CoefficientSpec a;  ///< n x n
    CoefficientSpec f;  ///< n x 1
    Eigen::VectorXd u_left;
    Eigen::VectorXd u_right;
    double alpha = 0.0;

    std::size_t n() const noexcept { return epsilon.size(); }

    Eigen::MatrixXd a_at(double x) const { return evaluate_matrix(a, x); }
    Eigen::VectorXd f_at(double x) const { return evaluate_vector(f, x); }
};

/// Throws InputError unless all fields agree on n and alpha, epsilon are finite.
void check_shape(const Problem& p);

/// Copy of p with a different perturbation vector.
Problem with_epsilon(Problem p, std::vector<double> epsilon);

enum class Condition {
    Dominance,         ///< a_ii > sum_{j != i} |a_ij|
    OffDiagonalSign,   ///< a_ij <= 0 for i != j
    RowSum,            ///< 0 < alpha < min row sum
    SmallEpsilon,      ///< max sqrt(eps_i) <= sqrt(alpha) / 6
    EpsilonOrdering,   ///< eps strictly increasing
    EpsilonRange,      ///< eps_i in (0, 1]
};

std::string_view condition_name(Condition c);

struct ConditionResult {
    Condition condition;
    bool passed = true;
    /// Sample point where the condition is tightest; NaN for x-independent checks.
    double worst_x = 0.0;
    /// Margin at worst_x (negative or zero means violated), or offending value.
    double worst_value = 0.0;
    std::string detail;
};

struct ValidationReport {
    std::vector<ConditionResult> conditions;

    const ConditionResult& get(Condition c) const;

    /// True iff every condition the solver refuses to run without passes.
    /// SmallEpsilon is only blocking when allow_large_epsilon is false.
    bool solver_ready(bool allow_large_epsilon = false) const;
    bool all_passed() const;
};

inline constexpr int kDefaultSamples = 1001;

ValidationReport validate_problem(const Problem& p, int samples = kDefaultSamples);

/// 0.95 times the sampled minimum row sum of A. Throws ValidationError if
/// that minimum is not positive.
double suggest_alpha(const Problem& p, int samples = kDefaultSamples);

/// Closed-form solution u(x) of a preset, when one is known.
using ExactSolution = std::function<Eigen::VectorXd(double x, const std::vector<double>& epsilon)>;

struct NamedProblem {
    std::string name;
    std::string description;
    Problem problem;
    std::optional<ExactSolution> exact;
};

/// Presets Pconst, P1, P2, P3, in that order.
const std::vector<NamedProblem>& builtin_problems();

/// Throws NotFoundError for unknown names.
const NamedProblem& builtin_problem(std::string_view name);

/// Deliberately invalid problems for negative tests. Known: "a1-violation".
const NamedProblem& fixture_problem(std::string_view name);

}  // namespace shishkin
