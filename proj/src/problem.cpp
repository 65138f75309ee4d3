#include "shishkin/problem.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "shishkin/error.hpp"

namespace shishkin {

void check_shape(const Problem& p) {
    const std::size_t n = p.n();
    if (n == 0) throw InputError("problem has no equations (epsilon is empty)");
    if (p.a.rows() != n) throw InputError(fmt::format("A has {} rows, expected {}", p.a.rows(), n));
    for (std::size_t i = 0; i < n; ++i)
        if (p.a.entries[i].size() != n)
            throw InputError(fmt::format("A row {} has {} entries, expected {}", i + 1,
                                         p.a.entries[i].size(), n));
    if (p.f.rows() != n || p.f.cols() != 1)
        throw InputError(fmt::format("f must have {} components", n));
    if (static_cast<std::size_t>(p.u_left.size()) != n || static_cast<std::size_t>(p.u_right.size()) != n)
        throw InputError(fmt::format("boundary vectors must have {} components", n));
    for (double e : p.epsilon)
        if (!std::isfinite(e)) throw InputError("epsilon entries must be finite");
    if (!std::isfinite(p.alpha)) throw InputError("alpha must be finite");
}

Problem with_epsilon(Problem p, std::vector<double> epsilon) {
    if (epsilon.size() != p.n())
        throw InputError(fmt::format("epsilon has {} entries, problem has n = {}", epsilon.size(), p.n()));
    p.epsilon = std::move(epsilon);
    return p;
}

std::string_view condition_name(Condition c) {
    switch (c) {
    case Condition::Dominance: return "a1-dominance";
    case Condition::OffDiagonalSign: return "a1-sign";
    case Condition::RowSum: return "a2-row-sum";
    case Condition::SmallEpsilon: return "a3-small-epsilon";
    case Condition::EpsilonOrdering: return "epsilon-ordering";
    case Condition::EpsilonRange: return "epsilon-range";
    }
    return "unknown";
}

const ConditionResult& ValidationReport::get(Condition c) const {
    for (const auto& r : conditions)
        if (r.condition == c) return r;
    throw NotFoundError(fmt::format("condition {} not in report", condition_name(c)));
}

bool ValidationReport::solver_ready(bool allow_large_epsilon) const {
    for (const auto& r : conditions) {
        if (r.passed) continue;
        if (r.condition == Condition::SmallEpsilon && allow_large_epsilon) continue;
        return false;
    }
    return true;
}

bool ValidationReport::all_passed() const {
    return std::all_of(conditions.begin(), conditions.end(), [](const auto& r) { return r.passed; });
}

namespace {

double sample_point(int s, int samples) {
    return static_cast<double>(s) / static_cast<double>(samples - 1);
}

struct RowSumMin {
    double value = std::numeric_limits<double>::infinity();
    double x = 0.0;
};

RowSumMin min_row_sum(const Problem& p, int samples) {
    RowSumMin best;
    for (int s = 0; s < samples; ++s) {
        const double x = sample_point(s, samples);
        const Eigen::MatrixXd a = p.a_at(x);
        const double m = a.rowwise().sum().minCoeff();
        if (m < best.value) best = {m, x};
    }
    return best;
}

}  // namespace

ValidationReport validate_problem(const Problem& p, int samples) {
    if (samples < 2) throw InputError("validate_problem: samples must be >= 2");
    check_shape(p);
    const auto n = static_cast<Eigen::Index>(p.n());
    const double nan = std::numeric_limits<double>::quiet_NaN();

    ConditionResult dominance{Condition::Dominance, true, 0.0, std::numeric_limits<double>::infinity(), {}};
    ConditionResult sign{Condition::OffDiagonalSign, true, 0.0, -std::numeric_limits<double>::infinity(), {}};
    ConditionResult rowsum{Condition::RowSum, true, 0.0, 0.0, {}};
    int dominance_row = 0;
    std::pair<int, int> sign_entry{0, 0};

    for (int s = 0; s < samples; ++s) {
        const double x = sample_point(s, samples);
        const Eigen::MatrixXd a = p.a_at(x);
        for (Eigen::Index i = 0; i < n; ++i) {
            double off = 0.0;
            for (Eigen::Index j = 0; j < n; ++j) {
                if (j == i) continue;
                off += std::abs(a(i, j));
                if (a(i, j) > sign.worst_value) {
                    sign.worst_value = a(i, j);
                    sign.worst_x = x;
                    sign_entry = {static_cast<int>(i), static_cast<int>(j)};
                }
            }
            const double margin = a(i, i) - off;
            if (margin < dominance.worst_value) {
                dominance.worst_value = margin;
                dominance.worst_x = x;
                dominance_row = static_cast<int>(i);
            }
        }
    }
    dominance.passed = dominance.worst_value > 0.0;
    dominance.detail = fmt::format("min a_ii - sum|a_ij| = {:.6g} (row {}, x = {:.6g})",
                                   dominance.worst_value, dominance_row + 1, dominance.worst_x);
    if (n == 1) {
        sign.worst_value = 0.0;
        sign.worst_x = nan;
        sign.detail = "no off-diagonal entries";
    } else {
        sign.passed = sign.worst_value <= 0.0;
        sign.detail = fmt::format("max off-diagonal a_{}{} = {:.6g} at x = {:.6g}", sign_entry.first + 1,
                                  sign_entry.second + 1, sign.worst_value, sign.worst_x);
    }

    const RowSumMin m = min_row_sum(p, samples);
    rowsum.worst_x = m.x;
    rowsum.worst_value = m.value - p.alpha;
    rowsum.passed = p.alpha > 0.0 && p.alpha < m.value;
    rowsum.detail = fmt::format("alpha = {:.6g}, min row sum = {:.6g} at x = {:.6g}", p.alpha, m.value, m.x);

    ConditionResult small{Condition::SmallEpsilon, true, nan, 0.0, {}};
    const double max_eps = *std::max_element(p.epsilon.begin(), p.epsilon.end());
    const double bound = p.alpha > 0.0 ? std::sqrt(p.alpha) / 6.0 : 0.0;
    small.worst_value = bound - std::sqrt(std::max(max_eps, 0.0));
    small.passed = small.worst_value >= 0.0;
    small.detail = fmt::format("max sqrt(eps) = {:.6g}, sqrt(alpha)/6 = {:.6g}", std::sqrt(std::max(max_eps, 0.0)),
                               bound);

    ConditionResult ordering{Condition::EpsilonOrdering, true, nan, 0.0, "strictly increasing"};
    for (std::size_t i = 1; i < p.n(); ++i) {
        if (!(p.epsilon[i - 1] < p.epsilon[i])) {
            ordering.passed = false;
            ordering.worst_value = p.epsilon[i] - p.epsilon[i - 1];
            ordering.detail = fmt::format("eps_{} = {:.6g} is not below eps_{} = {:.6g}", i, p.epsilon[i - 1],
                                          i + 1, p.epsilon[i]);
            break;
        }
    }

    ConditionResult range{Condition::EpsilonRange, true, nan, 0.0, "all eps in (0, 1]"};
    for (std::size_t i = 0; i < p.n(); ++i) {
        if (!(p.epsilon[i] > 0.0 && p.epsilon[i] <= 1.0)) {
            range.passed = false;
            range.worst_value = p.epsilon[i];
            range.detail = fmt::format("eps_{} = {:.6g} outside (0, 1]", i + 1, p.epsilon[i]);
            break;
        }
    }

    return ValidationReport{{dominance, sign, rowsum, small, ordering, range}};
}

double suggest_alpha(const Problem& p, int samples) {
    if (samples < 2) throw InputError("suggest_alpha: samples must be >= 2");
    check_shape(p);
    const RowSumMin m = min_row_sum(p, samples);
    if (!(m.value > 0.0))
        throw ValidationError(fmt::format("minimum row sum {:.6g} at x = {:.6g} is not positive; no alpha exists",
                                          m.value, m.x));
    return 0.95 * m.value;
}

namespace {

Expression expr(std::string_view text) { return parse_expression(text); }

Eigen::VectorXd vec(std::initializer_list<double> v) {
    Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
    Eigen::Index i = 0;
    for (double x : v) out(i++) = x;
    return out;
}

// u(x) = 1 - (exp(-x/sqrt(eps)) + exp(-(1-x)/sqrt(eps))) / (1 + exp(-1/sqrt(eps)))
Eigen::VectorXd scalar_layer_solution(double x, const std::vector<double>& eps) {
    const double r = std::sqrt(eps.at(0));
    const double layers = std::exp(-x / r) + std::exp(-(1.0 - x) / r);
    return vec({1.0 - layers / (1.0 + std::exp(-1.0 / r))});
}

std::vector<NamedProblem> make_builtins() {
    std::vector<NamedProblem> out;

    Problem pconst;
    pconst.epsilon = {1e-6};
    pconst.a.entries = {{expr("1")}};
    pconst.f.entries = {{expr("1")}};
    pconst.u_left = vec({1.0});
    pconst.u_right = vec({1.0});
    pconst.alpha = 0.95;
    out.push_back({"Pconst", "scalar, A = 1, f = 1, u = 1 at both ends; exact solution u = 1", pconst,
                   ExactSolution([](double, const std::vector<double>&) { return vec({1.0}); })});

    Problem p1;
    p1.epsilon = {1e-6};
    p1.a.entries = {{expr("1")}};
    p1.f.entries = {{expr("1")}};
    p1.u_left = vec({0.0});
    p1.u_right = vec({0.0});
    p1.alpha = 0.95;
    out.push_back({"P1", "scalar, A = 1, f = 1, zero boundary data; closed-form two-layer solution", p1,
                   ExactSolution(scalar_layer_solution)});

    Problem p2;
    p2.epsilon = {1e-6, 1e-2};
    p2.a.entries = {{expr("2"), expr("-1")}, {expr("-1"), expr("2")}};
    p2.f.entries = {{expr("1")}, {expr("1")}};
    p2.u_left = vec({0.0, 0.0});
    p2.u_right = vec({0.0, 0.0});
    p2.alpha = 0.95;
    out.push_back({"P2", "constant 2x2 coupling, f = (1, 1), zero boundary data", p2, std::nullopt});

    Problem p3;
    p3.epsilon = {1e-6, 1e-2};
    p3.a.entries = {{expr("2 + x"), expr("-1")}, {expr("-1"), expr("2 + x^2")}};
    p3.f.entries = {{expr("exp(x)")}, {expr("1 + x")}};
    p3.u_left = vec({0.0, 0.0});
    p3.u_right = vec({0.0, 0.0});
    p3.alpha = 0.95;
    out.push_back({"P3", "variable 2x2 coupling, f = (e^x, 1 + x), zero boundary data", p3, std::nullopt});

    return out;
}

std::vector<NamedProblem> make_fixtures() {
    std::vector<NamedProblem> out;
    Problem bad;
    bad.epsilon = {1e-6, 1e-2};
    bad.a.entries = {{expr("2"), expr("1")}, {expr("1"), expr("2")}};
    bad.f.entries = {{expr("1")}, {expr("1")}};
    bad.u_left = vec({0.0, 0.0});
    bad.u_right = vec({0.0, 0.0});
    bad.alpha = 0.95;
    out.push_back({"a1-violation", "positive off-diagonal coupling, violates the sign condition", bad,
                   std::nullopt});
    return out;
}

const NamedProblem& lookup(const std::vector<NamedProblem>& list, std::string_view name, std::string_view kind) {
    for (const auto& p : list)
        if (p.name == name) return p;
    throw NotFoundError(fmt::format("unknown {} '{}'", kind, name));
}

}  // namespace

const std::vector<NamedProblem>& builtin_problems() {
    static const std::vector<NamedProblem> presets = make_builtins();
    return presets;
}

const NamedProblem& builtin_problem(std::string_view name) {
    return lookup(builtin_problems(), name, "builtin problem");
}

const NamedProblem& fixture_problem(std::string_view name) {
    static const std::vector<NamedProblem> fixtures = make_fixtures();
    return lookup(fixtures, name, "fixture");
}

}  // namespace shishkin
