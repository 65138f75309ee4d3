#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace shishkin {

/// Basis functions of the coefficient term algebra.
enum class Basis {
    Power,  ///< x^k, k a nonnegative integer
    Cos,    ///< cos(k*pi*x)
    Sin,    ///< sin(k*pi*x)
    Exp,    ///< exp(k*x), k real
};

struct Term {
    double coefficient = 0.0;
    Basis basis = Basis::Power;
    double k = 0.0;

    double operator()(double x) const;
    bool operator==(const Term&) const = default;
};

/// A finite sum of terms. The empty sum is the zero function.
class Expression {
public:
    Expression() = default;
    explicit Expression(std::vector<Term> terms) : terms_(std::move(terms)) {}

    static Expression constant(double c);

    double operator()(double x) const;
    const std::vector<Term>& terms() const noexcept { return terms_; }
    bool operator==(const Expression&) const = default;

private:
    std::vector<Term> terms_;
};

/// Parses the fixed grammar: `+`/`-` separated terms, each a signed decimal
/// coefficient optionally followed by `*basis`, or a bare basis. Bases are
/// `x`, `x^k`, `cos(k*pi*x)`, `sin(k*pi*x)` and `exp(k*x)`.
/// Throws InputError with the offending column on malformed input.
Expression parse_expression(std::string_view text);

/// Inverse of parse_expression; coefficients use 17 significant digits so
/// that parse_expression(to_string(e)) == e.
std::string to_string(const Expression& e);

/// Matrix (n x n, for A) or column (n x 1, for f) of expressions.
struct CoefficientSpec {
    std::vector<std::vector<Expression>> entries;

    std::size_t rows() const noexcept { return entries.size(); }
    std::size_t cols() const noexcept { return entries.empty() ? 0 : entries.front().size(); }

    bool operator==(const CoefficientSpec&) const = default;
};

Eigen::MatrixXd evaluate_matrix(const CoefficientSpec& spec, double x);

/// Evaluates a single-column spec as a vector.
Eigen::VectorXd evaluate_vector(const CoefficientSpec& spec, double x);

}  // namespace shishkin
