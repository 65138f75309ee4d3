#include <cstring>
#include <random>

#include <gtest/gtest.h>

#include "shishkin/error.hpp"
#include "shishkin/terms.hpp"

namespace shishkin {
namespace {

CoefficientSpec spec(std::vector<std::vector<std::string>> rows) {
    CoefficientSpec s;
    for (const auto& row : rows) {
        std::vector<Expression> r;
        for (const auto& t : row) r.push_back(parse_expression(t));
        s.entries.push_back(std::move(r));
    }
    return s;
}

TEST(EvaluateMatrix, ConstantEntry) {
    const auto m = evaluate_matrix(spec({{"2"}}), 0.5);
    ASSERT_EQ(m.rows(), 1);
    EXPECT_EQ(m(0, 0), 2.0);
}

TEST(EvaluateMatrix, PowerBasisAtZero) {
    EXPECT_EQ(evaluate_matrix(spec({{"1 + x^2"}}), 0.0)(0, 0), 1.0);
}

TEST(EvaluateMatrix, RowWithLinearEntry) {
    const auto m = evaluate_matrix(spec({{"2", "-1 + 0.5*x"}}), 1.0);
    EXPECT_EQ(m(0, 0), 2.0);
    EXPECT_DOUBLE_EQ(m(0, 1), -0.5);
}

TEST(EvaluateMatrix, Deterministic) {
    const auto s = spec({{"2 + cos(3*pi*x) - 0.25*sin(pi*x)", "exp(-2*x) + x^5"}});
    for (double x : {0.0, 0.123456789, 0.5, 1.0}) {
        const auto a = evaluate_matrix(s, x);
        const auto b = evaluate_matrix(s, x);
        EXPECT_EQ(0, std::memcmp(a.data(), b.data(), sizeof(double) * 2));
    }
}

TEST(ParseExpression, Bases) {
    EXPECT_DOUBLE_EQ(parse_expression("x")(0.3), 0.3);
    EXPECT_DOUBLE_EQ(parse_expression("x^3")(0.5), 0.125);
    EXPECT_NEAR(parse_expression("cos(2*pi*x)")(0.5), -1.0, 1e-15);
    EXPECT_NEAR(parse_expression("sin(pi*x)")(0.5), 1.0, 1e-15);
    EXPECT_NEAR(parse_expression("exp(x)")(1.0), std::exp(1.0), 1e-15);
    EXPECT_NEAR(parse_expression("3*exp(-0.5*x)")(2.0), 3.0 * std::exp(-1.0), 1e-15);
    EXPECT_DOUBLE_EQ(parse_expression("-1 + 0.5*x")(1.0), -0.5);
    EXPECT_DOUBLE_EQ(parse_expression("2 - x + -1e-1*x^2")(1.0), 0.9);
}

TEST(ParseExpression, RejectsMalformed) {
    for (const char* bad : {"", "2x", "x^-1", "x^1.5", "cos(2*x)", "1 +", "sin(pi*x", "y", "1 ++ 2 3", "nan"})
        EXPECT_THROW(parse_expression(bad), InputError) << bad;
}

TEST(ParseExpression, ErrorNamesColumn) {
    try {
        parse_expression("1 + 2*q");
        FAIL();
    } catch (const InputError& e) {
        EXPECT_NE(std::string(e.what()).find("column 7"), std::string::npos) << e.what();
    }
}

// Random term lists survive to_string -> parse_expression unchanged.
TEST(ParseExpression, RoundTripProperty) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> coeff(-1e3, 1e3);
    std::uniform_int_distribution<int> basis(0, 3), degree(0, 6), count(1, 5);
    for (int trial = 0; trial < 500; ++trial) {
        std::vector<Term> terms;
        for (int t = count(rng); t > 0; --t) {
            const auto b = static_cast<Basis>(basis(rng));
            const double k = b == Basis::Power ? degree(rng) : (b == Basis::Exp ? coeff(rng) / 100.0 : degree(rng));
            terms.push_back({coeff(rng), b, k});
        }
        const Expression e(terms);
        EXPECT_EQ(parse_expression(to_string(e)), e) << to_string(e);
    }
}

}  // namespace
}  // namespace shishkin
