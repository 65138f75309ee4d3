#include "shishkin/terms.hpp"

#include <charconv>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "shishkin/error.hpp"

namespace shishkin {

double Term::operator()(double x) const {
    switch (basis) {
    case Basis::Power: {
        double value = 1.0;
        for (int i = 0; i < static_cast<int>(k); ++i) value *= x;
        return coefficient * value;
    }
    case Basis::Cos:
        return coefficient * std::cos(k * std::numbers::pi * x);
    case Basis::Sin:
        return coefficient * std::sin(k * std::numbers::pi * x);
    case Basis::Exp:
        return coefficient * std::exp(k * x);
    }
    return 0.0;
}

Expression Expression::constant(double c) {
    return Expression({Term{c, Basis::Power, 0.0}});
}

double Expression::operator()(double x) const {
    double sum = 0.0;
    for (const auto& t : terms_) sum += t(x);
    return sum;
}

namespace {

class TermParser {
public:
    explicit TermParser(std::string_view text) : text_(text) {}

    Expression parse() {
        std::vector<Term> terms;
        skip_ws();
        if (at_end()) fail("empty expression");
        double sign = 1.0;
        if (peek() == '+' || peek() == '-') sign = take() == '-' ? -1.0 : 1.0;
        terms.push_back(term(sign));
        skip_ws();
        while (!at_end()) {
            const char c = take();
            if (c != '+' && c != '-') fail("expected '+' or '-' between terms");
            terms.push_back(term(c == '-' ? -1.0 : 1.0));
            skip_ws();
        }
        return Expression(std::move(terms));
    }

private:
    Term term(double sign) {
        skip_ws();
        // "+ -1" is accepted so that any signed decimal can follow a separator.
        if (!at_end() && (peek() == '+' || peek() == '-')) {
            if (take() == '-') sign = -sign;
            skip_ws();
        }
        if (at_end()) fail("expected a term");
        if (is_number_start(peek())) {
            const double c = number();
            skip_ws();
            if (!at_end() && peek() == '*') {
                take();
                Term t = basis();
                t.coefficient = sign * c;
                return t;
            }
            return Term{sign * c, Basis::Power, 0.0};
        }
        Term t = basis();
        t.coefficient = sign;
        return t;
    }

    Term basis() {
        skip_ws();
        if (consume("cos")) return trig(Basis::Cos);
        if (consume("sin")) return trig(Basis::Sin);
        if (consume("exp")) {
            expect('(');
            double k = 1.0;
            skip_ws();
            if (!at_end() && peek() != 'x') {
                double s = 1.0;
                if (peek() == '-' || peek() == '+') s = take() == '-' ? -1.0 : 1.0;
                k = s * number();
                expect('*');
            }
            expect('x');
            expect(')');
            return Term{1.0, Basis::Exp, k};
        }
        if (consume("x")) {
            skip_ws();
            if (!at_end() && peek() == '^') {
                take();
                skip_ws();
                const std::size_t start = pos_;
                const double k = number();
                if (k < 0.0 || k != std::floor(k) || k > 64.0) {
                    pos_ = start;
                    fail("power must be an integer in [0, 64]");
                }
                return Term{1.0, Basis::Power, k};
            }
            return Term{1.0, Basis::Power, 1.0};
        }
        fail("expected x, x^k, cos(k*pi*x), sin(k*pi*x) or exp(k*x)");
    }

    Term trig(Basis b) {
        expect('(');
        skip_ws();
        double k = 1.0;
        if (!at_end() && is_number_start(peek())) {
            k = number();
            expect('*');
        }
        skip_ws();
        if (!consume("pi")) fail("expected 'pi'");
        expect('*');
        expect('x');
        expect(')');
        return Term{1.0, b, k};
    }

    double number() {
        skip_ws();
        double value = 0.0;
        const char* first = text_.data() + pos_;
        const char* last = text_.data() + text_.size();
        auto [ptr, ec] = std::from_chars(first, last, value);
        if (ec != std::errc{} || ptr == first) fail("expected a decimal number");
        if (!std::isfinite(value)) fail("number is not finite");
        pos_ += static_cast<std::size_t>(ptr - first);
        return value;
    }

    static bool is_number_start(char c) { return (c >= '0' && c <= '9') || c == '.'; }

    bool consume(std::string_view word) {
        skip_ws();
        if (text_.substr(pos_, word.size()) == word) {
            pos_ += word.size();
            return true;
        }
        return false;
    }

    void expect(char c) {
        skip_ws();
        if (at_end() || peek() != c) fail(fmt::format("expected '{}'", c));
        ++pos_;
    }

    void skip_ws() {
        while (!at_end() && (peek() == ' ' || peek() == '\t')) ++pos_;
    }
    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return text_[pos_]; }
    char take() { return text_[pos_++]; }

    [[noreturn]] void fail(const std::string& msg) const {
        throw InputError(fmt::format("term syntax error at column {}: {} in \"{}\"", pos_ + 1, msg,
                                     text_));
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

std::string format_number(double v) { return fmt::format("{:.17g}", v); }

std::string format_basis(const Term& t) {
    switch (t.basis) {
    case Basis::Power:
        if (t.k == 0.0) return {};
        if (t.k == 1.0) return "*x";
        return fmt::format("*x^{}", static_cast<int>(t.k));
    case Basis::Cos:
        return fmt::format("*cos({}*pi*x)", format_number(t.k));
    case Basis::Sin:
        return fmt::format("*sin({}*pi*x)", format_number(t.k));
    case Basis::Exp:
        return fmt::format("*exp({}*x)", format_number(t.k));
    }
    return {};
}

}  // namespace

Expression parse_expression(std::string_view text) { return TermParser(text).parse(); }

std::string to_string(const Expression& e) {
    if (e.terms().empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& t : e.terms()) {
        const bool negative = std::signbit(t.coefficient);
        if (first) {
            if (negative) out += '-';
        } else {
            out += negative ? " - " : " + ";
        }
        out += format_number(std::abs(t.coefficient));
        out += format_basis(t);
        first = false;
    }
    return out;
}

Eigen::MatrixXd evaluate_matrix(const CoefficientSpec& spec, double x) {
    Eigen::MatrixXd m(spec.rows(), spec.cols());
    for (std::size_t i = 0; i < spec.rows(); ++i)
        for (std::size_t j = 0; j < spec.cols(); ++j)
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = spec.entries[i][j](x);
    return m;
}

Eigen::VectorXd evaluate_vector(const CoefficientSpec& spec, double x) {
    if (spec.cols() != 1) throw InputError("evaluate_vector: spec must have exactly one column");
    Eigen::VectorXd v(spec.rows());
    for (std::size_t i = 0; i < spec.rows(); ++i) v(static_cast<Eigen::Index>(i)) = spec.entries[i][0](x);
    return v;
}

}  // namespace shishkin
