#include "shishkin/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>

#include <fmt/format.h>

namespace shishkin {

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

double parse_real(const std::string& s, std::size_t line, const std::string& key) {
    const std::string t = trim(s);
    double v = 0.0;
    const char* first = t.data();
    const char* last = t.data() + t.size();
    if (!t.empty() && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (t.empty() || ec != std::errc{} || ptr != last || !std::isfinite(v))
        throw ConfigError(line, fmt::format("line {}: key '{}': '{}' is not a real number", line, key, t));
    return v;
}

std::uint64_t parse_unsigned(const std::string& s, std::size_t line, const std::string& key) {
    const std::string t = trim(s);
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || ec != std::errc{} || ptr != t.data() + t.size())
        throw ConfigError(line, fmt::format("line {}: key '{}': '{}' is not a nonnegative integer", line, key, t));
    return v;
}

bool parse_bool(const std::string& s, std::size_t line, const std::string& key) {
    const std::string t = trim(s);
    if (t == "true" || t == "1" || t == "yes") return true;
    if (t == "false" || t == "0" || t == "no") return false;
    throw ConfigError(line, fmt::format("line {}: key '{}': '{}' is not a boolean", line, key, t));
}

std::vector<double> real_list(const std::string& s, std::size_t line, const std::string& key) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_real(item, line, key));
    if (out.empty()) throw ConfigError(line, fmt::format("line {}: key '{}': empty list", line, key));
    return out;
}

std::size_t index_part(const std::string& s, std::size_t line, const std::string& key) {
    const auto v = parse_unsigned(s, line, key);
    if (v == 0 || v > 64) throw ConfigError(line, fmt::format("line {}: key '{}': index out of range", line, key));
    return static_cast<std::size_t>(v);
}

}  // namespace

std::vector<double> parse_real_list(const std::string& text) { return real_list(text, 0, "list"); }

std::optional<OutputFormat> parse_format(std::string_view s) {
    if (s == "csv") return OutputFormat::Csv;
    if (s == "table") return OutputFormat::Table;
    if (s == "gnuplot") return OutputFormat::Gnuplot;
    return std::nullopt;
}

void set_config_value(RunConfig& c, const std::string& key, const std::string& value, std::size_t line) {
    static const std::regex a_key(R"(a\.(\d+)\.(\d+))");
    static const std::regex f_key(R"(f\.(\d+))");
    static const std::regex grid_key(R"(epsilon_grid\.(\d+))");
    std::smatch m;

    if (key == "problem") {
        c.problem = trim(value);
    } else if (key == "n") {
        c.n = index_part(value, line, key);
    } else if (key == "epsilon") {
        c.epsilon = real_list(value, line, key);
    } else if (key == "alpha") {
        if (trim(value) == "auto") {
            c.alpha_auto = true;
            c.alpha.reset();
        } else {
            c.alpha = parse_real(value, line, key);
            c.alpha_auto = false;
        }
    } else if (std::regex_match(key, m, a_key)) {
        c.a_entries[{index_part(m[1], line, key), index_part(m[2], line, key)}] = value;
    } else if (std::regex_match(key, m, f_key)) {
        c.f_entries[index_part(m[1], line, key)] = value;
    } else if (key == "u_left") {
        c.u_left = real_list(value, line, key);
    } else if (key == "u_right") {
        c.u_right = real_list(value, line, key);
    } else if (key == "N") {
        c.N = parse_unsigned(value, line, key);
    } else if (key == "Ns") {
        c.Ns.clear();
        std::stringstream ss(value);
        std::string item;
        while (std::getline(ss, item, ',')) c.Ns.push_back(parse_unsigned(item, line, key));
    } else if (key == "mode") {
        const std::string t = trim(value);
        if (t == "exact") c.mode = ErrorMode::Exact;
        else if (t == "two_mesh") c.mode = ErrorMode::TwoMesh;
        else throw ConfigError(line, fmt::format("line {}: mode must be 'exact' or 'two_mesh'", line));
    } else if (key == "epsilon_grid") {
        c.epsilon_grid.clear();
        std::stringstream ss(value);
        std::string item;
        while (std::getline(ss, item, ';')) c.epsilon_grid.push_back(real_list(item, line, key));
    } else if (std::regex_match(key, m, grid_key)) {
        c.epsilon_grid_components[index_part(m[1], line, key)] = real_list(value, line, key);
    } else if (key == "samples") {
        const auto v = parse_unsigned(value, line, key);
        if (v < 2 || v > 10'000'000) throw ConfigError(line, fmt::format("line {}: samples must be >= 2", line));
        c.samples = static_cast<int>(v);
    } else if (key == "seed") {
        c.seed = parse_unsigned(value, line, key);
    } else if (key == "trials") {
        c.trials = parse_unsigned(value, line, key);
    } else if (key == "growth_factor") {
        c.growth_factor = parse_real(value, line, key);
    } else if (key == "allow_large_epsilon") {
        c.allow_large_epsilon = parse_bool(value, line, key);
    } else if (key == "debug_dump") {
        c.debug_dump = parse_bool(value, line, key);
    } else if (key == "out") {
        c.out = trim(value);
    } else if (key == "format") {
        const auto f = parse_format(trim(value));
        if (!f) throw ConfigError(line, fmt::format("line {}: format must be csv, table or gnuplot", line));
        c.format = *f;
    } else {
        throw ConfigError(line, fmt::format("line {}: unknown key '{}'", line, key));
    }
}

RunConfig parse_config(const std::string& text) {
    RunConfig config;
    std::set<std::string> seen;
    std::stringstream ss(text);
    std::string raw;
    std::size_t line = 0;
    while (std::getline(ss, raw)) {
        ++line;
        // '#' inside a quoted value is kept.
        std::string content;
        bool quoted = false;
        for (char ch : raw) {
            if (ch == '"') quoted = !quoted;
            if (ch == '#' && !quoted) break;
            content += ch;
        }
        if (quoted) throw ConfigError(line, fmt::format("line {}: unterminated quote", line));
        content = trim(content);
        if (content.empty()) continue;
        const auto eq = content.find('=');
        if (eq == std::string::npos) throw ConfigError(line, fmt::format("line {}: expected 'key = value'", line));
        const std::string key = trim(content.substr(0, eq));
        std::string value = trim(content.substr(eq + 1));
        if (key.empty()) throw ConfigError(line, fmt::format("line {}: missing key", line));
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
        if (!seen.insert(key).second) throw ConfigError(line, fmt::format("line {}: duplicate key '{}'", line, key));
        set_config_value(config, key, value, line);
    }
    return config;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError(0, fmt::format("cannot open config file '{}'", path));
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

namespace {

Eigen::VectorXd to_vector(const std::vector<double>& v) {
    return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

NamedProblem custom_problem(const RunConfig& c) {
    std::size_t n = 0;
    if (c.n) n = *c.n;
    else if (c.epsilon) n = c.epsilon->size();
    else throw ConfigError(0, "custom problem needs 'n' or 'epsilon'");
    if (!c.epsilon) throw ConfigError(0, "custom problem needs 'epsilon'");

    NamedProblem out;
    out.name = "custom";
    out.description = "user-defined coefficients";
    Problem& p = out.problem;
    p.epsilon = *c.epsilon;
    p.a.entries.assign(n, std::vector<Expression>(n));
    p.f.entries.assign(n, std::vector<Expression>(1));
    for (const auto& [ij, text] : c.a_entries) {
        if (ij.first > n || ij.second > n)
            throw ConfigError(0, fmt::format("a.{}.{} is outside the {}x{} system", ij.first, ij.second, n, n));
        try {
            p.a.entries[ij.first - 1][ij.second - 1] = parse_expression(text);
        } catch (const InputError& e) {
            throw ConfigError(0, fmt::format("a.{}.{}: {}", ij.first, ij.second, e.what()));
        }
    }
    for (const auto& [i, text] : c.f_entries) {
        if (i > n) throw ConfigError(0, fmt::format("f.{} is outside the system of size {}", i, n));
        try {
            p.f.entries[i - 1][0] = parse_expression(text);
        } catch (const InputError& e) {
            throw ConfigError(0, fmt::format("f.{}: {}", i, e.what()));
        }
    }
    p.u_left = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
    p.u_right = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
    return out;
}

}  // namespace

NamedProblem resolve_problem(const RunConfig& c) {
    NamedProblem out;
    if (c.problem == "custom") {
        out = custom_problem(c);
    } else {
        if (!c.a_entries.empty() || !c.f_entries.empty())
            throw ConfigError(0, "coefficient keys a.i.j / f.i require problem = \"custom\"");
        try {
            out = builtin_problem(c.problem);
        } catch (const NotFoundError&) {
            try {
                out = fixture_problem(c.problem);
            } catch (const NotFoundError&) {
                throw ConfigError(0, fmt::format("unknown problem '{}'", c.problem));
            }
        }
        if (c.n && *c.n != out.problem.n())
            throw ConfigError(0, fmt::format("problem {} has n = {}, config says n = {}", c.problem,
                                             out.problem.n(), *c.n));
        if (c.epsilon) {
            if (c.epsilon->size() != out.problem.n())
                throw ConfigError(0, fmt::format("epsilon has {} entries, problem {} has n = {}", c.epsilon->size(),
                                                 c.problem, out.problem.n()));
            out.problem.epsilon = *c.epsilon;
        }
    }
    Problem& p = out.problem;
    const auto n = p.n();
    if (c.u_left) {
        if (c.u_left->size() != n) throw ConfigError(0, fmt::format("u_left needs {} entries", n));
        p.u_left = to_vector(*c.u_left);
    }
    if (c.u_right) {
        if (c.u_right->size() != n) throw ConfigError(0, fmt::format("u_right needs {} entries", n));
        p.u_right = to_vector(*c.u_right);
    }
    // A closed form belongs to the preset's boundary data only.
    if (c.u_left || c.u_right) out.exact.reset();
    if (c.alpha) p.alpha = *c.alpha;
    else if (c.alpha_auto || out.name == "custom") p.alpha = suggest_alpha(p, c.samples);
    return out;
}

std::vector<std::vector<double>> resolve_epsilon_grid(const RunConfig& c) {
    std::vector<std::vector<double>> grid = c.epsilon_grid;
    if (!c.epsilon_grid_components.empty()) {
        std::vector<std::vector<double>> per;
        std::size_t expected = 1;
        for (const auto& [k, values] : c.epsilon_grid_components) {
            if (k != expected++) throw ConfigError(0, "epsilon_grid.k keys must be numbered 1..n without gaps");
            per.push_back(values);
        }
        // Unordered tuples are kept so the sweep can report them as skipped.
        std::vector<std::vector<double>> product{{}};
        for (const auto& values : per) {
            std::vector<std::vector<double>> next;
            for (const auto& prefix : product)
                for (double v : values) {
                    auto t = prefix;
                    t.push_back(v);
                    next.push_back(std::move(t));
                }
            product = std::move(next);
        }
        grid.insert(grid.end(), product.begin(), product.end());
    }
    return grid;
}

}  // namespace shishkin
