#include "shishkin/io.hpp"

#include <fmt/format.h>
#include <fmt/ostream.h>

namespace shishkin::io {

std::string format_value(double v) { return fmt::format("{:.17g}", v); }

namespace {

std::string optional_value(const std::optional<double>& v, OutputFormat format) {
    if (v) return format_value(*v);
    return format == OutputFormat::Gnuplot ? "NaN" : "";
}

char separator(OutputFormat format) { return format == OutputFormat::Gnuplot ? ' ' : ','; }

void header(std::ostream& out, OutputFormat format, std::string_view columns) {
    if (format == OutputFormat::Gnuplot) {
        std::string line(columns);
        for (auto& ch : line)
            if (ch == ',') ch = ' ';
        out << "# " << line << '\n';
    } else {
        out << columns << '\n';
    }
}

}  // namespace

void write_mesh_csv(std::ostream& out, const ShishkinMesh& mesh) {
    out << "j,x_j,spacing_left\n";
    for (std::size_t j = 0; j < mesh.points.size(); ++j)
        out << j << ',' << format_value(mesh.points[j]) << ',' << format_value(j == 0 ? 0.0 : mesh.spacing(j))
            << '\n';
}

void write_solution_csv(std::ostream& out, const DiscreteSolution& sol) {
    out << "j,x";
    for (Eigen::Index k = 0; k < sol.values.cols(); ++k) out << ",U_" << k + 1;
    out << '\n';
    for (std::size_t j = 0; j < sol.mesh.points.size(); ++j) {
        out << j << ',' << format_value(sol.mesh.points[j]);
        for (Eigen::Index k = 0; k < sol.values.cols(); ++k)
            out << ',' << format_value(sol.values(static_cast<Eigen::Index>(j), k));
        out << '\n';
    }
}

void write_system_csv(std::ostream& out, const BlockTridiagonalSystem& sys) {
    out << "j,block,row,col,value\n";
    auto dump = [&](std::size_t j, std::string_view name, const Eigen::MatrixXd& m) {
        for (Eigen::Index r = 0; r < m.rows(); ++r)
            for (Eigen::Index c = 0; c < m.cols(); ++c)
                out << j << ',' << name << ',' << r + 1 << ',' << c + 1 << ',' << format_value(m(r, c)) << '\n';
    };
    for (std::size_t r = 0; r < sys.rows(); ++r) {
        dump(r + 1, "sub", sys.sub[r]);
        dump(r + 1, "diag", sys.diag[r]);
        dump(r + 1, "super", sys.super[r]);
        dump(r + 1, "rhs", sys.rhs[r]);
    }
}

void write_series(std::ostream& out, const ConvergenceReport& report, OutputFormat format) {
    header(out, format, "eps_id,N,error,order,effective_order,bound_constant");
    const char sep = separator(format);
    for (std::size_t id = 0; id < report.series.size(); ++id)
        for (const auto& r : report.series[id].records)
            out << id << sep << r.N << sep << format_value(r.error) << sep << optional_value(r.order, format) << sep
                << optional_value(r.effective_order, format) << sep << format_value(r.bound_constant) << '\n';
}

void write_uniform(std::ostream& out, const ConvergenceReport& report, OutputFormat format) {
    header(out, format, "N,uniform_error,uniform_order");
    const char sep = separator(format);
    for (const auto& r : report.uniform)
        out << r.N << sep << format_value(r.error) << sep << optional_value(r.order, format) << '\n';
}

void write_epsilon_index(std::ostream& out, const ConvergenceReport& report, OutputFormat format) {
    const std::size_t n = report.series.empty() ? 0 : report.series.front().epsilon.size();
    std::string cols = "eps_id";
    for (std::size_t k = 0; k < n; ++k) cols += fmt::format(",eps_{}", k + 1);
    header(out, format, cols);
    const char sep = separator(format);
    for (std::size_t id = 0; id < report.series.size(); ++id) {
        out << id;
        for (double e : report.series[id].epsilon) out << sep << format_value(e);
        out << '\n';
    }
}

void write_table(std::ostream& out, const std::vector<ErrorRecord>& records, bool exact) {
    auto opt = [](const std::optional<double>& v) { return v ? fmt::format("{:8.4f}", *v) : std::string(8, ' '); };
    fmt::print(out, "{:>8}  {:>14}  {:>8}  {:>8}  {:>8}  {:>12}\n", "N", exact ? "exact_error" : "two_mesh_diff",
               "order", "eff(ln3)", "eff(ln2)", "C_N");
    for (const auto& r : records)
        fmt::print(out, "{:>8}  {:>14.6e}  {}  {}  {}  {:>12.6e}\n", r.N, r.error, opt(r.order),
                   opt(r.effective_order), opt(r.effective_order_log2), r.bound_constant);
}

}  // namespace shishkin::io
