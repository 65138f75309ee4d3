#pragma once

#include <ostream>
#include <string>

#include "shishkin/analysis.hpp"
#include "shishkin/config.hpp"
#include "shishkin/discretization.hpp"
#include "shishkin/solver.hpp"

namespace shishkin::io {

/// 17 significant digits, '.' separator, independent of the C++ locale.
std::string format_value(double v);

/// `j,x_j,spacing_left`; spacing_left is 0 at j = 0.
void write_mesh_csv(std::ostream& out, const ShishkinMesh& mesh);

/// `j,x,U_1,...,U_n`.
void write_solution_csv(std::ostream& out, const DiscreteSolution& sol);

/// `j,block,row,col,value` for every stored block entry; block is sub, diag or super.
void write_system_csv(std::ostream& out, const BlockTridiagonalSystem& sys);

/// `eps_id,N,error,order,effective_order,bound_constant`; absent orders are empty
/// fields in CSV and `NaN` in gnuplot tables.
void write_series(std::ostream& out, const ConvergenceReport& report, OutputFormat format);

/// `N,uniform_error,uniform_order`.
void write_uniform(std::ostream& out, const ConvergenceReport& report, OutputFormat format);

/// `eps_id,eps_1,...` mapping ids in series output to epsilon vectors.
void write_epsilon_index(std::ostream& out, const ConvergenceReport& report, OutputFormat format);

/// Human-readable convergence table.
void write_table(std::ostream& out, const std::vector<ErrorRecord>& records, bool show_error_label_exact);

}  // namespace shishkin::io
