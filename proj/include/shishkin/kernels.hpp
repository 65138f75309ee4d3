#pragma once

// Data-parallel kernels. Each has a serial reference in `serial` and an
// OpenMP version in `parallel`; the two produce bit-identical results.

#include "shishkin/discretization.hpp"

namespace shishkin::kernels {

namespace serial {

void assemble_rows(const Problem& p, BlockTridiagonalSystem& sys);
MeshFunction apply_operator(const BlockTridiagonalSystem& sys, const MeshFunction& psi);
Eigen::MatrixXd dense_inverse(const Eigen::MatrixXd& m);

}  // namespace serial

namespace parallel {

void assemble_rows(const Problem& p, BlockTridiagonalSystem& sys);
MeshFunction apply_operator(const BlockTridiagonalSystem& sys, const MeshFunction& psi);
/// LU-factors once, then solves unit columns in parallel.
Eigen::MatrixXd dense_inverse(const Eigen::MatrixXd& m);

}  // namespace parallel

/// Worker count for sweeps: SHISHKIN_RD_THREADS if set and positive,
/// otherwise the OpenMP default.
int sweep_threads();

}  // namespace shishkin::kernels
