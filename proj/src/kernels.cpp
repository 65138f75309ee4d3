#include "shishkin/kernels.hpp"

#include <cstdlib>
#include <string>

#include <omp.h>

namespace shishkin::kernels {

namespace {

void assemble_row(const Problem& p, BlockTridiagonalSystem& sys, std::size_t r) {
    const std::size_t j = r + 1;
    const auto& x = sys.points;
    const auto w = second_difference_weights(x[j] - x[j - 1], x[j + 1] - x[j]);
    const Eigen::MatrixXd e = sys.epsilon.asDiagonal();
    sys.sub[r] = -w.left * e;
    sys.super[r] = -w.right * e;
    sys.diag[r] = p.a_at(x[j]) - w.centre * e;
    sys.load[r] = p.f_at(x[j]);
}

Eigen::VectorXd operator_row(const BlockTridiagonalSystem& sys, const MeshFunction& psi, std::size_t r) {
    const auto j = static_cast<Eigen::Index>(r + 1);
    return sys.sub[r] * psi.row(j - 1).transpose() + sys.diag[r] * psi.row(j).transpose() +
           sys.super[r] * psi.row(j + 1).transpose();
}

void finish_rhs(BlockTridiagonalSystem& sys) {
    sys.rhs = sys.load;
    if (sys.rows() == 0) return;
    sys.rhs.front() -= sys.sub.front() * sys.left_bc;
    sys.rhs.back() -= sys.super.back() * sys.right_bc;
}

void resize_blocks(BlockTridiagonalSystem& sys) {
    const std::size_t rows = sys.rows();
    sys.sub.resize(rows);
    sys.diag.resize(rows);
    sys.super.resize(rows);
    sys.load.resize(rows);
}

}  // namespace

namespace serial {

void assemble_rows(const Problem& p, BlockTridiagonalSystem& sys) {
    resize_blocks(sys);
    for (std::size_t r = 0; r < sys.rows(); ++r) assemble_row(p, sys, r);
    finish_rhs(sys);
}

MeshFunction apply_operator(const BlockTridiagonalSystem& sys, const MeshFunction& psi) {
    MeshFunction out(static_cast<Eigen::Index>(sys.rows()), static_cast<Eigen::Index>(sys.n));
    for (std::size_t r = 0; r < sys.rows(); ++r) out.row(static_cast<Eigen::Index>(r)) = operator_row(sys, psi, r).transpose();
    return out;
}

Eigen::MatrixXd dense_inverse(const Eigen::MatrixXd& m) {
    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(m);
    const Eigen::Index size = m.rows();
    Eigen::MatrixXd inv(size, size);
    for (Eigen::Index c = 0; c < size; ++c) inv.col(c) = lu.solve(Eigen::VectorXd::Unit(size, c));
    return inv;
}

}  // namespace serial

namespace parallel {

void assemble_rows(const Problem& p, BlockTridiagonalSystem& sys) {
    resize_blocks(sys);
    const auto rows = static_cast<std::ptrdiff_t>(sys.rows());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t r = 0; r < rows; ++r) assemble_row(p, sys, static_cast<std::size_t>(r));
    finish_rhs(sys);
}

MeshFunction apply_operator(const BlockTridiagonalSystem& sys, const MeshFunction& psi) {
    MeshFunction out(static_cast<Eigen::Index>(sys.rows()), static_cast<Eigen::Index>(sys.n));
    const auto rows = static_cast<std::ptrdiff_t>(sys.rows());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t r = 0; r < rows; ++r)
        out.row(r) = operator_row(sys, psi, static_cast<std::size_t>(r)).transpose();
    return out;
}

Eigen::MatrixXd dense_inverse(const Eigen::MatrixXd& m) {
    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(m);
    const Eigen::Index size = m.rows();
    Eigen::MatrixXd inv(size, size);
#pragma omp parallel for schedule(static)
    for (Eigen::Index c = 0; c < size; ++c) inv.col(c) = lu.solve(Eigen::VectorXd::Unit(size, c));
    return inv;
}

}  // namespace parallel

int sweep_threads() {
    if (const char* env = std::getenv("SHISHKIN_RD_THREADS")) {
        try {
            const int v = std::stoi(env);
            if (v > 0) return v;
        } catch (const std::exception&) {
        }
    }
    return omp_get_max_threads();
}

}  // namespace shishkin::kernels
