#include "shishkin/discretization.hpp"

#include <fmt/format.h>

#include "shishkin/error.hpp"
#include "shishkin/kernels.hpp"

namespace shishkin {

SecondDifferenceWeights second_difference_weights(double h, double H) {
    // delta^2 u = (D+ u - D- u) / hbar with hbar = (h + H) / 2.
    const double sum = h + H;
    return {2.0 / (h * sum), -2.0 / (h * H), 2.0 / (H * sum)};
}

BlockTridiagonalSystem assemble(const Problem& p, const ShishkinMesh& mesh) {
    check_shape(p);
    if (mesh.params.n != p.n())
        throw InputError(fmt::format("mesh built for n = {} but problem has n = {}", mesh.params.n, p.n()));
    if (mesh.points.size() < 3) throw InputError("mesh needs at least one interior node");

    BlockTridiagonalSystem sys;
    sys.N = mesh.N();
    sys.n = p.n();
    sys.points = mesh.points;
    sys.left_bc = p.u_left;
    sys.right_bc = p.u_right;
    sys.epsilon = Eigen::Map<const Eigen::VectorXd>(p.epsilon.data(), static_cast<Eigen::Index>(p.n()));
    kernels::parallel::assemble_rows(p, sys);
    return sys;
}

namespace {

void check_mesh_function(const BlockTridiagonalSystem& sys, const MeshFunction& psi) {
    if (static_cast<std::size_t>(psi.rows()) != sys.N + 1 || static_cast<std::size_t>(psi.cols()) != sys.n)
        throw InputError(fmt::format("mesh function is {}x{}, expected {}x{}", psi.rows(), psi.cols(), sys.N + 1,
                                     sys.n));
}

}  // namespace

MeshFunction apply_operator(const BlockTridiagonalSystem& sys, const MeshFunction& psi) {
    check_mesh_function(sys, psi);
    return kernels::parallel::apply_operator(sys, psi);
}

MeshFunction second_difference(const std::vector<double>& points, const MeshFunction& psi) {
    if (points.size() < 3 || static_cast<std::size_t>(psi.rows()) != points.size())
        throw InputError("second_difference: mesh function does not match the grid");
    const auto interior = static_cast<Eigen::Index>(points.size() - 2);
    MeshFunction out(interior, psi.cols());
    for (Eigen::Index r = 0; r < interior; ++r) {
        const auto j = static_cast<std::size_t>(r + 1);
        const auto w = second_difference_weights(points[j] - points[j - 1], points[j + 1] - points[j]);
        out.row(r) = w.left * psi.row(r) + w.centre * psi.row(r + 1) + w.right * psi.row(r + 2);
    }
    return out;
}

Eigen::MatrixXd to_dense(const BlockTridiagonalSystem& sys) {
    const auto n = static_cast<Eigen::Index>(sys.n);
    const auto rows = static_cast<Eigen::Index>(sys.rows());
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(rows * n, rows * n);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const auto b = static_cast<std::size_t>(r);
        m.block(r * n, r * n, n, n) = sys.diag[b];
        if (r > 0) m.block(r * n, (r - 1) * n, n, n) = sys.sub[b];
        if (r + 1 < rows) m.block(r * n, (r + 1) * n, n, n) = sys.super[b];
    }
    return m;
}

Eigen::VectorXd stacked_rhs(const BlockTridiagonalSystem& sys) {
    const auto n = static_cast<Eigen::Index>(sys.n);
    Eigen::VectorXd v(static_cast<Eigen::Index>(sys.rows()) * n);
    for (std::size_t r = 0; r < sys.rows(); ++r) v.segment(static_cast<Eigen::Index>(r) * n, n) = sys.rhs[r];
    return v;
}

MeshFunction truncation_residual(const BlockTridiagonalSystem& sys, const MeshFunction& exact_samples) {
    MeshFunction out = apply_operator(sys, exact_samples);
    for (std::size_t r = 0; r < sys.rows(); ++r) out.row(static_cast<Eigen::Index>(r)) -= sys.load[r].transpose();
    return out;
}

}  // namespace shishkin
