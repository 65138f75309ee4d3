#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "shishkin/mesh.hpp"
#include "shishkin/problem.hpp"

namespace shishkin {

/// Values at mesh nodes, one row per node, one column per component.
using MeshFunction = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// The discrete operator L^N = -E delta^2 + A(x) on the interior nodes
/// x_1 .. x_{N-1}. Block row r (0-based) belongs to node j = r + 1.
/// Boundary values are eliminated: rhs = load except at the first and last rows.
struct BlockTridiagonalSystem {
    std::size_t N = 0;
    std::size_t n = 0;
    std::vector<double> points;          ///< x_0 .. x_N
    std::vector<Eigen::MatrixXd> sub;    ///< couples node j to j-1
    std::vector<Eigen::MatrixXd> diag;
    std::vector<Eigen::MatrixXd> super;  ///< couples node j to j+1
    std::vector<Eigen::VectorXd> load;   ///< f(x_j)
    std::vector<Eigen::VectorXd> rhs;
    Eigen::VectorXd left_bc;
    Eigen::VectorXd right_bc;
    Eigen::VectorXd epsilon;

    std::size_t rows() const noexcept { return N - 1; }
};

/// Stencil weights of the nonuniform three-point second difference at an
/// interior node with left spacing h and right spacing H:
/// delta^2 u = w_left u_{j-1} + w_centre u_j + w_right u_{j+1}.
struct SecondDifferenceWeights {
    double left;
    double centre;
    double right;
};

SecondDifferenceWeights second_difference_weights(double h, double H);

/// Assembles L^N for problem p on the given mesh. Rows are assembled in
/// parallel; throws InputError on a size mismatch between p and mesh.
BlockTridiagonalSystem assemble(const Problem& p, const ShishkinMesh& mesh);

/// (L^N psi)(x_j) for j = 1..N-1; psi holds all N+1 nodes.
MeshFunction apply_operator(const BlockTridiagonalSystem& sys, const MeshFunction& psi);

/// delta^2 psi at interior nodes of an arbitrary strictly increasing grid.
MeshFunction second_difference(const std::vector<double>& points, const MeshFunction& psi);

/// Samples a function given as a closure over all nodes.
template <typename F>
MeshFunction sample(const std::vector<double>& points, std::size_t n, F&& fn) {
    MeshFunction out(static_cast<Eigen::Index>(points.size()), static_cast<Eigen::Index>(n));
    for (std::size_t j = 0; j < points.size(); ++j) out.row(static_cast<Eigen::Index>(j)) = fn(points[j]).transpose();
    return out;
}

/// The full (N-1)n x (N-1)n matrix of the system.
Eigen::MatrixXd to_dense(const BlockTridiagonalSystem& sys);

/// rhs blocks stacked into one vector.
Eigen::VectorXd stacked_rhs(const BlockTridiagonalSystem& sys);

/// L^N u - f at interior nodes for a closed-form u: the local truncation
/// error -E (delta^2 - D^2) u when u solves the continuous problem.
MeshFunction truncation_residual(const BlockTridiagonalSystem& sys, const MeshFunction& exact_samples);

}  // namespace shishkin
