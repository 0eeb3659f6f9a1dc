#pragma once

#include "circ/types.hpp"

namespace circ {

/// Pairwise squared Euclidean distances of the dataset rows.
SquaredDistanceMatrix squared_distances(const OrderedDataset& data);

/// Kernel Laplacian L(X, sigma): off-diagonal -exp(-dist/sigma), diagonal the
/// negated row sum. Throws DegenerateKernel when every off-diagonal weight
/// underflows below 1e-300.
KernelLaplacian build_laplacian(const SquaredDistanceMatrix& dist, double sigma);

/// Analytic dL/dsigma: off-diagonal -(r/sigma^2) exp(-r/sigma), diagonal the
/// negated off-diagonal row sum. Same degeneracy rule as build_laplacian.
Eigen::MatrixXd laplacian_derivative(const SquaredDistanceMatrix& dist, double sigma);

/// Moore-Penrose pseudoinverse by symmetric eigendecomposition. Eigenvalues
/// with |lambda| <= floor * max|lambda| are treated as zero. Throws
/// RankCollapse when more than one eigenvalue is floored (the kernel graph is
/// numerically disconnected).
PseudoinverseResult pseudoinverse(const KernelLaplacian& L, double eigenvalue_floor = 1e-10);

/// dL^+/dsigma by the constant-rank formula specialized to symmetric L:
///   -P dL P + P P dL (I - L P) + (I - P L) dL P P,  P = L^+.
Eigen::MatrixXd pinv_derivative(const KernelLaplacian& L,
                                const PseudoinverseResult& pinv,
                                const Eigen::MatrixXd& dL);

/// i.i.d. standard-normal n x 2 anchor matrix; rows verified pairwise
/// distinct, resampling from a derived substream on collision (at most 10
/// attempts).
AnchorMatrix sample_gamma(Eigen::Index n, std::uint64_t seed);

/// S M = n M - 1 (column sums of M), computed implicitly in O(nk).
Eigen::MatrixXd apply_S(const Eigen::MatrixXd& M);

/// Optional fast path: solve L y = b per column by Jacobi-preconditioned
/// conjugate gradients with iterates projected to zero mean (valid because
/// the right-hand sides S Gamma are orthogonal to the null space of L).
/// Reference path remains the eigendecomposition.
Eigen::MatrixXd cg_solve_laplacian(const KernelLaplacian& L, const Eigen::MatrixXd& B,
                                   double tol = 1e-12, int max_iters = 10000);

}  // namespace circ
