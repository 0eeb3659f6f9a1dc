#include "circ/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "circ/errors.hpp"
#include "circ/rng.hpp"

namespace circ {

SquaredDistanceMatrix squared_distances(const OrderedDataset& data) {
    const Eigen::Index n = data.n();
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index k = i + 1; k < n; ++k) {
            const double r = (data.points.row(i) - data.points.row(k)).squaredNorm();
            out(i, k) = r;
            out(k, i) = r;
        }
    }
    return {std::move(out)};
}

namespace {

// Kernel weights exp(-dist/sigma); throws when all of them underflow.
Eigen::MatrixXd kernel_weights(const SquaredDistanceMatrix& dist, double sigma) {
    const Eigen::Index n = dist.values.rows();
    Eigen::MatrixXd w(n, n);
    double max_off = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        w(i, i) = 0.0;
        for (Eigen::Index k = i + 1; k < n; ++k) {
            const double e = std::exp(-dist.values(i, k) / sigma);
            w(i, k) = e;
            w(k, i) = e;
            if (e > max_off) max_off = e;
        }
    }
    if (max_off < 1e-300) {
        throw DegenerateKernel("every kernel weight underflowed at sigma = " +
                               std::to_string(sigma));
    }
    return w;
}

}  // namespace

KernelLaplacian build_laplacian(const SquaredDistanceMatrix& dist, double sigma) {
    Eigen::MatrixXd w = kernel_weights(dist, sigma);
    Eigen::VectorXd rowsum = w.rowwise().sum();
    Eigen::MatrixXd L = -w;
    L.diagonal() = rowsum;
    return {std::move(L), sigma};
}

Eigen::MatrixXd laplacian_derivative(const SquaredDistanceMatrix& dist, double sigma) {
    const Eigen::Index n = dist.values.rows();
    Eigen::MatrixXd w = kernel_weights(dist, sigma);
    // d/dsigma of -exp(-r/sigma) = -(r/sigma^2) exp(-r/sigma)
    Eigen::MatrixXd dW = w.cwiseProduct(dist.values) / (sigma * sigma);
    Eigen::MatrixXd dL = -dW;
    dL.diagonal() = dW.rowwise().sum();
    (void)n;
    return dL;
}

PseudoinverseResult pseudoinverse(const KernelLaplacian& L, double eigenvalue_floor) {
    const Eigen::Index n = L.matrix.rows();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(L.matrix);
    const Eigen::VectorXd& lam = es.eigenvalues();
    const Eigen::MatrixXd& V = es.eigenvectors();
    const double lam_max = lam.cwiseAbs().maxCoeff();
    const double floor_abs = eigenvalue_floor * lam_max;

    Eigen::VectorXd inv(n);
    Eigen::Index floored = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (std::abs(lam(i)) <= floor_abs) {
            inv(i) = 0.0;
            ++floored;
        } else {
            inv(i) = 1.0 / lam(i);
        }
    }
    if (floored > 1) {
        throw RankCollapse("pseudoinverse floored " + std::to_string(floored) +
                           " eigenvalues at sigma = " + std::to_string(L.sigma) +
                           " (kernel graph numerically disconnected)");
    }
    Eigen::MatrixXd P = V * inv.asDiagonal() * V.transpose();
    // Symmetrize away the last-bit asymmetry of the triple product.
    P = 0.5 * (P + P.transpose()).eval();
    return {std::move(P), n - floored, eigenvalue_floor};
}

Eigen::MatrixXd pinv_derivative(const KernelLaplacian& L,
                                const PseudoinverseResult& pinv,
                                const Eigen::MatrixXd& dL) {
    const Eigen::Index n = L.matrix.rows();
    const Eigen::MatrixXd& P = pinv.pinv;
    const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);
    const Eigen::MatrixXd LP = L.matrix * P;
    const Eigen::MatrixXd term1 = -P * dL * P;
    const Eigen::MatrixXd term2 = P * P * dL * (I - LP);
    const Eigen::MatrixXd term3 = (I - P * L.matrix) * dL * (P * P);
    return term1 + term2 + term3;
}

AnchorMatrix sample_gamma(Eigen::Index n, std::uint64_t seed) {
    for (std::uint64_t attempt = 0; attempt < 10; ++attempt) {
        const std::uint64_t s = attempt == 0 ? seed : derived_seed(seed, attempt);
        NormalSampler rng(s);
        Eigen::MatrixXd g(n, 2);
        for (Eigen::Index i = 0; i < n; ++i) {
            g(i, 0) = rng.normal();
            g(i, 1) = rng.normal();
        }
        // Rows must differ in at least one entry by more than 1e-12.
        bool distinct = true;
        for (Eigen::Index i = 0; i < n && distinct; ++i) {
            for (Eigen::Index k = i + 1; k < n; ++k) {
                if (std::abs(g(i, 0) - g(k, 0)) <= 1e-12 &&
                    std::abs(g(i, 1) - g(k, 1)) <= 1e-12) {
                    distinct = false;
                    break;
                }
            }
        }
        if (distinct) return {std::move(g), seed};
    }
    throw Error("sample_gamma: rows still coincide after 10 attempts");
}

Eigen::MatrixXd apply_S(const Eigen::MatrixXd& M) {
    const double n = static_cast<double>(M.rows());
    Eigen::RowVectorXd colsum = M.colwise().sum();
    return (n * M).rowwise() - colsum;
}

Eigen::MatrixXd cg_solve_laplacian(const KernelLaplacian& L, const Eigen::MatrixXd& B,
                                   double tol, int max_iters) {
    const Eigen::Index n = L.matrix.rows();
    Eigen::MatrixXd Y(n, B.cols());
    Eigen::VectorXd dinv = L.matrix.diagonal().cwiseMax(1e-300).cwiseInverse();
    auto project = [&](Eigen::VectorXd& v) { v.array() -= v.mean(); };

    for (Eigen::Index c = 0; c < B.cols(); ++c) {
        Eigen::VectorXd b = B.col(c);
        project(b);
        Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
        Eigen::VectorXd r = b;
        Eigen::VectorXd z = dinv.asDiagonal() * r;
        project(z);
        Eigen::VectorXd p = z;
        double rz = r.dot(z);
        const double b2 = b.squaredNorm();
        for (int it = 0; it < max_iters && r.squaredNorm() > tol * tol * b2; ++it) {
            Eigen::VectorXd Ap = L.matrix * p;
            const double alpha = rz / p.dot(Ap);
            x += alpha * p;
            r -= alpha * Ap;
            z = dinv.asDiagonal() * r;
            project(z);
            const double rz_new = r.dot(z);
            p = z + (rz_new / rz) * p;
            rz = rz_new;
        }
        project(x);
        Y.col(c) = x;
    }
    return Y;
}

}  // namespace circ
