#include "circ/embedding.hpp"

#include <cmath>

#include "circ/errors.hpp"
#include "circ/linalg.hpp"
#include "circ/rng.hpp"

namespace circ {

namespace {

// Trace and Frobenius norm of the 2x2 matrix Gamma^T S A = (S Gamma)^T A.
struct Normalizer {
    double trace;
    double frob;
};

Normalizer normalizer(const Eigen::MatrixXd& sgamma, const Eigen::MatrixXd& A) {
    const Eigen::Matrix2d M = sgamma.transpose() * A;
    return {M.trace(), M.norm()};
}

bool trace_degenerate(const Normalizer& nm) {
    return std::abs(nm.trace) < 1e-12 * nm.frob;
}

}  // namespace

EmbedContext make_embed_context(const OrderedDataset& data, const AnchorMatrix& gamma) {
    EmbedContext ctx;
    ctx.dist = squared_distances(data);
    ctx.gamma = gamma;
    ctx.sgamma = apply_S(gamma.gamma);
    return ctx;
}

Embedding embed(const EmbedContext& ctx, double sigma) {
    const KernelLaplacian L = build_laplacian(ctx.dist, sigma);
    const PseudoinverseResult P = pseudoinverse(L);
    Eigen::MatrixXd A = P.pinv * ctx.sgamma;
    Normalizer nm = normalizer(ctx.sgamma, A);
    if (trace_degenerate(nm)) {
        // Measure-zero event under Gaussian anchors: retry once, deterministically.
        const AnchorMatrix retry = sample_gamma(ctx.gamma.gamma.rows(),
                                                derived_seed(ctx.gamma.seed, 1));
        const Eigen::MatrixXd sg2 = apply_S(retry.gamma);
        A = P.pinv * sg2;
        nm = normalizer(sg2, A);
        if (trace_degenerate(nm)) {
            Embedding out;
            out.z = Eigen::MatrixXd::Zero(ctx.gamma.gamma.rows(), 2);
            out.sigma = sigma;
            out.seed = ctx.gamma.seed;
            out.degenerate = true;
            return out;
        }
    }
    Embedding out;
    out.z = A / nm.trace;
    out.sigma = sigma;
    out.seed = ctx.gamma.seed;
    out.degenerate = false;
    return out;
}

Embedding embed(const OrderedDataset& data, const AnchorMatrix& gamma, double sigma) {
    return embed(make_embed_context(data, gamma), sigma);
}

EmbedEval eval_embedding_with_derivative(const EmbedContext& ctx, double sigma) {
    const KernelLaplacian L = build_laplacian(ctx.dist, sigma);
    const PseudoinverseResult pr = pseudoinverse(L);
    const Eigen::MatrixXd& P = pr.pinv;
    const Eigen::MatrixXd dL = laplacian_derivative(ctx.dist, sigma);

    const Eigen::MatrixXd A = P * ctx.sgamma;
    const Normalizer nm = normalizer(ctx.sgamma, A);
    EmbedEval ev;
    if (trace_degenerate(nm)) {
        ev.degenerate = true;
        return ev;
    }

    // dA = dL^+ S Gamma by the constant-rank formula, right-applied to the
    // n x 2 block so every product stays O(n^2):
    //   dA = -P dL A + P P dL (S Gamma - L A) + (I - P L)(dL P A)
    const Eigen::MatrixXd PA = P * A;
    const Eigen::MatrixXd t1 = -(P * (dL * A));
    const Eigen::MatrixXd resid = ctx.sgamma - L.matrix * A;  // (I - L L^+) S Gamma
    const Eigen::MatrixXd t2 = P * (P * (dL * resid));
    const Eigen::MatrixXd r3 = dL * PA;
    const Eigen::MatrixXd t3 = r3 - P * (L.matrix * r3);
    const Eigen::MatrixXd dA = t1 + t2 + t3;

    const double den = nm.trace;
    const double dden = (ctx.sgamma.array() * dA.array()).sum();
    ev.z = A / den;
    ev.dz = dA / den - A * (dden / (den * den));
    ev.degenerate = false;
    return ev;
}

EmbeddingDerivative embedding_derivative(const EmbedContext& ctx, double sigma) {
    const EmbedEval mid = eval_embedding_with_derivative(ctx, sigma);
    if (mid.degenerate) {
        throw DegenerateInput("embedding degenerate at sigma = " + std::to_string(sigma));
    }
    // Second derivative by central differences of the analytic first derivative.
    const double h = sigma * 1e-4;
    const EmbedEval hi = eval_embedding_with_derivative(ctx, sigma + h);
    const EmbedEval lo = eval_embedding_with_derivative(ctx, sigma - h);
    if (hi.degenerate || lo.degenerate) {
        throw DegenerateInput("embedding derivative stencil degenerate near sigma = " +
                              std::to_string(sigma));
    }
    EmbeddingDerivative out;
    out.dz = mid.dz;
    out.d2z = (hi.dz - lo.dz) / (2.0 * h);
    out.sigma = sigma;
    return out;
}

EmbeddingDerivative embedding_derivative(const OrderedDataset& data, const AnchorMatrix& gamma,
                                         double sigma) {
    return embedding_derivative(make_embed_context(data, gamma), sigma);
}

Eigen::MatrixXd asymptotic_embedding(const AnchorMatrix& gamma) {
    const double n = static_cast<double>(gamma.gamma.rows());
    const Eigen::MatrixXd sg = apply_S(gamma.gamma);
    const double den = (gamma.gamma.array() * sg.array()).sum();  // Tr(Gamma^T S Gamma)
    return (sg / n) / den;
}

}  // namespace circ
