#pragma once

#include "circ/types.hpp"

namespace circ {

/// Precomputed per-dataset state shared by every sigma evaluation:
/// squared distances, the anchor matrix, and S*Gamma.
struct EmbedContext {
    SquaredDistanceMatrix dist;
    AnchorMatrix gamma;
    Eigen::MatrixXd sgamma;  // S * Gamma, columns sum to 0
};

EmbedContext make_embed_context(const OrderedDataset& data, const AnchorMatrix& gamma);

/// Z = A / Tr(Gamma^T S A), A = L^+(sigma) S Gamma. On a numerically zero
/// denominator the anchor is resampled once from a derived substream; if the
/// denominator is still zero the embedding is returned flagged degenerate.
/// Propagates DegenerateKernel / RankCollapse.
Embedding embed(const OrderedDataset& data, const AnchorMatrix& gamma, double sigma);
Embedding embed(const EmbedContext& ctx, double sigma);

/// Analytic dZ/dsigma (quotient rule over A and its trace normalizer, with
/// dA/dsigma from the constant-rank pseudoinverse derivative applied to
/// S Gamma) and a central-difference d2Z/dsigma^2 of the analytic dZ with
/// step sigma * 1e-4.
EmbeddingDerivative embedding_derivative(const OrderedDataset& data, const AnchorMatrix& gamma,
                                         double sigma);
EmbeddingDerivative embedding_derivative(const EmbedContext& ctx, double sigma);

/// Finite-n closed form of the sigma -> infinity limit: (S/n)Gamma / Tr(Gamma^T S Gamma).
Eigen::MatrixXd asymptotic_embedding(const AnchorMatrix& gamma);

/// Internal single-eigendecomposition evaluation of Z and dZ/dsigma at one
/// sigma; the optimizer's objective builds on this.
struct EmbedEval {
    Eigen::MatrixXd z;       // n x 2
    Eigen::MatrixXd dz;      // n x 2
    bool degenerate = false;
};
EmbedEval eval_embedding_with_derivative(const EmbedContext& ctx, double sigma);

}  // namespace circ
