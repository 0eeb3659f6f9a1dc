#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace circ {

/// Rows are points X_r in R^d; row order is the sampling order t_1 < ... < t_n
/// and is preserved by every operation.
struct OrderedDataset {
    Eigen::MatrixXd points;  // n x d

    Eigen::Index n() const { return points.rows(); }
    Eigen::Index d() const { return points.cols(); }
};

/// Symmetric, zero-diagonal matrix of squared Euclidean distances.
struct SquaredDistanceMatrix {
    Eigen::MatrixXd values;  // n x n
};

/// Gaussian-kernel graph Laplacian at a fixed bandwidth.
/// Off-diagonals are -exp(-dist/sigma) (zero only by underflow); rows sum to 0.
struct KernelLaplacian {
    Eigen::MatrixXd matrix;  // n x n symmetric
    double sigma = 0.0;
};

/// n x 2 random anchor matrix with pairwise-distinct rows.
struct AnchorMatrix {
    Eigen::MatrixXd gamma;  // n x 2
    std::uint64_t seed = 0;
};

/// Pseudoinverse together with the numerical rank it certified.
struct PseudoinverseResult {
    Eigen::MatrixXd pinv;  // n x n symmetric
    Eigen::Index rank = 0;
    double eigenvalue_floor = 0.0;  // relative floor that was applied
};

/// 2-D embedding Z = A / Tr(Gamma^T S A), A = L^+ S Gamma.
struct Embedding {
    Eigen::MatrixXd z;  // n x 2
    double sigma = 0.0;
    std::uint64_t seed = 0;  // seed that produced the anchor matrix
    bool degenerate = false;
};

/// First and second sigma-derivatives of the embedding.
struct EmbeddingDerivative {
    Eigen::MatrixXd dz;   // n x 2
    Eigen::MatrixXd d2z;  // n x 2
    double sigma = 0.0;
};

/// One row of a sampled energy profile.
struct EnergySample {
    double sigma = 0.0;
    std::optional<double> energy;     // present iff !degenerate
    std::optional<double> perimeter;  // present iff !degenerate
    bool degenerate = false;
};

/// E(sigma), P(sigma) sampled over a log grid.
struct EnergyProfile {
    std::vector<EnergySample> samples;  // sigma strictly increasing
    std::uint64_t seed = 0;
    std::string grid_spec;
};

/// Search hyperparameters for the bandwidth estimator.
struct OptimizerConfig {
    double sigma_lo = 0.0;  // 0 means: derive from data (1e-4 x median sq dist)
    double sigma_hi = 0.0;  // 0 means: derive from data (1e4  x median sq dist)
    int init_grid_size = 50;
    int max_descent_iters = 200;
    double descent_tolerance = 1e-8;        // on |dE/d ln sigma|
    std::vector<double> tunneling_lambda_schedule = {1.0, 2.0, 4.0, 8.0};
    int max_rounds = 3;
    std::uint64_t seed = 0;
};

/// One visited point of the estimator, tagged by phase.
struct TracePoint {
    std::string phase;  // "grid", "descent", "tunnel"
    double sigma = 0.0;
    double energy = 0.0;
};

/// Result of the bandwidth search. exists == sigma_star.has_value().
struct BandwidthEstimate {
    std::optional<double> sigma_star;
    std::optional<double> energy_at_star;
    bool exists = false;
    std::vector<TracePoint> trace;
};

enum class PolygonClass { Simple, SelfIntersecting, Degenerate };

/// Verdict of the closed-polygon simplicity check.
/// Simple => witnesses empty. SelfIntersecting => non-adjacent edge pair
/// witnesses. Degenerate => coincident-vertex / short-edge witnesses.
struct PolygonVerdict {
    PolygonClass classification = PolygonClass::Simple;
    std::vector<std::pair<Eigen::Index, Eigen::Index>> witnesses;
    double epsilon = 0.0;
};

enum class CircularityReason { NoMinimizer, NotSimplePolygon, SimplePolygon };

/// Outcome of the hypothesis test for H0: "X has circular structure".
struct CircularityVerdict {
    bool accept_h0 = false;
    CircularityReason reason = CircularityReason::NoMinimizer;
    std::optional<double> sigma_star;
    std::optional<PolygonVerdict> polygon;
    std::uint64_t seed = 0;
};

}  // namespace circ
