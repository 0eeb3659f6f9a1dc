#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "circ/embedding.hpp"
#include "circ/types.hpp"

namespace circ {

/// One objective evaluation at a sigma: energy and its sigma-derivative.
struct ObjectiveEval {
    double energy = 0.0;
    double denergy = 0.0;  // dE/dsigma
    bool degenerate = false;
};

using Objective = std::function<ObjectiveEval(double sigma)>;

/// Cyclic polygon energy of the embedding as an objective in sigma, sharing
/// one eigendecomposition per evaluation between E and dE/dsigma.
Objective make_energy_objective(const EmbedContext& ctx);

/// Result of one descent run. hit_bound marks termination against an
/// interval end rather than at a stationary point.
struct DescentResult {
    double sigma = 0.0;
    double energy = 0.0;
    double grad_t = 0.0;  // dE/d ln sigma at the final iterate
    bool hit_bound = false;
};

/// Backtracking gradient descent in t = ln sigma over
/// [cfg.sigma_lo, cfg.sigma_hi] (bounds must be resolved, both positive).
/// Steps halve from 1.0 under the Armijo test with constant 1e-4; stops on
/// |dE/dt| < cfg.descent_tolerance, the iteration cap, or failure to move.
/// Energy never increases between accepted iterates.
DescentResult gradient_descent(const Objective& f, double sigma0, const OptimizerConfig& cfg);

/// Tunneling proposal: a point strictly below the descent basin's energy.
struct TunnelProposal {
    double sigma = 0.0;
    double energy = 0.0;
    double lambda = 0.0;  // schedule entry that produced the escape
};

/// For each lambda in the schedule, minimizes
/// (E(sigma) - E(sigma_l)) / |sigma - sigma_l|^lambda over the bounds grid,
/// excluding a ball of radius 1e-6 * sigma_l; returns the first candidate
/// with E < E(sigma_l) - 1e-12, or nothing.
std::optional<TunnelProposal> tunneling(const Objective& f, double sigma_l,
                                        const OptimizerConfig& cfg);

/// Algorithm core on an abstract objective: coarse grid scan, then up to
/// cfg.max_rounds of descent + tunneling. exists = false when the best point
/// sits within one grid step of a bound and the scan energies fall strictly
/// (by more than 1e-12 per step) toward that bound across its final decade.
/// Bounds in cfg must be resolved. Throws AllDegenerate when no grid point
/// evaluates.
BandwidthEstimate estimate_bandwidth(const Objective& f, const OptimizerConfig& cfg);

/// Data front end: resolves zero bounds to [1e-4, 1e4] x median pairwise
/// squared distance and runs the core on the embedding energy.
BandwidthEstimate estimate_bandwidth(const OrderedDataset& data, const AnchorMatrix& gamma,
                                     const OptimizerConfig& cfg);

/// cfg with sigma bounds resolved against the dataset scale.
OptimizerConfig resolve_bounds(const OptimizerConfig& cfg, const SquaredDistanceMatrix& dist);

}  // namespace circ
