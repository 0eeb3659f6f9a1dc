#pragma once

#include <vector>

#include "circ/embedding.hpp"
#include "circ/types.hpp"

namespace circ {

enum class PerimeterNorm {
    Euclidean,     // true polygon perimeter (default reading)
    CoordinateL1,  // componentwise 1-norm of each edge vector
};

/// Cyclic sum of squared edge lengths of the order-joined closed polygon.
double energy(const Embedding& z);

/// Cyclic sum of unsquared edge lengths.
double perimeter(const Embedding& z, PerimeterNorm norm = PerimeterNorm::Euclidean);

/// Diagnostic companion: Tr(Z^T S Z) with the centering S = nI - J. This is
/// not the cyclic energy in general; it is reported, never optimized.
double centering_trace_diagnostic(const Embedding& z);

/// dE/dsigma and d2E/dsigma2 of the cyclic energy, via the chain rule over
/// the embedding derivatives. Matches central finite differences of energy().
struct EnergyDerivative {
    double denergy = 0.0;
    double d2energy = 0.0;
};
EnergyDerivative energy_derivative(const OrderedDataset& data, const AnchorMatrix& gamma,
                                   double sigma);
EnergyDerivative energy_derivative(const EmbedContext& ctx, double sigma);

/// Median pairwise squared distance (off-diagonal entries). Scale anchor for
/// default sigma grids and search bounds.
double median_squared_distance(const SquaredDistanceMatrix& dist);

/// k log-spaced points from lo to hi inclusive (k >= 2; k == 1 gives {lo}).
std::vector<double> log_grid(double lo, double hi, int k);

/// Default profile grid: 200 log-spaced points over [1e-4, 1e4] x median
/// pairwise squared distance.
std::vector<double> default_grid(const SquaredDistanceMatrix& dist, int k = 200);

/// One (E, P) sample per grid sigma; degenerate sigmas are flagged, not
/// dropped. Throws EmptyGrid on an empty grid.
EnergyProfile energy_profile(const OrderedDataset& data, const AnchorMatrix& gamma,
                             const std::vector<double>& grid,
                             PerimeterNorm norm = PerimeterNorm::Euclidean);
EnergyProfile energy_profile(const EmbedContext& ctx, const std::vector<double>& grid,
                             PerimeterNorm norm = PerimeterNorm::Euclidean);

}  // namespace circ
