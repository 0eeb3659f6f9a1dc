#pragma once

#include <string>
#include <vector>

#include "circ/types.hpp"

namespace circ {

enum class DatasetKind { Circle, ToroidalHelix, GaussianCloud };

/// Parameters of the synthetic generators. noise is the standard deviation
/// of isotropic Gaussian jitter added per coordinate (0 adds nothing and
/// draws nothing). windings applies to the helix; dim is the ambient
/// dimension of the Gaussian cloud.
struct GeneratorSpec {
    DatasetKind kind = DatasetKind::Circle;
    Eigen::Index n = 0;
    double noise = 0.0;
    int windings = 8;
    Eigen::Index dim = 5;
    std::uint64_t seed = 0;
};

/// Points (cos t_r, sin t_r), t_r = 2 pi r / n, in sampling order.
OrderedDataset gen_circle(const GeneratorSpec& spec);

/// Points ((2 + cos w t_r) cos t_r, (2 + cos w t_r) sin t_r, sin w t_r),
/// a closed curve winding w times around a torus.
OrderedDataset gen_toroidal_helix(const GeneratorSpec& spec);

/// n x dim i.i.d. standard normal rows; the unordered negative control.
OrderedDataset gen_gaussian_cloud(const GeneratorSpec& spec);

OrderedDataset generate(const GeneratorSpec& spec);

/// Isometric embedding into target_d dimensions by a seeded random matrix
/// with orthonormal rows; every pairwise distance is preserved.
OrderedDataset lift_to_dim(const OrderedDataset& data, Eigen::Index target_d,
                           std::uint64_t seed);

struct SmootherConfig {
    double alpha = 0.2;  // fraction of points per local fit, in (0, 1]
    int degree = 1;      // local polynomial degree, 0 or 1
};

/// Column-wise Lowess against row index: tricube weights over the nearest
/// ceil(alpha n) indices, local fit of the given degree, no robustness
/// iterations. Preserves row order.
OrderedDataset lowess_smooth(const OrderedDataset& data, const SmootherConfig& cfg);

/// Rectangular numeric csv. '#' lines are comments; has_header skips the
/// first non-comment line. Errors carry 1-based file row / column.
OrderedDataset load_dataset(const std::string& path, bool has_header = false);

/// Writes comment lines (prefixed "# "), an optional column header line,
/// then rows at 17 significant digits.
void save_dataset(const OrderedDataset& data, const std::string& path,
                  const std::vector<std::string>& comments = {},
                  const std::string& header = "");

}  // namespace circ
