#pragma once

#include "circ/types.hpp"

namespace circ {

/// Closed-segment intersection via orientation predicates. eps is an
/// absolute tolerance on cross-product magnitudes (pass a pre-scaled value;
/// cross products scale as length squared). Collinear overlap counts.
bool segments_intersect(const Eigen::Vector2d& p1, const Eigen::Vector2d& p2,
                        const Eigen::Vector2d& q1, const Eigen::Vector2d& q2, double eps);

/// Classifies the closed cycle z_0 -> ... -> z_{n-1} -> z_0. eps is relative
/// to the bounding-box diagonal: vertices within eps * diagonal coincide
/// (Degenerate), cross products within eps * diagonal^2 count as zero, so
/// near-ties classify as intersections, never as silently Simple. Edges are
/// 0-indexed; edge i joins vertices i and i+1 mod n. Witnesses are edge
/// index pairs for SelfIntersecting and vertex index pairs for Degenerate.
PolygonVerdict is_simple_closed_polygon(const Eigen::MatrixXd& z, double eps = 1e-9);

/// Full decision procedure: estimate the bandwidth, embed at sigma_star,
/// classify the polygon. No minimizer or a non-simple polygon rejects H0.
CircularityVerdict circularity_test(const OrderedDataset& data, const OptimizerConfig& cfg,
                                    double eps = 1e-9);

}  // namespace circ
