#include "circ/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "circ/embedding.hpp"
#include "circ/errors.hpp"
#include "circ/linalg.hpp"
#include "circ/optimizer.hpp"

namespace circ {

namespace {

double cross3(const Eigen::Vector2d& a, const Eigen::Vector2d& b, const Eigen::Vector2d& c) {
    return (b.x() - a.x()) * (c.y() - a.y()) - (b.y() - a.y()) * (c.x() - a.x());
}

int orient(const Eigen::Vector2d& a, const Eigen::Vector2d& b, const Eigen::Vector2d& c,
           double eps) {
    const double d = cross3(a, b, c);
    if (d > eps) return 1;
    if (d < -eps) return -1;
    return 0;
}

// q lies in the closed bounding box of segment [p, r].
bool within_box(const Eigen::Vector2d& p, const Eigen::Vector2d& q, const Eigen::Vector2d& r) {
    return std::min(p.x(), r.x()) <= q.x() && q.x() <= std::max(p.x(), r.x()) &&
           std::min(p.y(), r.y()) <= q.y() && q.y() <= std::max(p.y(), r.y());
}

}  // namespace

bool segments_intersect(const Eigen::Vector2d& p1, const Eigen::Vector2d& p2,
                        const Eigen::Vector2d& q1, const Eigen::Vector2d& q2, double eps) {
    const int s1 = orient(p1, p2, q1, eps);
    const int s2 = orient(p1, p2, q2, eps);
    const int s3 = orient(q1, q2, p1, eps);
    const int s4 = orient(q1, q2, p2, eps);
    if (s1 * s2 < 0 && s3 * s4 < 0) return true;
    if (s1 == 0 && within_box(p1, q1, p2)) return true;
    if (s2 == 0 && within_box(p1, q2, p2)) return true;
    if (s3 == 0 && within_box(q1, p1, q2)) return true;
    if (s4 == 0 && within_box(q1, p2, q2)) return true;
    return false;
}

PolygonVerdict is_simple_closed_polygon(const Eigen::MatrixXd& z, double eps) {
    const Eigen::Index n = z.rows();
    if (n < 3) throw TooFewPoints("a closed polygon needs at least 3 vertices");
    PolygonVerdict v;
    v.epsilon = eps;

    const Eigen::Vector2d lo = z.colwise().minCoeff();
    const Eigen::Vector2d hi = z.colwise().maxCoeff();
    const double diag = (hi - lo).norm();
    const double vertex_tol = eps * diag;
    const double cross_tol = eps * diag * diag;

    // Vertex-level defects first: coincident vertices make the cycle
    // degenerate regardless of edge crossings (adjacent pairs are the
    // zero-length edges).
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index k = i + 1; k < n; ++k) {
            if ((z.row(i) - z.row(k)).norm() <= vertex_tol) {
                v.witnesses.emplace_back(i, k);
            }
        }
    }
    if (!v.witnesses.empty()) {
        v.classification = PolygonClass::Degenerate;
        return v;
    }

    const auto vertex = [&](Eigen::Index i) -> Eigen::Vector2d {
        return z.row(i % n).transpose();
    };

    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index k = i + 1; k < n; ++k) {
            const bool adjacent = (k == i + 1) || (i == 0 && k == n - 1);
            if (adjacent) {
                // Shared vertex b; the edges overlap beyond it iff the outer
                // endpoints fold back onto each other: collinear and on the
                // same side of b.
                const Eigen::Index shared = (k == i + 1) ? k : i;
                const Eigen::Vector2d b = vertex(shared);
                const Eigen::Vector2d a = (k == i + 1) ? vertex(i) : vertex(k);
                const Eigen::Vector2d c = (k == i + 1) ? vertex(k + 1) : vertex(i + 1);
                if (std::abs(cross3(b, a, c)) <= cross_tol && (a - b).dot(c - b) > 0.0) {
                    v.witnesses.emplace_back(i, k);
                }
                continue;
            }
            if (segments_intersect(vertex(i), vertex(i + 1), vertex(k), vertex(k + 1),
                                   cross_tol)) {
                v.witnesses.emplace_back(i, k);
            }
        }
    }
    v.classification = v.witnesses.empty() ? PolygonClass::Simple : PolygonClass::SelfIntersecting;
    return v;
}

CircularityVerdict circularity_test(const OrderedDataset& data, const OptimizerConfig& cfg,
                                    double eps) {
    CircularityVerdict v;
    v.seed = cfg.seed;
    const AnchorMatrix gamma = sample_gamma(data.n(), cfg.seed);
    const EmbedContext ctx = make_embed_context(data, gamma);
    const OptimizerConfig resolved = resolve_bounds(cfg, ctx.dist);

    BandwidthEstimate est;
    try {
        est = estimate_bandwidth(make_energy_objective(ctx), resolved);
    } catch (const AllDegenerate&) {
        v.accept_h0 = false;
        v.reason = CircularityReason::NoMinimizer;
        return v;
    }
    if (!est.exists) {
        v.accept_h0 = false;
        v.reason = CircularityReason::NoMinimizer;
        return v;
    }
    v.sigma_star = est.sigma_star;

    const Embedding emb = embed(ctx, *est.sigma_star);
    const PolygonVerdict poly = is_simple_closed_polygon(emb.z, eps);
    v.polygon = poly;
    if (poly.classification == PolygonClass::Simple) {
        v.accept_h0 = true;
        v.reason = CircularityReason::SimplePolygon;
    } else {
        v.accept_h0 = false;
        v.reason = CircularityReason::NotSimplePolygon;
    }
    return v;
}

}  // namespace circ
