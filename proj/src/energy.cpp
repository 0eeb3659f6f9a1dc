#include "circ/energy.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "circ/errors.hpp"
#include "circ/linalg.hpp"

namespace circ {

namespace {

void require_live(const Embedding& z) {
    if (z.degenerate) {
        throw DegenerateInput("embedding flagged degenerate at sigma = " +
                              std::to_string(z.sigma));
    }
}

// Edge vector i of the closed cycle: row (i+1 mod n) minus row i.
inline Eigen::RowVector2d edge(const Eigen::MatrixXd& m, Eigen::Index i) {
    const Eigen::Index n = m.rows();
    return m.row((i + 1) % n) - m.row(i);
}

}  // namespace

double energy(const Embedding& z) {
    require_live(z);
    const Eigen::Index n = z.z.rows();
    double e = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) e += edge(z.z, i).squaredNorm();
    return e;
}

double perimeter(const Embedding& z, PerimeterNorm norm) {
    require_live(z);
    const Eigen::Index n = z.z.rows();
    double p = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        const Eigen::RowVector2d e = edge(z.z, i);
        p += (norm == PerimeterNorm::Euclidean) ? e.norm() : e.lpNorm<1>();
    }
    return p;
}

double centering_trace_diagnostic(const Embedding& z) {
    require_live(z);
    return (z.z.array() * apply_S(z.z).array()).sum();
}

EnergyDerivative energy_derivative(const EmbedContext& ctx, double sigma) {
    const EmbeddingDerivative d = embedding_derivative(ctx, sigma);
    const Embedding zed = embed(ctx, sigma);
    const Eigen::Index n = zed.z.rows();
    EnergyDerivative out;
    for (Eigen::Index i = 0; i < n; ++i) {
        const Eigen::RowVector2d e = edge(zed.z, i);
        const Eigen::RowVector2d de = edge(d.dz, i);
        const Eigen::RowVector2d d2e = edge(d.d2z, i);
        out.denergy += 2.0 * e.dot(de);
        out.d2energy += 2.0 * (de.squaredNorm() + e.dot(d2e));
    }
    return out;
}

EnergyDerivative energy_derivative(const OrderedDataset& data, const AnchorMatrix& gamma,
                                   double sigma) {
    return energy_derivative(make_embed_context(data, gamma), sigma);
}

double median_squared_distance(const SquaredDistanceMatrix& dist) {
    const Eigen::Index n = dist.values.rows();
    std::vector<double> offdiag;
    offdiag.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index k = i + 1; k < n; ++k) offdiag.push_back(dist.values(i, k));
    if (offdiag.empty()) throw DegenerateInput("median of an empty distance set");
    const std::size_t mid = offdiag.size() / 2;
    std::nth_element(offdiag.begin(), offdiag.begin() + mid, offdiag.end());
    double med = offdiag[mid];
    if (offdiag.size() % 2 == 0) {
        std::nth_element(offdiag.begin(), offdiag.begin() + mid - 1, offdiag.begin() + mid);
        med = 0.5 * (med + offdiag[mid - 1]);
    }
    return med;
}

std::vector<double> log_grid(double lo, double hi, int k) {
    if (k <= 0) throw EmptyGrid("log grid with k <= 0 points");
    if (!(lo > 0.0) || !(hi > 0.0) || !(lo <= hi)) {
        throw EmptyGrid("log grid bounds must satisfy 0 < lo <= hi");
    }
    std::vector<double> g;
    g.reserve(static_cast<std::size_t>(k));
    if (k == 1) {
        g.push_back(lo);
        return g;
    }
    const double llo = std::log(lo), lhi = std::log(hi);
    for (int i = 0; i < k; ++i) {
        const double f = static_cast<double>(i) / static_cast<double>(k - 1);
        g.push_back(std::exp(llo + f * (lhi - llo)));
    }
    g.front() = lo;
    g.back() = hi;
    return g;
}

std::vector<double> default_grid(const SquaredDistanceMatrix& dist, int k) {
    const double med = median_squared_distance(dist);
    return log_grid(1e-4 * med, 1e4 * med, k);
}

EnergyProfile energy_profile(const EmbedContext& ctx, const std::vector<double>& grid,
                             PerimeterNorm norm) {
    if (grid.empty()) throw EmptyGrid("energy profile over an empty grid");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!(grid[i] > 0.0) || (i > 0 && !(grid[i] > grid[i - 1]))) {
            throw EmptyGrid("energy profile grid must be positive and strictly increasing");
        }
    }
    EnergyProfile prof;
    prof.seed = ctx.gamma.seed;
    {
        char buf[96];
        std::snprintf(buf, sizeof(buf), "log[%.17g,%.17g]x%zu", grid.front(), grid.back(),
                      grid.size());
        prof.grid_spec = buf;
    }
    prof.samples.reserve(grid.size());
    for (double sigma : grid) {
        EnergySample s;
        s.sigma = sigma;
        try {
            const Embedding zed = embed(ctx, sigma);
            if (zed.degenerate) {
                s.degenerate = true;
            } else {
                s.energy = energy(zed);
                s.perimeter = perimeter(zed, norm);
            }
        } catch (const DegenerateKernel&) {
            s.degenerate = true;
        } catch (const RankCollapse&) {
            s.degenerate = true;
        }
        prof.samples.push_back(s);
    }
    return prof;
}

EnergyProfile energy_profile(const OrderedDataset& data, const AnchorMatrix& gamma,
                             const std::vector<double>& grid, PerimeterNorm norm) {
    return energy_profile(make_embed_context(data, gamma), grid, norm);
}

}  // namespace circ
