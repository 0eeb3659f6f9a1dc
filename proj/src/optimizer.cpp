#include "circ/optimizer.hpp"

#include <cmath>
#include <map>
#include <memory>

#include "circ/energy.hpp"
#include "circ/errors.hpp"
#include "circ/linalg.hpp"

namespace circ {

namespace {

constexpr double kArmijo = 1e-4;
constexpr double kTunnelMargin = 1e-12;     // required strict energy improvement
constexpr double kTunnelExclusion = 1e-6;   // ball radius around sigma_l, relative
constexpr double kFlatStep = 1e-12;         // grid step below this is "flat", not monotone

void require_resolved(const OptimizerConfig& cfg) {
    if (!(cfg.sigma_lo > 0.0) || !(cfg.sigma_hi > cfg.sigma_lo)) {
        throw Error("optimizer bounds must be resolved: 0 < sigma_lo < sigma_hi");
    }
    if (cfg.init_grid_size < 2) throw Error("init grid needs at least 2 points");
    if (cfg.tunneling_lambda_schedule.empty()) throw Error("empty tunneling schedule");
}

// Energy falls strictly (by more than kFlatStep per grid step) toward the
// given bound across the final decade of the scan grid. Degenerate samples
// in the decade leave monotonicity uncertified.
bool monotone_toward_bound(const std::vector<double>& grid,
                           const std::vector<ObjectiveEval>& ev, bool toward_lo) {
    const std::size_t k = grid.size();
    bool any = false;
    for (std::size_t j = 0; j + 1 < k; ++j) {
        const bool in_decade = toward_lo ? (grid[j + 1] <= grid.front() * 10.0)
                                         : (grid[j] >= grid.back() / 10.0);
        if (!in_decade) continue;
        if (ev[j].degenerate || ev[j + 1].degenerate) return false;
        const double toward = toward_lo ? (ev[j + 1].energy - ev[j].energy)
                                        : (ev[j].energy - ev[j + 1].energy);
        if (!(toward > kFlatStep)) return false;
        any = true;
    }
    return any;
}

}  // namespace

Objective make_energy_objective(const EmbedContext& ctx) {
    auto shared = std::make_shared<EmbedContext>(ctx);
    return [shared](double sigma) -> ObjectiveEval {
        ObjectiveEval out;
        EmbedEval ev;
        try {
            ev = eval_embedding_with_derivative(*shared, sigma);
        } catch (const DegenerateKernel&) {
            out.degenerate = true;
            return out;
        } catch (const RankCollapse&) {
            out.degenerate = true;
            return out;
        }
        if (ev.degenerate) {
            out.degenerate = true;
            return out;
        }
        const Eigen::Index n = ev.z.rows();
        for (Eigen::Index i = 0; i < n; ++i) {
            const Eigen::Index next = (i + 1) % n;
            const Eigen::RowVector2d e = ev.z.row(next) - ev.z.row(i);
            const Eigen::RowVector2d de = ev.dz.row(next) - ev.dz.row(i);
            out.energy += e.squaredNorm();
            out.denergy += 2.0 * e.dot(de);
        }
        return out;
    };
}

DescentResult gradient_descent(const Objective& f, double sigma0, const OptimizerConfig& cfg) {
    require_resolved(cfg);
    const double t_lo = std::log(cfg.sigma_lo);
    const double t_hi = std::log(cfg.sigma_hi);
    auto clamp_t = [&](double t) { return std::min(std::max(t, t_lo), t_hi); };

    double t = clamp_t(std::log(sigma0));
    ObjectiveEval cur = f(std::exp(t));
    if (cur.degenerate) {
        throw DegenerateObjective("objective degenerate at descent start sigma = " +
                                  std::to_string(sigma0));
    }
    if (!std::isfinite(cur.energy) || !std::isfinite(cur.denergy)) {
        throw NonFiniteStep("objective non-finite at descent start sigma = " +
                            std::to_string(sigma0));
    }
    double grad_t = cur.denergy * std::exp(t);  // dE/dt = sigma dE/dsigma

    for (int iter = 0; iter < cfg.max_descent_iters; ++iter) {
        if (std::abs(grad_t) < cfg.descent_tolerance) break;
        const double dir = grad_t > 0.0 ? -1.0 : 1.0;
        bool accepted = false;
        for (double alpha = 1.0; alpha >= 1e-16; alpha *= 0.5) {
            const double t_new = clamp_t(t + alpha * dir);
            if (t_new == t) break;  // pinned against a bound in this direction
            const double step = std::abs(t_new - t);
            const ObjectiveEval probe = f(std::exp(t_new));
            if (probe.degenerate || !std::isfinite(probe.energy)) continue;
            if (probe.energy <= cur.energy - kArmijo * step * std::abs(grad_t)) {
                t = t_new;
                cur = probe;
                grad_t = std::isfinite(cur.denergy) ? cur.denergy * std::exp(t) : 0.0;
                accepted = true;
                break;
            }
        }
        if (!accepted) break;
    }
    DescentResult out;
    out.sigma = std::exp(t);
    out.energy = cur.energy;
    out.grad_t = grad_t;
    out.hit_bound = (t == t_lo || t == t_hi);
    return out;
}

std::optional<TunnelProposal> tunneling(const Objective& f, double sigma_l,
                                        const OptimizerConfig& cfg) {
    require_resolved(cfg);
    const ObjectiveEval at_l = f(sigma_l);
    if (at_l.degenerate) return std::nullopt;
    const double e_l = at_l.energy;
    const std::vector<double> grid = log_grid(cfg.sigma_lo, cfg.sigma_hi, cfg.init_grid_size);

    struct Candidate {
        double sigma;
        double energy;
        double gap;  // |sigma - sigma_l|
    };
    std::vector<Candidate> cands;
    cands.reserve(grid.size());
    for (double s : grid) {
        const double gap = std::abs(s - sigma_l);
        if (gap <= kTunnelExclusion * sigma_l) continue;
        const ObjectiveEval ev = f(s);
        if (ev.degenerate || !std::isfinite(ev.energy)) continue;
        cands.push_back({s, ev.energy, gap});
    }
    if (cands.empty()) return std::nullopt;

    for (double lambda : cfg.tunneling_lambda_schedule) {
        const Candidate* best = nullptr;
        double best_t = 0.0;
        for (const Candidate& c : cands) {
            const double t = (c.energy - e_l) / std::pow(c.gap, lambda);
            if (!std::isfinite(t)) continue;
            if (best == nullptr || t < best_t) {
                best = &c;
                best_t = t;
            }
        }
        if (best != nullptr && best->energy < e_l - kTunnelMargin) {
            return TunnelProposal{best->sigma, best->energy, lambda};
        }
    }
    return std::nullopt;
}

BandwidthEstimate estimate_bandwidth(const Objective& f, const OptimizerConfig& cfg) {
    require_resolved(cfg);
    const std::vector<double> grid = log_grid(cfg.sigma_lo, cfg.sigma_hi, cfg.init_grid_size);

    BandwidthEstimate est;
    std::map<double, ObjectiveEval> cache;
    std::string phase = "grid";
    const Objective cf = [&](double sigma) -> ObjectiveEval {
        auto it = cache.find(sigma);
        if (it != cache.end()) return it->second;
        const ObjectiveEval ev = f(sigma);
        cache.emplace(sigma, ev);
        if (!ev.degenerate && std::isfinite(ev.energy)) {
            est.trace.push_back({phase, sigma, ev.energy});
        }
        return ev;
    };

    std::vector<ObjectiveEval> gev;
    gev.reserve(grid.size());
    int best_i = -1;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        gev.push_back(cf(grid[i]));
        if (!gev[i].degenerate && std::isfinite(gev[i].energy) &&
            (best_i < 0 || gev[i].energy < gev[static_cast<std::size_t>(best_i)].energy)) {
            best_i = static_cast<int>(i);
        }
    }
    if (best_i < 0) throw AllDegenerate("every sigma in the scan grid is degenerate");

    double cur = grid[static_cast<std::size_t>(best_i)];
    for (int round = 0; round < cfg.max_rounds; ++round) {
        phase = "descent";
        const DescentResult d = gradient_descent(cf, cur, cfg);
        phase = "tunnel";
        const auto prop = tunneling(cf, d.sigma, cfg);
        if (!prop) break;
        cur = prop->sigma;
    }

    // The estimate is the best of everything evaluated; the recorded trace
    // contains exactly the non-degenerate evaluations, so the trace minimum
    // and this minimum agree.
    double best_sigma = 0.0;
    double best_e = 0.0;
    bool have = false;
    for (const auto& [s, ev] : cache) {
        if (ev.degenerate || !std::isfinite(ev.energy)) continue;
        if (!have || ev.energy < best_e) {
            best_sigma = s;
            best_e = ev.energy;
            have = true;
        }
    }

    const bool near_lo = best_sigma <= grid[1] * (1.0 + 1e-12);
    const bool near_hi = best_sigma >= grid[grid.size() - 2] * (1.0 - 1e-12);
    bool boundary_monotone = false;
    if (near_lo) {
        boundary_monotone = monotone_toward_bound(grid, gev, true);
    } else if (near_hi) {
        boundary_monotone = monotone_toward_bound(grid, gev, false);
    }
    est.exists = !((near_lo || near_hi) && boundary_monotone);
    if (est.exists) {
        est.sigma_star = best_sigma;
        est.energy_at_star = best_e;
    }
    return est;
}

OptimizerConfig resolve_bounds(const OptimizerConfig& cfg, const SquaredDistanceMatrix& dist) {
    OptimizerConfig out = cfg;
    if (!(out.sigma_lo > 0.0) || !(out.sigma_hi > 0.0)) {
        const double med = median_squared_distance(dist);
        if (!(med > 0.0)) throw DegenerateInput("median pairwise squared distance is zero");
        if (!(out.sigma_lo > 0.0)) out.sigma_lo = 1e-4 * med;
        if (!(out.sigma_hi > 0.0)) out.sigma_hi = 1e4 * med;
    }
    if (!(out.sigma_lo < out.sigma_hi)) {
        throw Error("sigma bounds must satisfy sigma_lo < sigma_hi");
    }
    return out;
}

BandwidthEstimate estimate_bandwidth(const OrderedDataset& data, const AnchorMatrix& gamma,
                                     const OptimizerConfig& cfg) {
    const EmbedContext ctx = make_embed_context(data, gamma);
    const OptimizerConfig resolved = resolve_bounds(cfg, ctx.dist);
    return estimate_bandwidth(make_energy_objective(ctx), resolved);
}

}  // namespace circ
