#include "circ/data.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numeric>

#include "circ/errors.hpp"
#include "circ/rng.hpp"

namespace circ {

namespace {

constexpr double kTau = 6.283185307179586476925286766559;

void require_n(const GeneratorSpec& spec) {
    if (spec.n < 3) throw DegenerateInput("generator needs n >= 3");
    if (spec.noise < 0.0) throw DegenerateInput("noise must be nonnegative");
}

void add_noise(Eigen::MatrixXd& pts, double noise, NormalSampler& rng) {
    if (noise == 0.0) return;  // draw nothing: noiseless output is sampler-independent
    for (Eigen::Index i = 0; i < pts.rows(); ++i)
        for (Eigen::Index j = 0; j < pts.cols(); ++j) pts(i, j) += noise * rng.normal();
}

}  // namespace

OrderedDataset gen_circle(const GeneratorSpec& spec) {
    require_n(spec);
    Eigen::MatrixXd pts(spec.n, 2);
    for (Eigen::Index r = 0; r < spec.n; ++r) {
        const double t = kTau * static_cast<double>(r) / static_cast<double>(spec.n);
        pts(r, 0) = std::cos(t);
        pts(r, 1) = std::sin(t);
    }
    NormalSampler rng(spec.seed);
    add_noise(pts, spec.noise, rng);
    return {pts};
}

OrderedDataset gen_toroidal_helix(const GeneratorSpec& spec) {
    require_n(spec);
    if (spec.windings < 1) throw DegenerateInput("helix needs windings >= 1");
    const double w = static_cast<double>(spec.windings);
    Eigen::MatrixXd pts(spec.n, 3);
    for (Eigen::Index r = 0; r < spec.n; ++r) {
        const double t = kTau * static_cast<double>(r) / static_cast<double>(spec.n);
        const double tube = 2.0 + std::cos(w * t);
        pts(r, 0) = tube * std::cos(t);
        pts(r, 1) = tube * std::sin(t);
        pts(r, 2) = std::sin(w * t);
    }
    NormalSampler rng(spec.seed);
    add_noise(pts, spec.noise, rng);
    return {pts};
}

OrderedDataset gen_gaussian_cloud(const GeneratorSpec& spec) {
    require_n(spec);
    if (spec.dim < 1) throw DegenerateInput("cloud needs dim >= 1");
    Eigen::MatrixXd pts(spec.n, spec.dim);
    NormalSampler rng(spec.seed);
    for (Eigen::Index i = 0; i < spec.n; ++i)
        for (Eigen::Index j = 0; j < spec.dim; ++j) pts(i, j) = rng.normal();
    return {pts};
}

OrderedDataset generate(const GeneratorSpec& spec) {
    switch (spec.kind) {
        case DatasetKind::Circle:
            return gen_circle(spec);
        case DatasetKind::ToroidalHelix:
            return gen_toroidal_helix(spec);
        case DatasetKind::GaussianCloud:
            return gen_gaussian_cloud(spec);
    }
    throw Error("unknown dataset kind");
}

OrderedDataset lift_to_dim(const OrderedDataset& data, Eigen::Index target_d,
                           std::uint64_t seed) {
    const Eigen::Index d = data.d();
    if (target_d < d) throw DimensionError("lift target below current dimension");
    if (target_d == d) return data;
    NormalSampler rng(seed);
    Eigen::MatrixXd m(target_d, d);
    for (Eigen::Index i = 0; i < target_d; ++i)
        for (Eigen::Index j = 0; j < d; ++j) m(i, j) = rng.normal();
    // Thin QR: columns of q are orthonormal in R^target_d, so q^T has
    // orthonormal rows and X -> X q^T preserves all pairwise distances.
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(m);
    const Eigen::MatrixXd q =
        qr.householderQ() * Eigen::MatrixXd::Identity(target_d, d);
    return {data.points * q.transpose()};
}

OrderedDataset lowess_smooth(const OrderedDataset& data, const SmootherConfig& cfg) {
    if (!(cfg.alpha > 0.0 && cfg.alpha <= 1.0)) throw Error("alpha must be in (0, 1]");
    if (cfg.degree != 0 && cfg.degree != 1) throw Error("degree must be 0 or 1");
    const Eigen::Index n = data.n();
    const Eigen::Index window =
        static_cast<Eigen::Index>(std::ceil(cfg.alpha * static_cast<double>(n)));
    if (window < cfg.degree + 2) {
        throw WindowTooSmall("smoother window must hold at least degree + 2 points");
    }

    Eigen::MatrixXd out(n, data.d());
    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
        // Nearest `window` indices by (|j - i|, j).
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [i](Eigen::Index a, Eigen::Index b) {
            const Eigen::Index da = std::abs(a - i), db = std::abs(b - i);
            return da != db ? da < db : a < b;
        });
        const double dmax = static_cast<double>(
            std::abs(order[static_cast<std::size_t>(window) - 1] - i));
        double sw = 0.0, swx = 0.0, swxx = 0.0;
        std::vector<double> weights(static_cast<std::size_t>(window));
        for (Eigen::Index k = 0; k < window; ++k) {
            const Eigen::Index j = order[static_cast<std::size_t>(k)];
            const double u = dmax > 0.0 ? static_cast<double>(std::abs(j - i)) / dmax : 0.0;
            const double t = 1.0 - u * u * u;
            const double wgt = t * t * t;
            weights[static_cast<std::size_t>(k)] = wgt;
            const double x = static_cast<double>(j - i);
            sw += wgt;
            swx += wgt * x;
            swxx += wgt * x * x;
        }
        for (Eigen::Index c = 0; c < data.d(); ++c) {
            double swy = 0.0, swxy = 0.0;
            for (Eigen::Index k = 0; k < window; ++k) {
                const Eigen::Index j = order[static_cast<std::size_t>(k)];
                const double wgt = weights[static_cast<std::size_t>(k)];
                const double x = static_cast<double>(j - i);
                swy += wgt * data.points(j, c);
                swxy += wgt * x * data.points(j, c);
            }
            double value = swy / sw;  // degree 0, and the singular fallback
            if (cfg.degree == 1) {
                const double det = sw * swxx - swx * swx;
                if (std::abs(det) > 1e-12 * (sw * swxx + swx * swx + 1e-300)) {
                    // Intercept of the weighted line at the centered abscissa x = 0.
                    value = (swxx * swy - swx * swxy) / det;
                }
            }
            out(i, c) = value;
        }
    }
    return {out};
}

namespace {

bool is_comment_or_blank(const std::string& line) {
    for (char ch : line) {
        if (std::isspace(static_cast<unsigned char>(ch))) continue;
        return ch == '#';
    }
    return true;  // blank
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> cells;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            cells.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    cells.push_back(cur);
    return cells;
}

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

}  // namespace

OrderedDataset load_dataset(const std::string& path, bool has_header) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file: " + path);
    std::vector<std::vector<double>> rows;
    std::string line;
    long file_row = 0;
    long cols = -1;
    bool header_pending = has_header;
    while (std::getline(in, line)) {
        ++file_row;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (is_comment_or_blank(line)) continue;
        if (header_pending) {
            header_pending = false;
            continue;
        }
        const std::vector<std::string> cells = split_csv(line);
        if (cols < 0) {
            cols = static_cast<long>(cells.size());
        } else if (static_cast<long>(cells.size()) != cols) {
            throw RaggedRows("row has " + std::to_string(cells.size()) + " cells, expected " +
                                 std::to_string(cols),
                             file_row);
        }
        std::vector<double> row;
        row.reserve(cells.size());
        for (std::size_t c = 0; c < cells.size(); ++c) {
            const std::string cell = trim(cells[c]);
            const char* begin = cell.c_str();
            char* end = nullptr;
            const double v = std::strtod(begin, &end);
            if (cell.empty() || end != begin + cell.size() || !std::isfinite(v)) {
                throw NonNumericCell("cell is not a finite number: '" + cells[c] + "'",
                                     file_row, static_cast<long>(c) + 1);
            }
            row.push_back(v);
        }
        rows.push_back(std::move(row));
    }
    if (rows.size() < 3) {
        throw ParseError("dataset needs at least 3 rows, got " + std::to_string(rows.size()));
    }
    OrderedDataset data;
    data.points.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (long c = 0; c < cols; ++c)
            data.points(static_cast<Eigen::Index>(i), c) = rows[i][static_cast<std::size_t>(c)];
    return data;
}

void save_dataset(const OrderedDataset& data, const std::string& path,
                  const std::vector<std::string>& comments, const std::string& header) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open file for writing: " + path);
    for (const std::string& c : comments) out << "# " << c << "\n";
    if (!header.empty()) out << header << "\n";
    char buf[40];
    for (Eigen::Index i = 0; i < data.n(); ++i) {
        for (Eigen::Index j = 0; j < data.d(); ++j) {
            std::snprintf(buf, sizeof(buf), "%.17g", data.points(i, j));
            out << (j ? "," : "") << buf;
        }
        out << "\n";
    }
    if (!out) throw ParseError("write failed: " + path);
}

}  // namespace circ
