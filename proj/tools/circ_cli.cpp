#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "circ/data.hpp"
#include "circ/energy.hpp"
#include "circ/errors.hpp"
#include "circ/geometry.hpp"
#include "circ/linalg.hpp"
#include "circ/optimizer.hpp"
#include "circ/report.hpp"

namespace {

struct CommonFlags {
    std::uint64_t seed = 0;
    double eps = 1e-9;
    double sigma_min = 0.0;  // 0 = derive from data scale
    double sigma_max = 0.0;
    int grid = 0;  // 0 = command default
    std::string out;
    std::string format = "csv";
    bool has_header = false;
    std::string config;  // consumed before parsing; registered for --help only
};

void add_common(CLI::App* sub, CommonFlags& g, const std::string& default_format,
                const std::vector<std::string>& formats) {
    g.format = default_format;
    sub->add_option("--seed", g.seed, "random seed for the anchor matrix");
    sub->add_option("--eps", g.eps, "relative geometry tolerance")
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--sigma-min", g.sigma_min, "lower sigma bound (0 = auto)")
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--sigma-max", g.sigma_max, "upper sigma bound (0 = auto)")
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--grid", g.grid, "grid size (0 = command default)")
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--out", g.out, "output path (default: stdout)");
    sub->add_option("--format", g.format, "output format")->check(CLI::IsMember(formats));
    sub->add_option("--config", g.config,
                    "plain key=value file spliced into the flags at this position");
}

// Replaces each `--config FILE` (or --config=FILE) with the file's key=value
// lines as --key=value tokens, in place. Blank lines and '#' comments are
// skipped. Later flags override earlier ones, so flags written after
// --config beat the file and the file beats flags written before it.
// Positional arguments cannot come from a config file.
std::vector<std::string> expand_config_args(int argc, char** argv) {
    std::vector<std::string> out;
    out.reserve(static_cast<std::size_t>(argc));
    for (int i = 0; i < argc; ++i) {
        const std::string tok = argv[i];
        std::string path;
        if (tok == "--config" && i + 1 < argc) {
            path = argv[++i];
        } else if (tok.rfind("--config=", 0) == 0) {
            path = tok.substr(9);
        } else {
            out.push_back(tok);
            continue;
        }
        std::ifstream f(path);
        if (!f) {
            std::cerr << "error: cannot read config file: " << path << "\n";
            std::exit(2);
        }
        std::string line;
        int lineno = 0;
        while (std::getline(f, line)) {
            ++lineno;
            const auto b = line.find_first_not_of(" \t\r");
            if (b == std::string::npos) continue;
            const auto e = line.find_last_not_of(" \t\r");
            const std::string item = line.substr(b, e - b + 1);
            if (item[0] == '#') continue;
            const auto eq = item.find('=');
            if (eq == std::string::npos || eq == 0) {
                std::cerr << "error: " << path << ':' << lineno << ": expected key=value\n";
                std::exit(2);
            }
            const auto key_end = item.find_last_not_of(" \t", eq - 1);
            const auto val_begin = item.find_first_not_of(" \t", eq + 1);
            const std::string key = item.substr(0, key_end + 1);
            const std::string value =
                val_begin == std::string::npos ? "" : item.substr(val_begin);
            out.push_back("--" + key + "=" + value);
        }
    }
    return out;
}

void write_output(const std::string& out, const std::string& content) {
    if (out.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream f(out);
    if (!f) throw circ::ParseError("cannot open file for writing: " + out);
    f << content;
    if (!f) throw circ::ParseError("write failed: " + out);
}

std::string comment_block(std::uint64_t seed, const std::string& flags) {
    std::string s;
    for (const std::string& line : circ::output_header(seed, flags)) s += "# " + line + "\n";
    return s;
}

std::string xml_comment_block(std::uint64_t seed, const std::string& flags) {
    std::string s;
    for (const std::string& line : circ::output_header(seed, flags)) {
        s += "<!-- " + line + " -->\n";
    }
    return s;
}

// Canonical resolved-flag string; hashed into every output header.
std::string digest_source(const std::string& cmd, const CommonFlags& g,
                          const std::string& extra) {
    std::ostringstream s;
    s << "cmd=" << cmd << ";seed=" << g.seed << ";eps=" << circ::format_g17(g.eps)
      << ";sigma-min=" << circ::format_g17(g.sigma_min)
      << ";sigma-max=" << circ::format_g17(g.sigma_max) << ";grid=" << g.grid
      << ";format=" << g.format << ";out=" << g.out << ";header=" << g.has_header;
    if (!extra.empty()) s << ';' << extra;
    return s.str();
}

circ::OptimizerConfig make_config(const CommonFlags& g) {
    circ::OptimizerConfig cfg;
    cfg.seed = g.seed;
    cfg.sigma_lo = g.sigma_min;
    cfg.sigma_hi = g.sigma_max;
    if (g.grid > 0) cfg.init_grid_size = g.grid;
    return cfg;
}

std::string dataset_csv(const circ::OrderedDataset& data) {
    std::ostringstream out;
    for (Eigen::Index i = 0; i < data.n(); ++i) {
        for (Eigen::Index j = 0; j < data.d(); ++j) {
            out << (j ? "," : "") << circ::format_g17(data.points(i, j));
        }
        out << "\n";
    }
    return out.str();
}

int run_generate(const CommonFlags& g, const std::string& kind, circ::GeneratorSpec spec) {
    if (kind == "circle") spec.kind = circ::DatasetKind::Circle;
    else if (kind == "toroidal_helix") spec.kind = circ::DatasetKind::ToroidalHelix;
    else spec.kind = circ::DatasetKind::GaussianCloud;
    spec.seed = g.seed;
    const circ::OrderedDataset data = circ::generate(spec);
    std::ostringstream extra;
    extra << "kind=" << kind << ";n=" << spec.n << ";noise=" << circ::format_g17(spec.noise)
          << ";windings=" << spec.windings << ";dim=" << spec.dim;
    write_output(g.out, comment_block(g.seed, digest_source("generate", g, extra.str())) +
                            dataset_csv(data));
    return 0;
}

int run_smooth(const CommonFlags& g, const std::string& input, const circ::SmootherConfig& cfg) {
    const circ::OrderedDataset data = circ::load_dataset(input, g.has_header);
    const circ::OrderedDataset smoothed = circ::lowess_smooth(data, cfg);
    std::ostringstream extra;
    extra << "input=" << input << ";alpha=" << circ::format_g17(cfg.alpha)
          << ";degree=" << cfg.degree;
    write_output(g.out, comment_block(g.seed, digest_source("smooth", g, extra.str())) +
                            dataset_csv(smoothed));
    return 0;
}

int run_embed(const CommonFlags& g, const std::string& input, double sigma) {
    const circ::OrderedDataset data = circ::load_dataset(input, g.has_header);
    const circ::AnchorMatrix gamma = circ::sample_gamma(data.n(), g.seed);
    const circ::Embedding emb = circ::embed(data, gamma, sigma);
    if (emb.degenerate) throw circ::DegenerateInput("embedding degenerate at this sigma");
    std::ostringstream extra;
    extra << "input=" << input << ";sigma=" << circ::format_g17(sigma);
    const std::string flags = digest_source("embed", g, extra.str());
    if (g.format == "svg") {
        write_output(g.out, xml_comment_block(g.seed, flags) + circ::svg_polygon(emb.z));
    } else {
        write_output(g.out, comment_block(g.seed, flags) + circ::embedding_csv(emb.z));
    }
    return 0;
}

int run_energy_curve(const CommonFlags& g, const std::string& input) {
    const circ::OrderedDataset data = circ::load_dataset(input, g.has_header);
    const circ::AnchorMatrix gamma = circ::sample_gamma(data.n(), g.seed);
    const circ::EmbedContext ctx = circ::make_embed_context(data, gamma);
    const int k = g.grid > 0 ? g.grid : 200;
    const double med = circ::median_squared_distance(ctx.dist);
    const double lo = g.sigma_min > 0.0 ? g.sigma_min : 1e-4 * med;
    const double hi = g.sigma_max > 0.0 ? g.sigma_max : 1e4 * med;
    const circ::EnergyProfile prof = circ::energy_profile(ctx, circ::log_grid(lo, hi, k));
    std::ostringstream extra;
    extra << "input=" << input << ";lo=" << circ::format_g17(lo)
          << ";hi=" << circ::format_g17(hi) << ";k=" << k;
    const std::string flags = digest_source("energy-curve", g, extra.str());
    if (g.format == "svg") {
        write_output(g.out, xml_comment_block(g.seed, flags) + circ::svg_energy_curves(prof));
    } else {
        write_output(g.out, comment_block(g.seed, flags) + circ::profile_csv(prof));
    }
    return 0;
}

int run_estimate(const CommonFlags& g, const std::string& input) {
    const circ::OrderedDataset data = circ::load_dataset(input, g.has_header);
    const circ::AnchorMatrix gamma = circ::sample_gamma(data.n(), g.seed);
    const circ::EmbedContext ctx = circ::make_embed_context(data, gamma);
    const circ::OptimizerConfig cfg = circ::resolve_bounds(make_config(g), ctx.dist);
    const circ::BandwidthEstimate est =
        circ::estimate_bandwidth(circ::make_energy_objective(ctx), cfg);
    std::ostringstream extra;
    extra << "input=" << input << ";lo=" << circ::format_g17(cfg.sigma_lo)
          << ";hi=" << circ::format_g17(cfg.sigma_hi) << ";k=" << cfg.init_grid_size;
    const std::string flags = digest_source("estimate", g, extra.str());
    if (g.format == "csv") {
        write_output(g.out, comment_block(g.seed, flags) + circ::trace_csv(est.trace));
        return 0;
    }
    std::vector<std::pair<std::string, std::string>> items;
    items.emplace_back("exists", est.exists ? "true" : "false");
    if (est.sigma_star) items.emplace_back("sigma_star", circ::format_g17(*est.sigma_star));
    if (est.energy_at_star) {
        items.emplace_back("energy_at_star", circ::format_g17(*est.energy_at_star));
    }
    items.emplace_back("trace_points", std::to_string(est.trace.size()));
    items.emplace_back("sigma_lo", circ::format_g17(cfg.sigma_lo));
    items.emplace_back("sigma_hi", circ::format_g17(cfg.sigma_hi));
    write_output(g.out, comment_block(g.seed, flags) + circ::make_report(items));
    return 0;
}

int run_test_circularity(const CommonFlags& g, const std::string& input) {
    const circ::OrderedDataset data = circ::load_dataset(input, g.has_header);
    const circ::OptimizerConfig cfg = make_config(g);
    const circ::CircularityVerdict v = circ::circularity_test(data, cfg, g.eps);
    std::ostringstream extra;
    extra << "input=" << input;
    const std::string flags = digest_source("test-circularity", g, extra.str());
    std::vector<std::pair<std::string, std::string>> items;
    items.emplace_back("accept_h0", v.accept_h0 ? "true" : "false");
    switch (v.reason) {
        case circ::CircularityReason::NoMinimizer:
            items.emplace_back("reason", "NoMinimizer");
            break;
        case circ::CircularityReason::NotSimplePolygon:
            items.emplace_back("reason", "NotSimplePolygon");
            break;
        case circ::CircularityReason::SimplePolygon:
            items.emplace_back("reason", "SimplePolygon");
            break;
    }
    if (v.sigma_star) items.emplace_back("sigma_star", circ::format_g17(*v.sigma_star));
    if (v.polygon) {
        const char* cls = v.polygon->classification == circ::PolygonClass::Simple
                              ? "Simple"
                              : (v.polygon->classification == circ::PolygonClass::SelfIntersecting
                                     ? "SelfIntersecting"
                                     : "Degenerate");
        items.emplace_back("classification", cls);
        items.emplace_back("witness_count", std::to_string(v.polygon->witnesses.size()));
        std::ostringstream w;
        for (std::size_t i = 0; i < v.polygon->witnesses.size(); ++i) {
            if (i) w << ' ';
            w << v.polygon->witnesses[i].first << '-' << v.polygon->witnesses[i].second;
        }
        items.emplace_back("witnesses", w.str());
        items.emplace_back("epsilon", circ::format_g17(v.polygon->epsilon));
    }
    items.emplace_back("seed", std::to_string(v.seed));
    write_output(g.out, comment_block(g.seed, flags) + circ::make_report(items));
    return v.accept_h0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"embeds ordered datasets in the plane and tests topological circularity"};
    app.require_subcommand(1);
    // later occurrences win so config-file values stay overridable
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

    CommonFlags gen_g, smooth_g, embed_g, curve_g, est_g, test_g;

    auto* gen = app.add_subcommand("generate", "emit a synthetic ordered dataset");
    std::string kind;
    circ::GeneratorSpec spec;
    long long gen_n = 0;
    gen->add_option("--kind", kind, "dataset family")
        ->required()
        ->check(CLI::IsMember({"circle", "toroidal_helix", "gaussian_cloud"}));
    gen->add_option("--n", gen_n, "number of points")->required()->check(CLI::Range(3LL, (1LL << 40)));
    gen->add_option("--noise", spec.noise, "isotropic Gaussian noise std")
        ->check(CLI::NonNegativeNumber);
    gen->add_option("--windings", spec.windings, "helix windings")->check(CLI::PositiveNumber);
    long long gen_dim = 5;
    gen->add_option("--dim", gen_dim, "cloud ambient dimension")->check(CLI::PositiveNumber);
    add_common(gen, gen_g, "csv", {"csv"});

    auto* smooth = app.add_subcommand("smooth", "column-wise local regression smoothing");
    std::string smooth_in;
    circ::SmootherConfig smooth_cfg;
    smooth->add_option("input", smooth_in, "dataset csv")->required();
    smooth->add_option("--alpha", smooth_cfg.alpha, "window fraction in (0,1]")
        ->check(CLI::Range(1e-9, 1.0));
    smooth->add_option("--degree", smooth_cfg.degree, "local fit degree")
        ->check(CLI::Range(0, 1));
    smooth->add_flag("--has-header", smooth_g.has_header, "skip one header line");
    add_common(smooth, smooth_g, "csv", {"csv"});

    auto* embed = app.add_subcommand("embed", "embed at a fixed sigma");
    std::string embed_in;
    double embed_sigma = 0.0;
    embed->add_option("input", embed_in, "dataset csv")->required();
    embed->add_option("--sigma", embed_sigma, "kernel bandwidth")
        ->required()
        ->check(CLI::PositiveNumber);
    embed->add_flag("--has-header", embed_g.has_header, "skip one header line");
    add_common(embed, embed_g, "csv", {"csv", "svg"});

    auto* curve = app.add_subcommand("energy-curve", "sample the energy profile over sigma");
    std::string curve_in;
    curve->add_option("input", curve_in, "dataset csv")->required();
    curve->add_flag("--has-header", curve_g.has_header, "skip one header line");
    add_common(curve, curve_g, "csv", {"csv", "svg"});

    auto* est = app.add_subcommand("estimate", "estimate the optimal bandwidth");
    std::string est_in;
    est->add_option("input", est_in, "dataset csv")->required();
    est->add_flag("--has-header", est_g.has_header, "skip one header line");
    add_common(est, est_g, "report", {"report", "csv"});

    auto* test = app.add_subcommand("test-circularity", "full hypothesis test");
    std::string test_in;
    test->add_option("input", test_in, "dataset csv")->required();
    test->add_flag("--has-header", test_g.has_header, "skip one header line");
    add_common(test, test_g, "report", {"report"});

    const std::vector<std::string> expanded = expand_config_args(argc, argv);
    std::vector<const char*> expanded_argv;
    expanded_argv.reserve(expanded.size());
    for (const std::string& s : expanded) expanded_argv.push_back(s.c_str());

    try {
        app.parse(static_cast<int>(expanded_argv.size()), expanded_argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (gen->parsed()) {
            spec.n = static_cast<Eigen::Index>(gen_n);
            spec.dim = static_cast<Eigen::Index>(gen_dim);
            return run_generate(gen_g, kind, spec);
        }
        if (smooth->parsed()) return run_smooth(smooth_g, smooth_in, smooth_cfg);
        if (embed->parsed()) return run_embed(embed_g, embed_in, embed_sigma);
        if (curve->parsed()) return run_energy_curve(curve_g, curve_in);
        if (est->parsed()) return run_estimate(est_g, est_in);
        if (test->parsed()) return run_test_circularity(test_g, test_in);
    } catch (const circ::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
