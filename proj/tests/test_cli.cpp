// Drives the installed binary end to end. The harness passes the binary path
// as the first argument; everything after it goes to the test framework.
#define DOCTEST_CONFIG_IMPLEMENT
#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "circ/data.hpp"
#include "circ/geometry.hpp"
#include "doctest.h"

namespace {

std::string g_binary;
std::filesystem::path g_dir;

int run_cli(const std::string& args, const std::filesystem::path& capture) {
    const std::string cmd = g_binary + " " + args + " > " + capture.string() + " 2>&1";
    const int rc = std::system(cmd.c_str());
    REQUIRE(rc != -1);
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

std::filesystem::path ensure_dataset(const std::string& name, const std::string& gen_args) {
    const auto p = g_dir / name;
    if (!std::filesystem::exists(p)) {
        REQUIRE(run_cli("generate " + gen_args + " --out " + p.string(),
                        g_dir / (name + ".gen.log")) == 0);
    }
    return p;
}

struct CurveRow {
    double sigma = 0.0;
    std::optional<double> energy;
};

std::vector<CurveRow> read_curve(const std::filesystem::path& p) {
    std::ifstream f(p);
    std::vector<CurveRow> rows;
    std::string line;
    bool header_seen = false;
    while (std::getline(f, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {  // sigma,energy,perimeter,degenerate
            header_seen = true;
            continue;
        }
        std::istringstream cells(line);
        std::string sigma_s, energy_s;
        std::getline(cells, sigma_s, ',');
        std::getline(cells, energy_s, ',');
        CurveRow r;
        r.sigma = std::stod(sigma_s);
        if (!energy_s.empty()) r.energy = std::stod(energy_s);
        rows.push_back(r);
    }
    return rows;
}

}  // namespace

TEST_SUITE("argument handling") {
    TEST_CASE("help exits zero and lists the commands") {
        const auto log = g_dir / "help.txt";
        CHECK(run_cli("--help", log) == 0);
        const std::string text = slurp(log);
        CHECK(contains(text, "generate"));
        CHECK(contains(text, "test-circularity"));
    }

    TEST_CASE("missing required flag exits two") {
        CHECK(run_cli("generate --kind circle", g_dir / "m1.txt") == 2);
    }

    TEST_CASE("unknown dataset kind exits two") {
        CHECK(run_cli("generate --kind blob --n 8", g_dir / "m2.txt") == 2);
    }

    TEST_CASE("unreadable input exits three") {
        CHECK(run_cli("embed /nonexistent/input.csv --sigma 1", g_dir / "m3.txt") == 3);
    }
}

TEST_SUITE("dataset commands") {
    TEST_CASE("generate writes a loadable dataset") {
        const auto p = ensure_dataset("c16.csv", "--kind circle --n 16");
        const circ::OrderedDataset d = circ::load_dataset(p.string());
        REQUIRE(d.n() == 16);
        REQUIRE(d.d() == 2);
        for (Eigen::Index i = 0; i < d.n(); ++i) {
            CHECK(d.points.row(i).norm() == doctest::Approx(1.0).epsilon(1e-12));
        }
    }

    TEST_CASE("generator specs can come from a config file") {
        const auto cfg = g_dir / "gen.cfg";
        const auto out = g_dir / "c16_cfg.csv";
        {
            std::ofstream f(cfg);
            f << "kind=circle\n" << "n=16\n" << "out=" << out.string() << "\n";
        }
        REQUIRE(run_cli("generate --config " + cfg.string(), g_dir / "cfg.log") == 0);
        const auto flag_path = ensure_dataset("c16.csv", "--kind circle --n 16");
        const circ::OrderedDataset from_flags = circ::load_dataset(flag_path.string());
        const circ::OrderedDataset from_cfg = circ::load_dataset(out.string());
        CHECK(from_cfg.points == from_flags.points);
    }

    TEST_CASE("smooth round trips through the cli") {
        const auto noisy = ensure_dataset("noisy50.csv",
                                          "--kind circle --n 50 --noise 0.05 --seed 3");
        const auto out = g_dir / "smooth50.csv";
        REQUIRE(run_cli("smooth " + noisy.string() + " --alpha 0.3 --out " + out.string(),
                        g_dir / "smooth.log") == 0);
        const circ::OrderedDataset d = circ::load_dataset(out.string());
        CHECK(d.n() == 50);
        CHECK(d.d() == 2);
    }
}

TEST_SUITE("embedding commands") {
    TEST_CASE("embed emits coordinates and svg") {
        const auto input = ensure_dataset("c40.csv", "--kind circle --n 40");
        const auto csv_out = g_dir / "c40_embed.csv";
        REQUIRE(run_cli("embed " + input.string() + " --sigma 0.5 --out " + csv_out.string(),
                        g_dir / "embed.log") == 0);
        const circ::OrderedDataset z = circ::load_dataset(csv_out.string(), true);
        CHECK(z.n() == 40);
        CHECK(z.d() == 2);

        const auto svg_out = g_dir / "c40_embed.svg";
        REQUIRE(run_cli("embed " + input.string() + " --sigma 0.5 --format svg --out " +
                            svg_out.string(),
                        g_dir / "embed_svg.log") == 0);
        CHECK(contains(slurp(svg_out), "<svg"));
    }

    TEST_CASE("tight-bandwidth embedding of the large helix fails loudly") {
        // The kernel graph is numerically disconnected at this scale; the
        // pseudoinverse reports the rank collapse instead of inventing a shape.
        const auto input = ensure_dataset("h750.csv", "--kind toroidal_helix --n 750");
        const auto log = g_dir / "h750_tight.txt";
        CHECK(run_cli("embed " + input.string() + " --sigma 1.18e-5", log) == 3);
        CHECK(contains(slurp(log), "error:"));
    }

    TEST_CASE("wide-bandwidth embedding of the large helix self-intersects") {
        const auto input = ensure_dataset("h750.csv", "--kind toroidal_helix --n 750");
        const auto out = g_dir / "h750_wide.csv";
        REQUIRE(run_cli("embed " + input.string() + " --sigma 2345.31 --out " + out.string(),
                        g_dir / "h750_wide.log") == 0);
        const circ::OrderedDataset z = circ::load_dataset(out.string(), true);
        REQUIRE(z.n() == 750);
        const circ::PolygonVerdict v = circ::is_simple_closed_polygon(z.points);
        CHECK(v.classification == circ::PolygonClass::SelfIntersecting);
    }
}

TEST_SUITE("energy commands") {
    TEST_CASE("helix energy curve has an interior minimum") {
        const auto input = ensure_dataset("h750.csv", "--kind toroidal_helix --n 750");
        const auto out = g_dir / "h750_curve.csv";
        REQUIRE(run_cli("energy-curve " + input.string() + " --grid 60 --out " + out.string(),
                        g_dir / "curve.log") == 0);
        const std::vector<CurveRow> rows = read_curve(out.string());
        REQUIRE(rows.size() == 60);
        double first = -1.0, last = -1.0, best = -1.0;
        for (const CurveRow& r : rows) {
            if (!r.energy) continue;
            if (first < 0.0) first = *r.energy;
            last = *r.energy;
            if (best < 0.0 || *r.energy < best) best = *r.energy;
        }
        REQUIRE(first > 0.0);
        CHECK(best < 0.99 * first);
        CHECK(best < 0.5 * last);
    }

    TEST_CASE("four-point circle curve is flat at the right end") {
        const auto input = ensure_dataset("c4.csv", "--kind circle --n 4");
        const auto out = g_dir / "c4_curve.csv";
        REQUIRE(run_cli("energy-curve " + input.string() + " --out " + out.string(),
                        g_dir / "c4curve.log") == 0);
        const std::vector<CurveRow> rows = read_curve(out.string());
        REQUIRE(rows.size() >= 2);
        const CurveRow& a = rows[rows.size() - 2];
        const CurveRow& b = rows.back();
        REQUIRE(a.energy.has_value());
        REQUIRE(b.energy.has_value());
        CHECK(std::abs(*b.energy - *a.energy) < 1e-3 * std::abs(*b.energy));
    }

    TEST_CASE("energy curve renders to svg") {
        const auto input = ensure_dataset("c4.csv", "--kind circle --n 4");
        const auto out = g_dir / "c4_curve.svg";
        REQUIRE(run_cli("energy-curve " + input.string() + " --format svg --out " + out.string(),
                        g_dir / "c4svg.log") == 0);
        CHECK(contains(slurp(out), "<svg"));
    }
}

TEST_SUITE("decision commands") {
    TEST_CASE("estimate reports an existing minimizer") {
        const auto input = ensure_dataset("c100.csv", "--kind circle --n 100");
        const auto log = g_dir / "estimate.txt";
        REQUIRE(run_cli("estimate " + input.string(), log) == 0);
        const std::string text = slurp(log);
        CHECK(contains(text, "exists: true"));
        CHECK(contains(text, "sigma_star: "));
    }

    TEST_CASE("circularity verdicts map to exit codes") {
        const auto circle = ensure_dataset("c200.csv", "--kind circle --n 200");
        const auto cloud = ensure_dataset("g200.csv", "--kind gaussian_cloud --n 200 --dim 5");

        const auto accept_log = g_dir / "verdict_circle.txt";
        CHECK(run_cli("test-circularity " + circle.string(), accept_log) == 0);
        const std::string accepted = slurp(accept_log);
        CHECK(contains(accepted, "accept_h0: true"));
        CHECK(contains(accepted, "classification: Simple"));

        const auto reject_log = g_dir / "verdict_cloud.txt";
        CHECK(run_cli("test-circularity " + cloud.string(), reject_log) == 1);
        const std::string rejected = slurp(reject_log);
        CHECK(contains(rejected, "accept_h0: false"));
        CHECK(contains(rejected, "reason: NotSimplePolygon"));
    }

    TEST_CASE("repeat runs are byte identical") {
        const auto circle = ensure_dataset("c200.csv", "--kind circle --n 200");
        const auto log1 = g_dir / "repeat1.txt";
        const auto log2 = g_dir / "repeat2.txt";
        CHECK(run_cli("test-circularity " + circle.string(), log1) == 0);
        CHECK(run_cli("test-circularity " + circle.string(), log2) == 0);
        const std::string a = slurp(log1);
        CHECK(!a.empty());
        CHECK(a == slurp(log2));
    }
}

int main(int argc, char** argv) {
    if (argc < 2 || argv[1][0] == '-') {
        std::fprintf(stderr, "usage: test_cli <path-to-cli-binary> [test options]\n");
        return 1;
    }
    g_binary = argv[1];
    g_dir = std::filesystem::temp_directory_path() / "circ_cli_suite";
    std::filesystem::remove_all(g_dir);
    std::filesystem::create_directories(g_dir);

    std::vector<char*> args;
    args.push_back(argv[0]);
    for (int i = 2; i < argc; ++i) args.push_back(argv[i]);
    doctest::Context ctx(static_cast<int>(args.size()), args.data());
    return ctx.run();
}
