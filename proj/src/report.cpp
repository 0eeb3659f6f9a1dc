#include "circ/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace circ {

std::uint64_t fnv1a64(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::vector<std::string> output_header(std::uint64_t seed, const std::string& flags) {
    char digest[24];
    std::snprintf(digest, sizeof(digest), "%016llx",
                  static_cast<unsigned long long>(fnv1a64(flags)));
    return {"circ 1.0", "seed: " + std::to_string(seed), "flags: " + std::string(digest)};
}

std::string make_report(const std::vector<std::pair<std::string, std::string>>& items) {
    std::ostringstream out;
    for (const auto& [key, value] : items) out << key << ": " << value << "\n";
    return out.str();
}

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

struct Mapper {
    double x0, x1, y0, y1;  // data ranges
    double w, h, margin;

    double mx(double x) const {
        const double span = x1 > x0 ? x1 - x0 : 1.0;
        return margin + (x - x0) / span * (w - 2.0 * margin);
    }
    double my(double y) const {
        const double span = y1 > y0 ? y1 - y0 : 1.0;
        return h - margin - (y - y0) / span * (h - 2.0 * margin);
    }
};

}  // namespace

std::string svg_polygon(const Eigen::MatrixXd& z, int width, int height) {
    const Eigen::Index n = z.rows();
    Mapper m;
    m.x0 = z.col(0).minCoeff();
    m.x1 = z.col(0).maxCoeff();
    m.y0 = z.col(1).minCoeff();
    m.y1 = z.col(1).maxCoeff();
    m.w = width;
    m.h = height;
    m.margin = 20.0;

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<polygon fill=\"none\" stroke=\"black\" stroke-width=\"1\" points=\"";
    for (Eigen::Index i = 0; i < n; ++i) {
        if (i) out << ' ';
        out << num(m.mx(z(i, 0))) << ',' << num(m.my(z(i, 1)));
    }
    out << "\"/>\n";
    for (Eigen::Index i = 0; i < n; ++i) {
        out << "<circle cx=\"" << num(m.mx(z(i, 0))) << "\" cy=\"" << num(m.my(z(i, 1)))
            << "\" r=\"2\" fill=\"red\"/>\n";
    }
    out << "</svg>\n";
    return out.str();
}

std::string svg_energy_curves(const EnergyProfile& profile, int width, int height) {
    // Both curves on log10 axes; zero or degenerate samples break the lines.
    std::vector<std::pair<double, double>> es, ps;
    for (const EnergySample& s : profile.samples) {
        const double lx = std::log10(s.sigma);
        if (!s.degenerate && s.energy && *s.energy > 0.0)
            es.emplace_back(lx, std::log10(*s.energy));
        if (!s.degenerate && s.perimeter && *s.perimeter > 0.0)
            ps.emplace_back(lx, std::log10(*s.perimeter));
    }
    Mapper m;
    m.w = width;
    m.h = height;
    m.margin = 40.0;
    m.x0 = std::log10(profile.samples.front().sigma);
    m.x1 = std::log10(profile.samples.back().sigma);
    m.y0 = m.y1 = 0.0;
    bool first = true;
    for (const auto& v : es) {
        if (first || v.second < m.y0) m.y0 = v.second;
        if (first || v.second > m.y1) m.y1 = v.second;
        first = false;
    }
    for (const auto& v : ps) {
        if (first || v.second < m.y0) m.y0 = v.second;
        if (first || v.second > m.y1) m.y1 = v.second;
        first = false;
    }

    auto polyline = [&](const std::vector<std::pair<double, double>>& pts,
                        const char* color) {
        std::ostringstream seg;
        seg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (i) seg << ' ';
            seg << num(m.mx(pts[i].first)) << ',' << num(m.my(pts[i].second));
        }
        seg << "\"/>\n";
        return seg.str();
    };

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<rect x=\"" << num(m.margin) << "\" y=\"" << num(m.margin) << "\" width=\""
        << num(m.w - 2 * m.margin) << "\" height=\"" << num(m.h - 2 * m.margin)
        << "\" fill=\"none\" stroke=\"#ccc\"/>\n";
    if (!es.empty()) out << polyline(es, "black");
    if (!ps.empty()) out << polyline(ps, "#888");
    out << "<text x=\"" << num(m.margin) << "\" y=\"" << num(m.margin - 8.0)
        << "\" font-size=\"12\">log10 energy (black), log10 perimeter (gray) vs log10 sigma ["
        << num(m.x0) << ", " << num(m.x1) << "]</text>\n";
    out << "</svg>\n";
    return out.str();
}

std::string profile_csv(const EnergyProfile& profile) {
    std::ostringstream out;
    out << "sigma,energy,perimeter,degenerate\n";
    for (const EnergySample& s : profile.samples) {
        out << format_g17(s.sigma) << ',';
        out << (s.energy ? format_g17(*s.energy) : "") << ',';
        out << (s.perimeter ? format_g17(*s.perimeter) : "") << ',';
        out << (s.degenerate ? "true" : "false") << "\n";
    }
    return out.str();
}

std::string embedding_csv(const Eigen::MatrixXd& z) {
    std::ostringstream out;
    out << "z1,z2\n";
    for (Eigen::Index i = 0; i < z.rows(); ++i) {
        out << format_g17(z(i, 0)) << ',' << format_g17(z(i, 1)) << "\n";
    }
    return out.str();
}

std::string trace_csv(const std::vector<TracePoint>& trace) {
    std::ostringstream out;
    out << "phase,sigma,energy\n";
    for (const TracePoint& t : trace) {
        out << t.phase << ',' << format_g17(t.sigma) << ',' << format_g17(t.energy) << "\n";
    }
    return out.str();
}

}  // namespace circ
