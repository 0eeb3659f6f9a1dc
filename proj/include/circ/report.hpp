#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "circ/types.hpp"

namespace circ {

/// FNV-1a 64-bit digest; used to stamp resolved CLI flags into headers.
std::uint64_t fnv1a64(const std::string& s);

/// Shortest-round-trip style fixed formatting: 17 significant digits.
std::string format_g17(double v);

/// Header comment lines ("# circ 1.0", "# seed: ...", "# flags: ...")
/// prepended to every output for reproducibility. No timestamps.
std::vector<std::string> output_header(std::uint64_t seed, const std::string& flags);

/// Line-oriented `key: value` report body.
std::string make_report(const std::vector<std::pair<std::string, std::string>>& items);

/// Closed polygon drawing: black cycle through the rows in order, red
/// vertices. Self-contained fixed-size document.
std::string svg_polygon(const Eigen::MatrixXd& z, int width = 640, int height = 640);

/// Energy and perimeter curves against log10(sigma). Degenerate samples
/// break the polylines.
std::string svg_energy_curves(const EnergyProfile& profile, int width = 720, int height = 480);

/// Profile rows as csv: "sigma,energy,perimeter,degenerate".
std::string profile_csv(const EnergyProfile& profile);

/// Embedding rows as csv with header "z1,z2".
std::string embedding_csv(const Eigen::MatrixXd& z);

/// Estimator trace as csv: "phase,sigma,energy".
std::string trace_csv(const std::vector<TracePoint>& trace);

}  // namespace circ
