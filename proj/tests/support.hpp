#pragma once

#include <cmath>
#include <random>

#include "circ/data.hpp"
#include "circ/types.hpp"

namespace support {

inline circ::OrderedDataset make_circle(Eigen::Index n) {
    circ::GeneratorSpec spec;
    spec.kind = circ::DatasetKind::Circle;
    spec.n = n;
    return circ::gen_circle(spec);
}

inline circ::OrderedDataset make_helix(Eigen::Index n, int windings = 8) {
    circ::GeneratorSpec spec;
    spec.kind = circ::DatasetKind::ToroidalHelix;
    spec.n = n;
    spec.windings = windings;
    return circ::gen_toroidal_helix(spec);
}

inline circ::OrderedDataset make_cloud(Eigen::Index n, Eigen::Index dim, std::uint64_t seed) {
    circ::GeneratorSpec spec;
    spec.kind = circ::DatasetKind::GaussianCloud;
    spec.n = n;
    spec.dim = dim;
    spec.seed = seed;
    return circ::gen_gaussian_cloud(spec);
}

inline double rel_err(double got, double want, double floor = 1e-300) {
    return std::abs(got - want) / std::max(std::abs(want), floor);
}

inline double rel_err(const Eigen::MatrixXd& got, const Eigen::MatrixXd& want,
                      double floor = 1e-300) {
    return (got - want).norm() / std::max(want.norm(), floor);
}

/// Test-side RNG, intentionally a different engine family than the library's.
inline Eigen::MatrixXd random_matrix(Eigen::Index rows, Eigen::Index cols,
                                     std::uint32_t seed) {
    std::mt19937 eng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Eigen::MatrixXd m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = u(eng);
    return m;
}

inline circ::Embedding wrap_embedding(const Eigen::MatrixXd& z, double sigma = 1.0) {
    circ::Embedding e;
    e.z = z;
    e.sigma = sigma;
    return e;
}

}  // namespace support
