#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace circ {

/// Deterministic standard-normal stream: one mt19937_64 engine per seed,
/// Marsaglia polar transform on top. Same seed, same machine => same bits.
class NormalSampler {
public:
    explicit NormalSampler(std::uint64_t seed) : eng_(seed), have_spare_(false), spare_(0.0) {}

    /// Uniform double strictly inside (0,1): 53-bit mantissa, half-ulp offset.
    double uniform01() {
        const std::uint64_t x = eng_();
        return (static_cast<double>(x >> 11) + 0.5) * (1.0 / 9007199254740992.0);
    }

    /// One standard-normal draw; pairs are consumed lazily.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform01() - 1.0;
            v = 2.0 * uniform01() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double f = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * f;
        have_spare_ = true;
        return u * f;
    }

private:
    std::mt19937_64 eng_;
    bool have_spare_;
    double spare_;
};

/// Fixed odd constant for deriving auxiliary seeds (resampling substreams).
inline constexpr std::uint64_t kSeedMixConstant = 0x9E3779B97F4A7C15ULL;

/// Deterministic substream seed for retry attempt k >= 1.
inline std::uint64_t derived_seed(std::uint64_t seed, std::uint64_t attempt) {
    return seed ^ (kSeedMixConstant * attempt);
}

}  // namespace circ
