#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

namespace zebrasim {

/// Deterministic 64-bit generator (splitmix64 core) with hand-rolled
/// distributions. Standard-library distributions are implementation-defined,
/// so everything that must be bit-reproducible across toolchains is done here.
///
/// Value semantics: streams are cheap to copy, and a copied stream replays
/// the same sequence: handy for peeking in tests.
class RngStream {
public:
    RngStream() : state_(0x853c49e6748fea9bULL) {}

    /// Derive an independent substream from a master seed. Distinct
    /// stream ids give uncorrelated sequences for the same seed.
    explicit RngStream(std::uint64_t seed, std::uint64_t stream_id = 0)
        : state_(mix(seed ^ (0x9e3779b97f4a7c15ULL * (stream_id + 1)))) {}

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix(state_);
    }

    /// Uniform double in [0, 1), 53-bit resolution.
    double uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [0, n). n = 0 returns 0.
    std::uint64_t below(std::uint64_t n) {
        if (n == 0) return 0;
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
    }

    /// Poisson draw. Knuth's product method for the usual small per-tick
    /// means (~1 uniform per call); a rounded normal above mean 30, where
    /// exp(-mean) underflows.
    int poisson(double mean) {
        if (mean <= 0.0) return 0;
        if (mean > 30.0) {
            const double x = normal(mean, std::sqrt(mean));
            return x <= 0.0 ? 0 : static_cast<int>(x + 0.5);
        }
        const double limit = std::exp(-mean);
        int k = 0;
        double p = 1.0;
        do {
            ++k;
            p *= uniform();
        } while (p > limit);
        return k - 1;
    }

    /// Normal draw via the Marsaglia polar method (no trig).
    double normal(double mean, double sd) {
        if (has_spare_) {
            has_spare_ = false;
            return mean + sd * spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform() - 1.0;
            v = 2.0 * uniform() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double m = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * m;
        has_spare_ = true;
        return mean + sd * u * m;
    }

    /// In-place Fisher-Yates shuffle.
    template <typename T>
    void shuffle(std::vector<T>& items) {
        for (std::size_t i = items.size(); i > 1; --i) {
            const std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(items[i - 1], items[j]);
        }
    }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

/// Substream ids used by the simulation. Keeping arrivals, decisions and
/// pedestrian behavior on separate streams means a changed compliance
/// probability does not reshuffle the arrival pattern: common random
/// numbers stay common across calibration iterates.
enum class RngPurpose : std::uint64_t {
    VehicleArrivals = 1,
    PedestrianArrivals = 2,
    ComplianceDraws = 3,
    PedestrianBehavior = 4,
};

inline RngStream make_stream(std::uint64_t seed, RngPurpose purpose) {
    return RngStream(seed, static_cast<std::uint64_t>(purpose));
}

}  // namespace zebrasim
