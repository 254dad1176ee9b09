#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace equical {

// Counter-based random stream (Philox2x64-10). The key is the seed, the
// counter high word is the stream index, the low word counts blocks. Equal
// (seed, stream_index) therefore reproduce the same sequence on every
// platform, and distinct stream indices address disjoint counter blocks,
// which is what makes per-replicate streams independent of scheduling.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream_index)
        : key_(seed), stream_(stream_index) {}

    std::uint64_t seed() const { return key_; }
    std::uint64_t stream_index() const { return stream_; }

    std::uint64_t next_u64() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        std::uint64_t x0 = block_++;
        std::uint64_t x1 = stream_;
        std::uint64_t k = key_;
        for (int round = 0; round < 10; ++round) {
            unsigned __int128 prod =
                static_cast<unsigned __int128>(kMultiplier) * x0;
            std::uint64_t hi = static_cast<std::uint64_t>(prod >> 64);
            std::uint64_t lo = static_cast<std::uint64_t>(prod);
            x0 = hi ^ k ^ x1;
            x1 = lo;
            k += kWeyl;
        }
        spare_ = x1;
        have_spare_ = true;
        return x0;
    }

    // Uniform on the open interval (0,1).
    double uniform() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    bool bernoulli(double p) { return uniform() < p; }

    double exponential(double rate) {
        if (!(rate > 0.0)) throw std::domain_error("exponential: rate must be positive");
        return -std::log(uniform()) / rate;
    }

    // Box-Muller; one draw cached.
    double normal() {
        if (have_normal_) {
            have_normal_ = false;
            return spare_normal_;
        }
        double u1 = uniform();
        double u2 = uniform();
        double radius = std::sqrt(-2.0 * std::log(u1));
        double angle = 6.283185307179586 * u2;
        spare_normal_ = radius * std::sin(angle);
        have_normal_ = true;
        return radius * std::cos(angle);
    }

    // Marsaglia-Tsang; shape < 1 boosted through gamma(shape+1).
    double gamma(double shape) {
        if (!(shape > 0.0)) throw std::domain_error("gamma: shape must be positive");
        if (shape < 1.0) {
            double u = uniform();
            return gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
        }
        double d = shape - 1.0 / 3.0;
        double c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            double x = normal();
            double v = 1.0 + c * x;
            if (v <= 0.0) continue;
            v = v * v * v;
            double u = uniform();
            double x2 = x * x;
            if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
            if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
        }
    }

private:
    static constexpr std::uint64_t kMultiplier = 0xD2B74407B1CE6E93ULL;
    static constexpr std::uint64_t kWeyl = 0x9E3779B97F4A7C15ULL;

    std::uint64_t key_;
    std::uint64_t stream_;
    std::uint64_t block_ = 0;
    std::uint64_t spare_ = 0;
    double spare_normal_ = 0.0;
    bool have_spare_ = false;
    bool have_normal_ = false;
};

}  // namespace equical
