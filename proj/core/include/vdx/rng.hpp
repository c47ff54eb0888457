#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace vdx {

// Deterministic random source with a pinned sampling transform.
//
// std::mt19937_64 produces a bit-exact sequence fixed by the standard; the
// uniform and Gaussian transforms below are implemented here rather than via
// std::uniform_real_distribution / std::normal_distribution, whose algorithms
// are implementation-defined. A given seed therefore reproduces the same
// draws on any conforming standard library.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    // Uniform on [0, 1): top 53 bits of one engine draw.
    double uniform01() {
        return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    }

    // Standard normal via the Marsaglia polar transform; generates pairs and
    // caches the second draw.
    double gaussian() {
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
        double m = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * m;
        have_spare_ = true;
        return u * m;
    }

private:
    std::mt19937_64 eng_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace vdx
