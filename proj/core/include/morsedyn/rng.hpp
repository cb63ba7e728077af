#ifndef MORSEDYN_RNG_HPP
#define MORSEDYN_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>

namespace mdyn {

// Deterministic random layer. std::mt19937_64 has a portable, standardized
// stream; the variate transforms are written out here (instead of using
// std::uniform_real_distribution / std::normal_distribution, whose streams
// are implementation-defined) so that seeds reproduce across toolchains.
// Normal variates: Box-Muller, recorded in output metadata as
// "box-muller-v1".
class Rng {
public:
    explicit Rng(uint64_t seed) : eng_(seed) {}

    // Uniform in [0, 1) with 53-bit resolution.
    double uniform() {
        return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Standard normal via Box-Muller; consumes two uniforms per pair.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform(), u2 = uniform();
        while (u1 == 0.0) u1 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 2.0 * 3.14159265358979323846 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    static constexpr const char* kNormalAlgorithm = "box-muller-v1";

private:
    std::mt19937_64 eng_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace mdyn

#endif
