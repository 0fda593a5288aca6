#include "newsflow/rng.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace newsflow {

double Rng::uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::size_t Rng::index(std::size_t n) {
    if (n == 0) {
        throw std::invalid_argument("Rng::index: empty range");
    }
    // Rejection sampling on the largest multiple of n below 2^64.
    const std::uint64_t bound = static_cast<std::uint64_t>(n);
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x = engine_();
    while (x >= limit) {
        x = engine_();
    }
    return static_cast<std::size_t>(x % bound);
}

double Rng::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_normal_;
    }
    double u = 0.0;
    double v = 0.0;
    double s = 0.0;
    do {
        u = 2.0 * uniform() - 1.0;
        v = 2.0 * uniform() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double factor = std::sqrt(-2.0 * std::log(s) / s);
    spare_normal_ = v * factor;
    has_spare_ = true;
    return u * factor;
}

long Rng::poisson(double mean) {
    if (!(mean >= 0.0)) {
        throw std::invalid_argument("Rng::poisson: negative mean");
    }
    if (mean == 0.0) {
        return 0;
    }
    if (mean > 60.0) {
        // Normal approximation; adequate for the generator's large-count regime.
        const double draw = std::round(mean + std::sqrt(mean) * normal());
        return draw < 0.0 ? 0 : static_cast<long>(draw);
    }
    // Knuth's multiplication method.
    const double limit = std::exp(-mean);
    long k = 0;
    double product = uniform();
    while (product > limit) {
        ++k;
        product *= uniform();
    }
    return k;
}

}  // namespace newsflow
