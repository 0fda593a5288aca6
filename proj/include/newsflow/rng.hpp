#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>

namespace newsflow {

/// Seedable generator used by every stochastic routine.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the C++
/// standard. The distributions below are implemented here rather than taken
/// from <random>, whose distribution algorithms are implementation-defined,
/// so a given seed yields the same draws with any standard library.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    [[nodiscard]] std::uint64_t next_u64() { return engine_(); }
    /// Uniform on [0, 1) with 53 random bits.
    [[nodiscard]] double uniform();
    /// Uniform integer in [0, n); n must be positive.
    [[nodiscard]] std::size_t index(std::size_t n);
    /// Standard normal via the Marsaglia polar method.
    [[nodiscard]] double normal();
    [[nodiscard]] bool bernoulli(double p) { return uniform() < p; }
    [[nodiscard]] long poisson(double mean);

    template <typename T>
    void shuffle(std::span<T> values) {
        for (std::size_t i = values.size(); i > 1; --i) {
            const std::size_t j = index(i);
            std::swap(values[i - 1], values[j]);
        }
    }

private:
    std::mt19937_64 engine_;
    double spare_normal_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace newsflow
