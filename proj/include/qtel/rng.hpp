#pragma once

#include <array>
#include <cstdint>

namespace qtel {

/// Deterministic splitmix64 generator. Identical sequences on every platform
/// for a given seed; the only entropy source in the library.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Random point on the 3-simplex (a valid noise spectrum), via normalized
    /// exponentials.
    std::array<double, 4> simplex4();

private:
    std::uint64_t state_;
};

}  // namespace qtel
