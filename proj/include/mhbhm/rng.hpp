#pragma once

#include <cmath>
#include <cstdint>

namespace mhbhm {

namespace detail {

inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

} // namespace detail

/// SplitMix64 generator. Chosen over std::mt19937 plus the standard
/// distributions because distribution output is implementation-defined;
/// every draw here is fully specified, so seeded runs are reproducible
/// byte-for-byte across toolchains.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        return detail::mix64(z);
    }

    /// Uniform double in [0, 1), 53 bits of precision.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) {
        return lo + (hi - lo) * next_double();
    }

    /// Standard normal via Box-Muller. Two uniforms consumed per draw, no
    /// cached spare, so the stream position is a pure function of the draw
    /// count.
    double normal() {
        // u1 in (0, 1] keeps log() finite
        double u1 = (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
        double u2 = next_double();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
    }

    double normal(double mean, double sd) { return mean + sd * normal(); }

    /// Gamma(shape, rate) via Marsaglia-Tsang; shape < 1 handled by boosting.
    double gamma(double shape, double rate) {
        if (shape < 1.0) {
            double u = next_double();
            while (u <= 0.0) u = next_double();
            return gamma(shape + 1.0, rate) * std::pow(u, 1.0 / shape);
        }
        const double d = shape - 1.0 / 3.0;
        const double c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            double x = normal();
            double v = 1.0 + c * x;
            if (v <= 0.0) continue;
            v = v * v * v;
            double u = next_double();
            if (u < 1.0 - 0.0331 * x * x * x * x) return d * v / rate;
            if (u > 0.0 && std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v / rate;
        }
    }

private:
    std::uint64_t state_;
};

/// Derives an independent stream seed from a master seed and stream
/// indices. Derivation is order-free: stream k's seed does not depend on
/// how many draws any other stream made, so per-event sampling is
/// reproducible regardless of execution order.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream,
                                 std::uint64_t substream = 0) {
    std::uint64_t h = detail::mix64(master + 0x9e3779b97f4a7c15ull * (stream + 1));
    return detail::mix64(h + 0x9e3779b97f4a7c15ull * (substream + 1));
}

} // namespace mhbhm
