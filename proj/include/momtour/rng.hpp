#pragma once

#include <cmath>
#include <cstdint>

namespace momtour {

/// Identifies one reproducible random stream. The pair (seed, stream_id)
/// fully determines every draw; re-running with the same spec reproduces
/// bit-identical output.
struct RngSpec {
    std::uint64_t seed = 0;
    std::uint64_t stream_id = 0;
};

/// Counter-based deterministic generator. Each output is a strong 64-bit
/// hash of (key, counter), where the key is derived from the RngSpec, so
/// streams with distinct (seed, stream_id) are statistically independent.
class CounterRng {
  public:
    explicit CounterRng(RngSpec spec)
        : state_(finalize(spec.seed) ^ finalize(finalize(spec.stream_id) + kStreamSalt)) {}

    std::uint64_t next_u64() {
        state_ += kGolden;
        return finalize(state_);
    }

    /// Uniform on [0, 1) with 53 bits of precision.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform on (0, 1); safe as a logarithm argument.
    double uniform01_open() {
        double u;
        do {
            u = uniform01();
        } while (u == 0.0);
        return u;
    }

    /// Standard normal via Box-Muller, one spare cached.
    double gaussian() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = uniform01_open();
        const double u2 = uniform01();
        const double rad = std::sqrt(-2.0 * std::log(u1));
        const double ang = 2.0 * M_PI * u2;
        spare_ = rad * std::sin(ang);
        has_spare_ = true;
        return rad * std::cos(ang);
    }

    /// Student-t with `dof` degrees of freedom (Bailey's polar method).
    double student_t(double dof) {
        const double u = uniform01_open();
        const double v = uniform01();
        return std::sqrt(dof * (std::pow(u, -2.0 / dof) - 1.0)) * std::cos(2.0 * M_PI * v);
    }

    /// Pareto with tail index `a` and scale 1: P(X > x) = x^{-a}, x >= 1.
    double pareto(double a) { return std::pow(uniform01_open(), -1.0 / a); }

    double rademacher() { return (next_u64() & 1u) ? 1.0 : -1.0; }

  private:
    static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
    static constexpr std::uint64_t kStreamSalt = 0x7F4A7C15F39CC060ULL;

    // splitmix64 finalizer.
    static std::uint64_t finalize(std::uint64_t z) {
        z += kGolden;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace momtour
