#pragma once

#include <cstdint>
#include <random>

namespace trsim {

/// SplitMix64 finalizer. Used to derive independent stream seeds from a
/// master seed so that every consumer owns its own generator.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) noexcept {
    return mix64(mix64(master) ^ mix64(stream + 0x632BE59BD9B4E019ULL));
}

/// Seeded generator with platform-independent variates.
///
/// std::mt19937_64 output is fixed by the standard; the distributions here
/// are written out by hand because the <random> distributions are
/// implementation-defined and would break bit-identical replays across
/// standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// A fresh generator for sub-stream `stream` of this seed family.
    static Rng stream(std::uint64_t master_seed, std::uint64_t stream) {
        return Rng(derive_seed(master_seed, stream));
    }

    /// Uniform on [0, 1) with 53 bits of resolution.
    double uniform() noexcept {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }

    bool bernoulli(double p) noexcept { return uniform() < p; }

    /// Unit-mean exponential variate by inversion.
    double exponential() noexcept;

private:
    std::mt19937_64 engine_;
};

}  // namespace trsim
