#pragma once

#include <cstdint>
#include <random>

namespace orbitvqc {

// Seedable deterministic random stream. split(k) derives an independent
// stream keyed by (seed, k) only, so per-sample generation is reproducible
// and order-independent regardless of how many draws happened in between.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : seed_(seed), engine_(mix(seed)) {}

    Rng split(std::uint64_t stream) const {
        return Rng(mix(seed_ + 0x9E3779B97F4A7C15ull * (stream + 1)));
    }

    std::uint64_t next_u64() { return engine_(); }

    // [0, 1)
    double uniform() {
        return std::uniform_real_distribution<double>(0.0, 1.0)(engine_);
    }

    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(engine_);
    }

    double normal() {
        return std::normal_distribution<double>(0.0, 1.0)(engine_);
    }

    // [0, n)
    std::size_t uniform_index(std::size_t n) {
        return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine_);
    }

    std::uint64_t seed() const { return seed_; }

  private:
    static std::uint64_t mix(std::uint64_t z) {
        // splitmix64 finalizer
        z += 0x9E3779B97F4A7C15ull;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

} // namespace orbitvqc
