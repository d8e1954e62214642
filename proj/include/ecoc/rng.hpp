#pragma once

// All randomness in the library flows from one explicit seed through this
// wrapper. The generator is std::mt19937_64, whose output sequence is fixed
// by the C++ standard, so seeded runs reproduce bit-identically on every
// platform. Bounded draws and shuffles are implemented here rather than with
// std::uniform_int_distribution, whose mapping is implementation-defined.
//
// Derived streams use seed_j = master_seed XOR mix64(j), where mix64 is the
// SplitMix64 finalizer. Adding streams never perturbs existing ones.

#include <cstdint>
#include <random>
#include <vector>

namespace ecoc {

inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x ^= x >> 30;
    x *= 0xBF58476D1CE4E5B9ull;
    x ^= x >> 27;
    x *= 0x94D049BB133111EBull;
    x ^= x >> 31;
    return x;
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
    return master ^ mix64(stream);
}

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next() { return gen_(); }

    // Uniform in [0, n). Modulo mapping; bias is < n / 2^64, far below
    // anything observable at the sizes used here, and fully deterministic.
    std::uint64_t below(std::uint64_t n) { return gen_() % n; }

    std::size_t index(std::size_t n) { return static_cast<std::size_t>(below(n)); }

    // Uniform in [0, 1) with 53 random mantissa bits.
    double real01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    double real(double lo, double hi) { return lo + (hi - lo) * real01(); }

    bool coin() { return gen_() & 1u; }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = index(i);
            std::swap(v[i - 1], v[j]);
        }
    }

  private:
    std::mt19937_64 gen_;
};

} // namespace ecoc
