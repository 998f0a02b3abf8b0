#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>

namespace rfimlab {

// SplitMix64 finalizer. All randomness in the library is derived from a
// 64-bit master seed by hashing structured keys through this mixer, so any
// draw is a pure function of (seed, key) and independent of evaluation order.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// Derive an independent stream key from a seed and a list of indices
// (replicate number, vertex coordinate, experiment tag, ...).
inline std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> parts) {
    std::uint64_t z = mix64(seed ^ 0x6a09e667f3bcc909ull);
    for (std::uint64_t p : parts) z = mix64(z ^ mix64(p ^ 0xbb67ae8584caa73bull));
    return z;
}

inline std::uint64_t key_of_vertex(int x, int y) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(x)) << 32) |
           static_cast<std::uint64_t>(static_cast<std::uint32_t>(y));
}

// Counter-based stream: value i is mix64 of (key, i). Stateless apart from
// the counter, so streams can be split freely across threads.
class CounterRng {
  public:
    explicit CounterRng(std::uint64_t key) : key_(key) {}

    std::uint64_t next_u64() { return mix64(key_ ^ mix64(0x9e3779b97f4a7c15ull * ++ctr_)); }

    // uniform in (0,1]
    double next_unit() {
        return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
    }

    // uniform in [-1,1)
    double next_symmetric() { return 2.0 * (next_unit() - 0.5 * 0x1.0p-53) - 1.0; }

    // standard normal via Box-Muller; draws two uniforms per call
    double next_gaussian() {
        double u1 = next_unit();
        double u2 = next_unit();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
    }

    double next_rademacher() { return (next_u64() & 1ull) ? 1.0 : -1.0; }

  private:
    std::uint64_t key_;
    std::uint64_t ctr_ = 0;
};

} // namespace rfimlab
