#pragma once

#include <cstdint>
#include <stdexcept>

namespace dqkd {

// Deterministic 64-bit generator (splitmix64). Streams derived from a
// (seed, index) pair are identical across platforms and worker layouts,
// which is what makes seeded sessions byte-reproducible.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    // Independent stream for one unit of work (a run, a dimension, ...).
    static Rng for_stream(std::uint64_t seed, std::uint64_t index) {
        Rng s(seed);
        return Rng(s.next_u64() + index * 0x9e3779b97f4a7c15ULL);
    }

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1), 53-bit resolution.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform in [0, n), unbiased (Lemire bounded sampling).
    int next_int(int n) {
        if (n < 1) throw std::invalid_argument("next_int needs n >= 1");
        const std::uint64_t bound = static_cast<std::uint64_t>(n);
        unsigned __int128 m = static_cast<unsigned __int128>(next_u64()) * bound;
        auto lo = static_cast<std::uint64_t>(m);
        if (lo < bound) {
            const std::uint64_t threshold = (0 - bound) % bound;
            while (lo < threshold) {
                m = static_cast<unsigned __int128>(next_u64()) * bound;
                lo = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<int>(m >> 64);
    }

private:
    std::uint64_t state_;
};

}  // namespace dqkd
