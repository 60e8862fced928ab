#pragma once

#include <cstdint>
#include <random>

namespace cliffordprym {

/* All randomness in the library flows through this wrapper around the
 * standard-specified mt19937_64 engine, so identical seeds reproduce
 * identical runs on every platform. */
class Rng {
public:
    explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

    // Uniform value in [0, bound).  bound must be positive.
    std::uint64_t below(std::uint64_t bound) {
        std::uniform_int_distribution<std::uint64_t> dist(0, bound - 1);
        return dist(engine_);
    }

    std::uint64_t raw() { return engine_(); }

    // Derives an independent deterministic stream (for nested generators).
    Rng fork() { return Rng(engine_() ^ 0x9e3779b97f4a7c15ULL); }

private:
    std::mt19937_64 engine_;
};

}  // namespace cliffordprym
