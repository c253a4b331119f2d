#pragma once

#include <cstdint>

#include "quadriga/error.hpp"

namespace quadriga {

// Seeded uniform digit source, identical on every platform. splitmix64 core
// with rejection sampling for unbiased digits.
class DigitSource {
public:
    explicit DigitSource(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Uniform digit in [0, radix).
    int next_digit(int radix) {
        if (radix < 2) raise(ErrorKind::Parameter, "radix must be >= 2");
        const std::uint64_t r = static_cast<std::uint64_t>(radix);
        const std::uint64_t limit = ~0ull - (~0ull % r);  // multiple of radix
        std::uint64_t v;
        do {
            v = next_u64();
        } while (v >= limit);
        return static_cast<int>(v % r);
    }

    // Uniform in [0, bound).
    std::uint64_t next_below(std::uint64_t bound) {
        if (bound == 0) raise(ErrorKind::Parameter, "bound must be positive");
        const std::uint64_t limit = ~0ull - (~0ull % bound);
        std::uint64_t v;
        do {
            v = next_u64();
        } while (v >= limit);
        return v % bound;
    }

private:
    std::uint64_t state_;
};

}  // namespace quadriga
