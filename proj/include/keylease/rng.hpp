// Splittable seeded generator. Every probabilistic operation in the library
// takes an explicit Rng; there is no ambient randomness.

#pragma once

#include <cstdint>
#include <string>

#include "keylease/common.hpp"

namespace keylease {

namespace detail {
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t fnv1a(const char* data, std::size_t len) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (std::size_t i = 0; i < len; ++i) {
        h ^= static_cast<std::uint8_t>(data[i]);
        h *= 0x100000001b3ULL;
    }
    return h;
}
}  // namespace detail

class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {
        // Burn-in so adjacent integer seeds give unrelated streams.
        detail::splitmix64(state_);
        detail::splitmix64(state_);
    }

    std::uint64_t u64() { return detail::splitmix64(state_); }

    std::uint8_t bit() { return static_cast<std::uint8_t>(u64() & 1u); }

    // Uniform in [0, bound) by rejection sampling.
    std::uint64_t below(std::uint64_t bound) {
        if (bound == 0) throw parameter_error("Rng::below: bound must be positive");
        std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
        std::uint64_t v;
        do {
            v = u64();
        } while (v >= limit);
        return v % bound;
    }

    double real01() {
        // 53 uniform bits in [0,1).
        return static_cast<double>(u64() >> 11) * 0x1.0p-53;
    }

    Bits bits(std::size_t n) {
        Bits out(n);
        for (std::size_t i = 0; i < n; ++i) out[i] = bit();
        return out;
    }

    // Derives an independent child stream; parent state advances once.
    Rng split() { return Rng(u64() ^ 0xa5a5a5a5deadbeefULL); }

    Rng split(std::uint64_t index) {
        std::uint64_t s = state_;
        return Rng(detail::splitmix64(s) ^ (index * 0x9e3779b97f4a7c15ULL + 0x1234567890abcdefULL));
    }

    Rng split(const std::string& tag) {
        std::uint64_t s = state_;
        return Rng(detail::splitmix64(s) ^ detail::fnv1a(tag.data(), tag.size()));
    }

private:
    std::uint64_t state_;
};

}  // namespace keylease
