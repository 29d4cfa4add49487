#ifndef MCQ_RNG_HPP
#define MCQ_RNG_HPP

#include <cstdint>
#include <string_view>

#include "capacity.hpp"

namespace mcq {

// Deterministic splittable RNG. Every piece of randomness in the toolkit
// flows from one u64 seed through named or indexed sub-streams, so any
// module-level stream can be reproduced in isolation. Outputs are platform
// independent (no std::uniform_int_distribution).
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : state_(mix(seed ^ 0x9e3779b97f4a7c15ULL)) {}

    RngStream derive(std::string_view name) const {
        std::uint64_t h = 1469598103934665603ULL;
        for (char c : name) {
            h ^= static_cast<unsigned char>(c);
            h *= 1099511628211ULL;
        }
        return RngStream(mix(state_ ^ h));
    }

    RngStream derive(std::uint64_t index) const {
        return RngStream(mix(state_ + 0x632be59bd9b4e019ULL * (index + 1)));
    }

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix(state_);
    }

    // Uniform in [0, bound); bound > 0.
    std::uint64_t uniform(std::uint64_t bound) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next_u64()) * bound) >> 64);
    }

    // Uniform in [1, bound] for arbitrary-width bound >= 1, by rejection on
    // the bit length of bound.
    Capacity uniform_capacity(const Capacity& bound) {
        unsigned bits = static_cast<unsigned>(boost::multiprecision::msb(bound)) + 1;
        for (;;) {
            Capacity v = 0;
            unsigned got = 0;
            while (got < bits) {
                v <<= 64;
                v |= next_u64();
                got += 64;
            }
            v >>= (got - bits);
            if (v < bound) return v + 1;
        }
    }

    bool coin() { return next_u64() & 1; }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z ^= z >> 30;
        z *= 0xbf58476d1ce4e5b9ULL;
        z ^= z >> 27;
        z *= 0x94d049bb133111ebULL;
        z ^= z >> 31;
        return z;
    }

    std::uint64_t state_;
};

} // namespace mcq

#endif
