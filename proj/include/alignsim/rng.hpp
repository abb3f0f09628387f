// Seeded, platform-independent random streams. Identical (seed, stream)
// always produces the identical draw sequence; distinct stream ids give
// independent-quality streams, which is what makes parallel replica fan-out
// reproducible at any worker count.
//
// xoshiro256** state seeded through splitmix64. Bounded draws use rejection
// so they are exactly uniform.

#pragma once

#include <array>
#include <cstdint>

namespace alignsim {

class RngStream {
public:
    explicit RngStream(uint64_t seed, uint64_t stream = 0) {
        uint64_t z = mix(seed ^ mix(stream + 0x9e3779b97f4a7c15ull));
        for (auto& s : state_) {
            z += 0x9e3779b97f4a7c15ull;
            s = mix(z);
        }
        if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) state_[0] = 1;
    }

    uint64_t next_u64() {
        const uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Uniform on {0, ..., bound-1}, bound >= 1.
    uint64_t next_below(uint64_t bound) {
        const uint64_t threshold = (-bound) % bound; // 2^64 mod bound
        uint64_t r;
        do {
            r = next_u64();
        } while (r < threshold);
        return r % bound;
    }

    uint8_t next_bit() {
        if (bit_count_ == 0) {
            bit_buffer_ = next_u64();
            bit_count_ = 64;
        }
        uint8_t b = static_cast<uint8_t>(bit_buffer_ & 1u);
        bit_buffer_ >>= 1;
        --bit_count_;
        return b;
    }

    // Geometric on {0,1,2,...} with P(k) = 2^-(k+1).
    uint64_t next_geometric_half() {
        uint64_t k = 0;
        while (next_bit() == 1) ++k;
        return k;
    }

private:
    static uint64_t rotl(uint64_t v, int k) { return (v << k) | (v >> (64 - k)); }
    static uint64_t mix(uint64_t z) {
        z += 0x9e3779b97f4a7c15ull;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    std::array<uint64_t, 4> state_{};
    uint64_t bit_buffer_ = 0;
    int bit_count_ = 0;
};

} // namespace alignsim
