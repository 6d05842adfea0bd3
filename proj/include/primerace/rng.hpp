#pragma once

#include <cstdint>

namespace primerace {

// Counter-based generator (Philox 2x64, 10 rounds).  A (seed, stream) pair
// names an independent sequence, so parallel workers derive their own stream
// from the chunk index and results do not depend on the thread count.
class Philox {
public:
    explicit Philox(std::uint64_t seed, std::uint64_t stream = 0)
        : key_(seed), hi_(stream), lo_(0) {}

    std::uint64_t next_u64() {
        if (have_ == 0) {
            b0_ = lo_;
            b1_ = hi_;
            encrypt(b0_, b1_);
            if (++lo_ == 0) ++hi_;
            have_ = 2;
        }
        return (have_-- == 2) ? b0_ : b1_;
    }

    // uniform in [0,1), 53 random bits
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

private:
    static constexpr std::uint64_t kMul  = 0xD2B74407B1CE6E93ULL;
    static constexpr std::uint64_t kWeyl = 0x9E3779B97F4A7C15ULL;

    static void round(std::uint64_t& x0, std::uint64_t& x1, std::uint64_t k) {
        unsigned __int128 prod = static_cast<unsigned __int128>(kMul) * x0;
        std::uint64_t hi = static_cast<std::uint64_t>(prod >> 64);
        std::uint64_t lo = static_cast<std::uint64_t>(prod);
        x0 = hi ^ k ^ x1;
        x1 = lo;
    }

    void encrypt(std::uint64_t& x0, std::uint64_t& x1) const {
        std::uint64_t k = key_;
        for (int r = 0; r < 10; ++r) {
            round(x0, x1, k);
            k += kWeyl;
        }
    }

    std::uint64_t key_, hi_, lo_;
    std::uint64_t b0_ = 0, b1_ = 0;
    int have_ = 0;
};

}  // namespace primerace
