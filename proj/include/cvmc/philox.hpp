#pragma once

#include <array>
#include <cstdint>

namespace cvmc {

// Philox4x32 with 10 rounds (Salmon et al., SC'11).
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr, std::array<std::uint32_t, 2> key);

inline constexpr const char* kRngName = "philox4x32-10";

// Counter-based stream. The key is the 64-bit seed; the counter holds a
// 64-bit stream id (high words) and a 64-bit block index (low words), so
// (seed, stream) pairs give independent, random-access sequences.
class CounterRng {
  public:
    explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0) : seed_(seed), stream_(stream) {}

    std::uint32_t next_u32();
    std::uint64_t next_u64();
    // Uniform in (0, 1) with 53 random bits.
    double uniform();
    double normal();

    void seek(std::uint64_t block);

  private:
    void refill();

    std::uint64_t seed_;
    std::uint64_t stream_;
    std::uint64_t block_ = 0;
    std::array<std::uint32_t, 4> buf_{};
    int pos_ = 4;
    bool has_spare_ = false;
    double spare_ = 0;
};

// splitmix64 finalizer; derives child seeds from (parent, tag) deterministically.
std::uint64_t mix_seed(std::uint64_t parent, std::uint64_t tag);

}  // namespace cvmc
