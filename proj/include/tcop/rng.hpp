#ifndef TCOP_RNG_HPP
#define TCOP_RNG_HPP

#include <array>
#include <cstdint>

namespace tcop {

// xoshiro256++ (Blackman & Vigna) seeded through splitmix64.
//
// A stream is identified by (seed, stream_index). Stream k draws its four
// state words from a disjoint block of the splitmix64 output sequence
// started at `seed`, so distinct indices give statistically independent
// generators. This is what makes bootstrap iteration k reproducible no
// matter which thread runs it: give iteration k the stream (seed, k).
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed, std::uint64_t stream_index = 0) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * 4ULL * stream_index;
    for (auto& word : state_) {
      z += 0x9e3779b97f4a7c15ULL;
      std::uint64_t x = z;
      x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
      x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
      word = x ^ (x >> 31);
    }
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform on [0,1), 53-bit resolution.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform on the open interval (0,1); safe to pass through log().
  double uniform_open() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }
  std::array<std::uint64_t, 4> state_;
};

}  // namespace tcop

#endif  // TCOP_RNG_HPP
