#include "llm_energy/rng.h"

namespace llm_energy {
namespace {

constexpr uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr uint32_t kPhiloxW1 = 0xBB67AE85u;

inline void mulhilo(uint32_t a, uint32_t b, uint32_t& hi, uint32_t& lo) {
  uint64_t product = static_cast<uint64_t>(a) * b;
  hi = static_cast<uint32_t>(product >> 32);
  lo = static_cast<uint32_t>(product);
}

}  // namespace

std::array<uint32_t, 4> philox4x32(std::array<uint32_t, 4> ctr,
                                   std::array<uint32_t, 2> key) {
  for (int round = 0; round < 10; ++round) {
    uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kPhiloxM0, ctr[0], hi0, lo0);
    mulhilo(kPhiloxM1, ctr[2], hi1, lo1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    key[0] += kPhiloxW0;
    key[1] += kPhiloxW1;
  }
  return ctr;
}

uint64_t random_bits(const RngState& rng) {
  std::array<uint32_t, 4> ctr = {
      static_cast<uint32_t>(rng.index), static_cast<uint32_t>(rng.index >> 32),
      static_cast<uint32_t>(rng.stream_id),
      static_cast<uint32_t>(rng.stream_id >> 32)};
  std::array<uint32_t, 2> key = {static_cast<uint32_t>(rng.seed),
                                 static_cast<uint32_t>(rng.seed >> 32)};
  auto out = philox4x32(ctr, key);
  return (static_cast<uint64_t>(out[0]) << 32) | out[1];
}

double uniform01(const RngState& rng) {
  // Midpoint of one of 2^53 equal cells: never 0, never 1.
  return (static_cast<double>(random_bits(rng) >> 11) + 0.5) * 0x1.0p-53;
}

uint64_t derive_seed(uint64_t seed, uint64_t salt) {
  // splitmix64 finalizer
  uint64_t z = seed + 0x9E3779B97F4A7C15ull * (salt + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace llm_energy
