#pragma once

#include <array>
#include <cstdint>

namespace llm_energy {

// Coordinates of one random draw. A draw is a pure function of
// (seed, stream_id, index): no hidden state, so results do not depend on
// evaluation order or on how work is split across threads.
struct RngState {
  uint64_t seed = 0;
  uint64_t stream_id = 0;
  uint64_t index = 0;

  RngState at(uint64_t i) const { return {seed, stream_id, i}; }
  RngState next() const { return {seed, stream_id, index + 1}; }
  bool operator==(const RngState&) const = default;
};

// Philox4x32-10 block function (Salmon et al., "Parallel random numbers:
// as easy as 1, 2, 3").
std::array<uint32_t, 4> philox4x32(std::array<uint32_t, 4> counter,
                                   std::array<uint32_t, 2> key);

uint64_t random_bits(const RngState& rng);

// Uniform on the open interval (0, 1) with 53 bits of resolution.
double uniform01(const RngState& rng);

// Mixes a 64-bit value with a salt; used to derive sub-seeds.
uint64_t derive_seed(uint64_t seed, uint64_t salt);

}  // namespace llm_energy
