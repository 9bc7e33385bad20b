#pragma once

// Counter-based Philox4x32-10 generator. A stream is identified by
// (seed, path index, purpose), so every Monte-Carlo path draws the same
// numbers no matter which thread runs it or in which order.

#include <array>
#include <cstdint>

namespace sggl {

using Philox4x32 = std::array<std::uint32_t, 4>;

Philox4x32 philox4x32_10(Philox4x32 ctr, std::array<std::uint32_t, 2> key);

enum class Stream : std::uint32_t {
  Jumps = 1,
  Initial = 2,
  Sampler = 3,
  Isometry = 4,
  Perturbation = 5,
};

class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t path, Stream stream);

  std::uint32_t next_u32();
  std::uint64_t next_u64();
  /// Uniform on the open interval (0, 1), 53-bit resolution.
  double uniform();
  double exponential(double rate);
  double normal();

 private:
  std::array<std::uint32_t, 2> key_;
  std::uint64_t path_;
  std::uint32_t stream_;
  std::uint64_t block_ = 0;
  Philox4x32 buf_{};
  int pos_ = 4;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace sggl
