#include "sggl/rng.hpp"

#include <cmath>
#include <numbers>

namespace sggl {

namespace {

constexpr std::uint32_t kM0 = 0xD2511F53u, kM1 = 0xCD9E8D57u;
constexpr std::uint32_t kW0 = 0x9E3779B9u, kW1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
  const std::uint64_t p = std::uint64_t(a) * b;
  hi = std::uint32_t(p >> 32);
  lo = std::uint32_t(p);
}

}  // namespace

Philox4x32 philox4x32_10(Philox4x32 c, std::array<std::uint32_t, 2> k) {
  for (int r = 0; r < 10; ++r) {
    if (r > 0) {
      k[0] += kW0;
      k[1] += kW1;
    }
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kM0, c[0], hi0, lo0);
    mulhilo(kM1, c[2], hi1, lo1);
    c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
  }
  return c;
}

Rng::Rng(std::uint64_t seed, std::uint64_t path, Stream stream)
    : key_{std::uint32_t(seed), std::uint32_t(seed >> 32)},
      path_(path),
      stream_(static_cast<std::uint32_t>(stream)) {}

std::uint32_t Rng::next_u32() {
  if (pos_ == 4) {
    // counter = (block lo, block hi, path lo, path hi [24 bits] | stream [8 bits])
    const Philox4x32 ctr{std::uint32_t(block_), std::uint32_t(block_ >> 32),
                         std::uint32_t(path_),
                         (std::uint32_t(path_ >> 32) << 8) | (stream_ & 0xffu)};
    buf_ = philox4x32_10(ctr, key_);
    ++block_;
    pos_ = 0;
  }
  return buf_[pos_++];
}

std::uint64_t Rng::next_u64() {
  const std::uint64_t hi = next_u32();
  return (hi << 32) | next_u32();
}

double Rng::uniform() {
  return (double(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double Rng::exponential(double rate) { return -std::log(uniform()) / rate; }

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double r = std::sqrt(-2.0 * std::log(uniform()));
  const double th = 2.0 * std::numbers::pi * uniform();
  spare_ = r * std::sin(th);
  has_spare_ = true;
  return r * std::cos(th);
}

}  // namespace sggl
