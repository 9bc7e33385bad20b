#pragma once

// Binary field format, little-endian:
//   "SGGL" | u16 version | u32 n1 | u32 n2 | f64 L1 | f64 L2 | n1*n2 x (f64 re, f64 im)
// coefficients in row-major (j, k) order. A witness pair is two records back to back.

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>

#include "sggl/spectral.hpp"

namespace sggl {

inline constexpr std::uint16_t kSnapshotVersion = 1;

class SnapshotError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void write_field(std::ostream& os, const SpectralField& u);
/// Throws SnapshotError on bad magic, unknown version or truncation.
SpectralField read_field(std::istream& is);

void save_field(const std::string& path, const SpectralField& u);
SpectralField load_field(const std::string& path);

void save_pair(const std::string& path, const SpectralField& u, const SpectralField& phi);
std::pair<SpectralField, SpectralField> load_pair(const std::string& path);

}  // namespace sggl
