#include "sggl/snapshot.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

namespace sggl {

namespace {

template <class U>
void put(std::ostream& os, U v) {
  char b[sizeof(U)];
  for (std::size_t i = 0; i < sizeof(U); ++i) b[i] = char((v >> (8 * i)) & 0xffu);
  os.write(b, sizeof(U));
}

template <class U>
U get(std::istream& is) {
  unsigned char b[sizeof(U)];
  if (!is.read(reinterpret_cast<char*>(b), sizeof(U))) throw SnapshotError("snapshot: truncated");
  U v = 0;
  for (std::size_t i = 0; i < sizeof(U); ++i) v |= U(b[i]) << (8 * i);
  return v;
}

void put_f64(std::ostream& os, double x) { put(os, std::bit_cast<std::uint64_t>(x)); }
double get_f64(std::istream& is) { return std::bit_cast<double>(get<std::uint64_t>(is)); }

}  // namespace

void write_field(std::ostream& os, const SpectralField& u) {
  os.write("SGGL", 4);
  put(os, kSnapshotVersion);
  put(os, std::uint32_t(u.n1));
  put(os, std::uint32_t(u.n2));
  put_f64(os, u.L1);
  put_f64(os, u.L2);
  for (const cplx& c : u.a) {
    put_f64(os, c.real());
    put_f64(os, c.imag());
  }
}

SpectralField read_field(std::istream& is) {
  char magic[4];
  if (!is.read(magic, 4)) throw SnapshotError("snapshot: truncated");
  if (std::memcmp(magic, "SGGL", 4) != 0) throw SnapshotError("snapshot: bad magic");
  const auto version = get<std::uint16_t>(is);
  if (version != kSnapshotVersion)
    throw SnapshotError("snapshot: unsupported version " + std::to_string(version));
  const auto n1 = get<std::uint32_t>(is);
  const auto n2 = get<std::uint32_t>(is);
  const double L1 = get_f64(is);
  const double L2 = get_f64(is);
  if (n1 == 0 || n2 == 0 || !(L1 > 0.0) || !(L2 > 0.0)) throw SnapshotError("snapshot: bad header");
  SpectralField u(n1, n2, L1, L2);
  for (auto& c : u.a) {
    const double re = get_f64(is);
    c = cplx(re, get_f64(is));
  }
  return u;
}

void save_field(const std::string& path, const SpectralField& u) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw SnapshotError("cannot write " + path);
  write_field(os, u);
}

SpectralField load_field(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw SnapshotError("cannot read " + path);
  return read_field(is);
}

void save_pair(const std::string& path, const SpectralField& u, const SpectralField& phi) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw SnapshotError("cannot write " + path);
  write_field(os, u);
  write_field(os, phi);
}

std::pair<SpectralField, SpectralField> load_pair(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw SnapshotError("cannot read " + path);
  auto u = read_field(is);
  auto phi = read_field(is);
  return {std::move(u), std::move(phi)};
}

}  // namespace sggl
