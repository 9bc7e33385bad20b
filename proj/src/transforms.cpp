#include "transforms.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

namespace sggl::detail {

namespace {

using Key = std::tuple<int, std::size_t, std::size_t, int, std::size_t>;

std::mutex& plan_mutex() {
  static std::mutex m;
  return m;
}

std::map<Key, fftw_plan>& plan_cache() {
  static std::map<Key, fftw_plan> cache;
  return cache;
}

fftw_plan get_plan(double* data, std::size_t P1, std::size_t P2, std::size_t ld, int axis, R2R kind) {
  const Key key{static_cast<int>(kind), P1, P2, axis, ld};
  std::lock_guard<std::mutex> lock(plan_mutex());
  auto& cache = plan_cache();
  if (auto it = cache.find(key); it != cache.end()) return it->second;

  fftw_iodim dim;
  fftw_iodim many[2];
  if (axis == 1) {
    dim = {static_cast<int>(P2), 2, 2};
    many[0] = {static_cast<int>(P1), static_cast<int>(2 * ld), static_cast<int>(2 * ld)};
  } else {
    dim = {static_cast<int>(P1), static_cast<int>(2 * ld), static_cast<int>(2 * ld)};
    many[0] = {static_cast<int>(P2), 2, 2};
  }
  many[1] = {2, 1, 1};
  fftw_r2r_kind k = kind == R2R::Dst1 ? FFTW_RODFT00 : FFTW_REDFT00;
  // FFTW_ESTIMATE leaves the array untouched, so planning on live data is safe.
  fftw_plan plan = fftw_plan_guru_r2r(1, &dim, 2, many, data, data, &k,
                                      FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (!plan) throw std::runtime_error("fftw: could not create plan");
  cache.emplace(key, plan);
  return plan;
}

}  // namespace

void axis_r2r(std::complex<double>* data, std::size_t P1, std::size_t P2, int axis, R2R kind,
              std::size_t ld) {
  if (P1 == 0 || P2 == 0) return;
  if (ld == 0) ld = P2;
  if (ld < P2) throw std::invalid_argument("axis_r2r: row stride shorter than row");
  const std::size_t len = axis == 0 ? P1 : P2;
  if (kind == R2R::Dct1 && len < 2) throw std::invalid_argument("DCT-I needs length >= 2");
  double* d = reinterpret_cast<double*>(data);
  fftw_plan plan = get_plan(d, P1, P2, ld, axis, kind);
  fftw_execute_r2r(plan, d, d);
}

}  // namespace sggl::detail
