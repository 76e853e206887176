#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>
#include <vector>

namespace korteweg::detail {
namespace {

// The FFTW planner is not thread-safe; executing an existing plan on new
// arrays is.
std::mutex planner_mutex;

fftw_plan get_plan(const Grid& grid, int sign) {
  static std::map<std::tuple<int, int, int>, fftw_plan> cache;
  std::lock_guard<std::mutex> lock(planner_mutex);
  const auto key = std::make_tuple(grid.dim(), grid.n(), sign);
  if (auto it = cache.find(key); it != cache.end()) return it->second;

  std::vector<std::complex<double>> a(grid.size()), b(grid.size());
  auto* in = reinterpret_cast<fftw_complex*>(a.data());
  auto* out = reinterpret_cast<fftw_complex*>(b.data());
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  fftw_plan plan = grid.dim() == 1 ? fftw_plan_dft_1d(grid.n(), in, out, sign, flags)
                                   : fftw_plan_dft_2d(grid.n(), grid.n(), in, out, sign, flags);
  cache.emplace(key, plan);
  return plan;
}

void execute(const Grid& grid, int sign, const std::complex<double>* in, std::complex<double>* out) {
  fftw_plan plan = get_plan(grid, sign);
  // FFTW does not modify the input of an out-of-place c2c transform.
  fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(in)),
                   reinterpret_cast<fftw_complex*>(out));
}

}  // namespace

void fft_forward(const Grid& grid, const std::complex<double>* in, std::complex<double>* out) {
  execute(grid, FFTW_FORWARD, in, out);
}

void fft_backward(const Grid& grid, const std::complex<double>* in, std::complex<double>* out) {
  execute(grid, FFTW_BACKWARD, in, out);
}

}  // namespace korteweg::detail
