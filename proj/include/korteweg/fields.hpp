#pragma once

// Periodic grids, real and spectral fields, and exact Fourier differential
// operators.
//
// Transform convention: the forward transform is unnormalized,
//   F(k) = sum_j f(x_j) exp(-i k.x_j),
// and the inverse carries the 1/n^dim factor. Parseval therefore reads
//   sum_j |f(x_j)|^2 = n^{-dim} sum_k |F(k)|^2,
// and the continuous L2 norm is recovered by multiplying the left side by the
// cell volume.

#include <array>
#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace korteweg {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

/// Uniform periodic grid with n points per axis on [0, length)^dim.
class Grid {
 public:
  Grid(int dim, int n, double length = kTwoPi);

  int dim() const noexcept { return dim_; }
  int n() const noexcept { return n_; }
  double length() const noexcept { return length_; }

  std::size_t size() const noexcept { return size_; }
  double spacing() const noexcept { return length_ / n_; }
  double cell_volume() const noexcept;
  double volume() const noexcept;

  /// 2 pi / length: converts integer wave indices to physical wavenumbers.
  double wavenumber_unit() const noexcept { return kTwoPi / length_; }

  /// Signed integer wave index of FFT bin i along one axis. The Nyquist bin
  /// maps to +n/2.
  int wave_index(int bin) const noexcept { return bin <= n_ / 2 ? bin : bin - n_; }

  double coordinate(int i) const noexcept { return spacing() * i; }

  /// Physical wavevector of flat spectral index idx (second entry 0 in 1D).
  std::array<double, 2> wavevector(std::size_t idx) const noexcept;

  /// Wavevector with the Nyquist bin zeroed, used for odd-order derivatives so
  /// that real fields stay real.
  std::array<double, 2> derivative_wavevector(std::size_t idx) const noexcept;

  /// Integer wave indices of flat index idx.
  std::array<int, 2> wave_indices(std::size_t idx) const noexcept;

  /// Physical coordinates of flat point index idx.
  std::array<double, 2> point(std::size_t idx) const noexcept;

  bool operator==(const Grid&) const = default;

 private:
  int dim_;
  int n_;
  double length_;
  std::size_t size_;
};

class RealField {
 public:
  explicit RealField(const Grid& grid, double value = 0.0);
  RealField(const Grid& grid, std::vector<double> values);

  const Grid& grid() const noexcept { return grid_; }
  std::size_t size() const noexcept { return values_.size(); }
  std::span<double> values() noexcept { return values_; }
  std::span<const double> values() const noexcept { return values_; }

  double& operator[](std::size_t i) noexcept { return values_[i]; }
  double operator[](std::size_t i) const noexcept { return values_[i]; }

  RealField& operator+=(const RealField& other);
  RealField& operator-=(const RealField& other);
  RealField& operator*=(const RealField& other);
  RealField& operator*=(double s) noexcept;
  RealField& operator+=(double s) noexcept;

 private:
  Grid grid_;
  std::vector<double> values_;
};

RealField operator+(RealField a, const RealField& b);
RealField operator-(RealField a, const RealField& b);
RealField operator*(RealField a, const RealField& b);
RealField operator*(double s, RealField a);
RealField operator*(RealField a, double s);
RealField operator-(RealField a);

using VectorField = std::vector<RealField>;
using TensorField = std::vector<VectorField>;

/// Complex Fourier coefficients over all n^dim wave indices (bins in FFTW order).
class SpectralField {
 public:
  explicit SpectralField(const Grid& grid);
  SpectralField(const Grid& grid, std::vector<std::complex<double>> coeffs);

  const Grid& grid() const noexcept { return grid_; }
  std::size_t size() const noexcept { return coeffs_.size(); }
  std::span<std::complex<double>> coeffs() noexcept { return coeffs_; }
  std::span<const std::complex<double>> coeffs() const noexcept { return coeffs_; }

  std::complex<double>& operator[](std::size_t i) noexcept { return coeffs_[i]; }
  const std::complex<double>& operator[](std::size_t i) const noexcept { return coeffs_[i]; }

  /// Flat index of the mode with wave indices (-k).
  std::size_t conjugate_index(std::size_t idx) const noexcept;

  /// Largest |F(-k) - conj(F(k))| over all modes.
  double hermitian_defect() const noexcept;

 private:
  Grid grid_;
  std::vector<std::complex<double>> coeffs_;
};

SpectralField transform(const RealField& f);
RealField inverse_transform(const SpectralField& F);

/// Applies a multiplier m(xi) mode by mode, xi the physical wavevector.
using Multiplier = std::function<std::complex<double>(const std::array<double, 2>&)>;
SpectralField apply_multiplier(const SpectralField& F, const Multiplier& m);
RealField filter(const RealField& f, const std::function<double(const std::array<double, 2>&)>& m);

RealField derivative(const RealField& f, int axis);
VectorField grad(const RealField& f);
RealField div(const VectorField& F);
RealField laplacian(const RealField& f);
TensorField hessian(const RealField& f);

/// 2/3-rule: zeroes every mode with some |k_i| > (2/3)(n/2) (integer indices).
SpectralField dealias(const SpectralField& F);
RealField dealias(const RealField& f);
bool is_dealiased_mode(const Grid& grid, std::size_t idx) noexcept;

/// Fields sampled from a function of position.
RealField sample(const Grid& grid, const std::function<double(double)>& f1d);
RealField sample(const Grid& grid, const std::function<double(double, double)>& f2d);

RealField map(const RealField& f, const std::function<double(double)>& fn);

/// Quadrature on the grid (rectangle rule, spectrally accurate for periodic fields).
double integral(const RealField& f);
double mean(const RealField& f);
double min_value(const RealField& f);
double max_value(const RealField& f);
double max_abs(const RealField& f);
double max_abs_diff(const RealField& a, const RealField& b);

/// Discrete L^p norm (cell-volume weighted); p = infinity gives the max norm.
double lp_norm(const RealField& f, double p);
double l2_norm(const VectorField& F);
bool all_finite(const RealField& f) noexcept;

/// Pointwise Euclidean magnitude squared of a vector field.
RealField norm_squared(const VectorField& F);
RealField dot(const VectorField& A, const VectorField& B);
VectorField zero_vector(const Grid& grid);

void require_same_grid(const Grid& a, const Grid& b, const char* where);

}  // namespace korteweg
