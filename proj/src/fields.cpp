#include "korteweg/fields.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "fft.hpp"
#include "korteweg/errors.hpp"

namespace korteweg {

Grid::Grid(int dim, int n, double length) : dim_(dim), n_(n), length_(length), size_(0) {
  if (dim != 1 && dim != 2) throw ConfigError("grid.dim must be 1 or 2");
  if (n < 8 || (n & (n - 1)) != 0) throw ConfigError("grid.n must be a power of two >= 8");
  if (!(length > 0.0) || !std::isfinite(length)) throw ConfigError("grid.length must be positive");
  size_ = dim == 1 ? static_cast<std::size_t>(n) : static_cast<std::size_t>(n) * n;
}

double Grid::cell_volume() const noexcept { return std::pow(spacing(), dim_); }
double Grid::volume() const noexcept { return std::pow(length_, dim_); }

std::array<int, 2> Grid::wave_indices(std::size_t idx) const noexcept {
  if (dim_ == 1) return {wave_index(static_cast<int>(idx)), 0};
  const int ix = static_cast<int>(idx / n_);
  const int iy = static_cast<int>(idx % n_);
  return {wave_index(ix), wave_index(iy)};
}

std::array<double, 2> Grid::wavevector(std::size_t idx) const noexcept {
  const auto k = wave_indices(idx);
  const double unit = wavenumber_unit();
  return {unit * k[0], unit * k[1]};
}

std::array<double, 2> Grid::derivative_wavevector(std::size_t idx) const noexcept {
  auto k = wave_indices(idx);
  for (int& ki : k)
    if (ki == n_ / 2) ki = 0;
  const double unit = wavenumber_unit();
  return {unit * k[0], unit * k[1]};
}

std::array<double, 2> Grid::point(std::size_t idx) const noexcept {
  if (dim_ == 1) return {coordinate(static_cast<int>(idx)), 0.0};
  return {coordinate(static_cast<int>(idx / n_)), coordinate(static_cast<int>(idx % n_))};
}

void require_same_grid(const Grid& a, const Grid& b, const char* where) {
  if (!(a == b)) {
    std::ostringstream os;
    os << where << ": grid mismatch (" << a.dim() << "D n=" << a.n() << " vs " << b.dim()
       << "D n=" << b.n() << ")";
    throw ConfigError(os.str());
  }
}

// ---------------------------------------------------------------------------

RealField::RealField(const Grid& grid, double value) : grid_(grid), values_(grid.size(), value) {}

RealField::RealField(const Grid& grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size()) throw ConfigError("field size does not match its grid");
}

RealField& RealField::operator+=(const RealField& o) {
  require_same_grid(grid_, o.grid_, "field +");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += o.values_[i];
  return *this;
}

RealField& RealField::operator-=(const RealField& o) {
  require_same_grid(grid_, o.grid_, "field -");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= o.values_[i];
  return *this;
}

RealField& RealField::operator*=(const RealField& o) {
  require_same_grid(grid_, o.grid_, "field *");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] *= o.values_[i];
  return *this;
}

RealField& RealField::operator*=(double s) noexcept {
  for (double& v : values_) v *= s;
  return *this;
}

RealField& RealField::operator+=(double s) noexcept {
  for (double& v : values_) v += s;
  return *this;
}

RealField operator+(RealField a, const RealField& b) { return a += b; }
RealField operator-(RealField a, const RealField& b) { return a -= b; }
RealField operator*(RealField a, const RealField& b) { return a *= b; }
RealField operator*(double s, RealField a) { return a *= s; }
RealField operator*(RealField a, double s) { return a *= s; }
RealField operator-(RealField a) { return a *= -1.0; }

// ---------------------------------------------------------------------------

SpectralField::SpectralField(const Grid& grid) : grid_(grid), coeffs_(grid.size()) {}

SpectralField::SpectralField(const Grid& grid, std::vector<std::complex<double>> coeffs)
    : grid_(grid), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != grid_.size()) throw ConfigError("spectrum size does not match its grid");
}

std::size_t SpectralField::conjugate_index(std::size_t idx) const noexcept {
  const std::size_t n = static_cast<std::size_t>(grid_.n());
  auto flip = [n](std::size_t i) { return (n - i) % n; };
  if (grid_.dim() == 1) return flip(idx);
  return flip(idx / n) * n + flip(idx % n);
}

double SpectralField::hermitian_defect() const noexcept {
  double worst = 0.0;
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    worst = std::max(worst, std::abs(coeffs_[conjugate_index(i)] - std::conj(coeffs_[i])));
  return worst;
}

SpectralField transform(const RealField& f) {
  std::vector<std::complex<double>> in(f.values().begin(), f.values().end());
  SpectralField out(f.grid());
  detail::fft_forward(f.grid(), in.data(), out.coeffs().data());
  return out;
}

RealField inverse_transform(const SpectralField& F) {
  std::vector<std::complex<double>> out(F.size());
  detail::fft_backward(F.grid(), F.coeffs().data(), out.data());
  const double scale = 1.0 / static_cast<double>(F.size());
  RealField f(F.grid());
  for (std::size_t i = 0; i < out.size(); ++i) f[i] = out[i].real() * scale;
  return f;
}

SpectralField apply_multiplier(const SpectralField& F, const Multiplier& m) {
  SpectralField out(F.grid());
  for (std::size_t i = 0; i < F.size(); ++i) out[i] = m(F.grid().wavevector(i)) * F[i];
  return out;
}

RealField filter(const RealField& f,
                 const std::function<double(const std::array<double, 2>&)>& m) {
  SpectralField F = transform(f);
  for (std::size_t i = 0; i < F.size(); ++i) F[i] *= m(f.grid().wavevector(i));
  return inverse_transform(F);
}

RealField derivative(const RealField& f, int axis) {
  SpectralField F = transform(f);
  const std::complex<double> I(0.0, 1.0);
  for (std::size_t i = 0; i < F.size(); ++i) F[i] *= I * f.grid().derivative_wavevector(i)[axis];
  return inverse_transform(F);
}

VectorField grad(const RealField& f) {
  const SpectralField F = transform(f);
  const std::complex<double> I(0.0, 1.0);
  VectorField out;
  for (int axis = 0; axis < f.grid().dim(); ++axis) {
    SpectralField D(f.grid());
    for (std::size_t i = 0; i < F.size(); ++i) D[i] = I * f.grid().derivative_wavevector(i)[axis] * F[i];
    out.push_back(inverse_transform(D));
  }
  return out;
}

RealField div(const VectorField& F) {
  if (F.empty()) throw ConfigError("div of an empty vector field");
  const Grid& grid = F.front().grid();
  if (static_cast<int>(F.size()) != grid.dim()) throw ConfigError("div: component count != dim");
  const std::complex<double> I(0.0, 1.0);
  SpectralField acc(grid);
  for (int axis = 0; axis < grid.dim(); ++axis) {
    require_same_grid(grid, F[axis].grid(), "div");
    const SpectralField C = transform(F[axis]);
    for (std::size_t i = 0; i < C.size(); ++i) acc[i] += I * grid.derivative_wavevector(i)[axis] * C[i];
  }
  return inverse_transform(acc);
}

RealField laplacian(const RealField& f) {
  SpectralField F = transform(f);
  for (std::size_t i = 0; i < F.size(); ++i) {
    const auto k = f.grid().wavevector(i);
    F[i] *= -(k[0] * k[0] + k[1] * k[1]);
  }
  return inverse_transform(F);
}

TensorField hessian(const RealField& f) {
  const Grid& grid = f.grid();
  const SpectralField F = transform(f);
  const int d = grid.dim();
  TensorField H(d, VectorField(d, RealField(grid)));
  for (int a = 0; a < d; ++a) {
    for (int b = a; b < d; ++b) {
      SpectralField D(grid);
      for (std::size_t i = 0; i < F.size(); ++i) {
        // Pure second derivatives keep the Nyquist bin, mixed ones use the
        // odd-derivative wavevector on each axis.
        double m;
        if (a == b) {
          const double k = grid.wavevector(i)[a];
          m = -k * k;
        } else {
          const auto k = grid.derivative_wavevector(i);
          m = -k[a] * k[b];
        }
        D[i] = m * F[i];
      }
      H[a][b] = inverse_transform(D);
      if (a != b) H[b][a] = H[a][b];
    }
  }
  return H;
}

bool is_dealiased_mode(const Grid& grid, std::size_t idx) noexcept {
  const double cutoff = (2.0 / 3.0) * (grid.n() / 2.0);
  const auto k = grid.wave_indices(idx);
  for (int axis = 0; axis < grid.dim(); ++axis)
    if (std::abs(k[axis]) > cutoff) return true;
  return false;
}

SpectralField dealias(const SpectralField& F) {
  SpectralField out = F;
  for (std::size_t i = 0; i < out.size(); ++i)
    if (is_dealiased_mode(F.grid(), i)) out[i] = 0.0;
  return out;
}

RealField dealias(const RealField& f) { return inverse_transform(dealias(transform(f))); }

RealField sample(const Grid& grid, const std::function<double(double)>& f1d) {
  if (grid.dim() != 1) throw ConfigError("sample: 1D function on a 2D grid");
  RealField f(grid);
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = f1d(grid.point(i)[0]);
  return f;
}

RealField sample(const Grid& grid, const std::function<double(double, double)>& f2d) {
  RealField f(grid);
  for (std::size_t i = 0; i < f.size(); ++i) {
    const auto x = grid.point(i);
    f[i] = f2d(x[0], x[1]);
  }
  return f;
}

RealField map(const RealField& f, const std::function<double(double)>& fn) {
  RealField out(f.grid());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = fn(f[i]);
  return out;
}

double integral(const RealField& f) {
  double s = 0.0;
  for (double v : f.values()) s += v;
  return s * f.grid().cell_volume();
}

double mean(const RealField& f) { return integral(f) / f.grid().volume(); }

double min_value(const RealField& f) {
  return *std::min_element(f.values().begin(), f.values().end());
}

double max_value(const RealField& f) {
  return *std::max_element(f.values().begin(), f.values().end());
}

double max_abs(const RealField& f) {
  double m = 0.0;
  for (double v : f.values()) m = std::max(m, std::abs(v));
  return m;
}

double max_abs_diff(const RealField& a, const RealField& b) {
  require_same_grid(a.grid(), b.grid(), "max_abs_diff");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

double lp_norm(const RealField& f, double p) {
  if (std::isinf(p)) return max_abs(f);
  if (p < 1.0) throw DomainError("lp_norm: p must be >= 1");
  double s = 0.0;
  if (p == 2.0) {
    for (double v : f.values()) s += v * v;
    return std::sqrt(s * f.grid().cell_volume());
  }
  for (double v : f.values()) s += std::pow(std::abs(v), p);
  return std::pow(s * f.grid().cell_volume(), 1.0 / p);
}

double l2_norm(const VectorField& F) {
  if (F.empty()) return 0.0;
  return std::sqrt(integral(norm_squared(F)));
}

bool all_finite(const RealField& f) noexcept {
  for (double v : f.values())
    if (!std::isfinite(v)) return false;
  return true;
}

RealField norm_squared(const VectorField& F) {
  RealField out(F.front().grid());
  for (const auto& c : F)
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += c[i] * c[i];
  return out;
}

RealField dot(const VectorField& A, const VectorField& B) {
  RealField out(A.front().grid());
  for (std::size_t c = 0; c < A.size(); ++c)
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += A[c][i] * B[c][i];
  return out;
}

VectorField zero_vector(const Grid& grid) { return VectorField(grid.dim(), RealField(grid)); }

}  // namespace korteweg
