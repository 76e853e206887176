#include "app/presets.hpp"

#include <cmath>
#include <complex>
#include <random>

#include "korteweg/errors.hpp"

namespace korteweg::app {

namespace {

// Angle in [0, 2 pi) for a physical coordinate.
double angle(const Grid& g, double x) { return g.wavenumber_unit() * x; }

RealField field_of(const Grid& g, const std::function<double(double, double)>& f) {
  RealField out(g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto x = g.point(i);
    out[i] = f(angle(g, x[0]), g.dim() == 2 ? angle(g, x[1]) : 0.0);
  }
  return out;
}

}  // namespace

RealField random_field(const Grid& g, int modes, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  SpectralField F(g);
  const std::size_t n = static_cast<std::size_t>(g.n());
  auto index = [&](int kx, int ky) {
    const std::size_t ix = static_cast<std::size_t>((kx + g.n()) % g.n());
    if (g.dim() == 1) return ix;
    return ix * n + static_cast<std::size_t>((ky + g.n()) % g.n());
  };
  const int ky_max = g.dim() == 2 ? modes : 0;
  for (int kx = 0; kx <= modes; ++kx)
    for (int ky = -ky_max; ky <= ky_max; ++ky) {
      if (kx == 0 && ky <= 0) continue;  // one representative per conjugate pair
      if (kx * kx + ky * ky > modes * modes) continue;
      const double decay = 1.0 / (1.0 + kx * kx + ky * ky);
      const std::complex<double> c(normal(rng) * decay, normal(rng) * decay);
      F[index(kx, ky)] = c;
      F[index(-kx, -ky)] = std::conj(c);
    }
  RealField f = inverse_transform(F);
  const double m = max_abs(f);
  return m > 0.0 ? (1.0 / m) * f : f;
}

PrimitiveState make_initial(const Grid& grid, const PhysParams& p, const InitialSpec& spec) {
  const int d = grid.dim();
  const double A = spec.amplitude;
  const double w2 = spec.width * spec.width;
  PrimitiveState s{RealField(grid, p.rho_bar), zero_vector(grid)};

  if (spec.preset == "equilibrium") return s;

  if (spec.preset == "smooth_bump") {
    s.rho = field_of(grid, [&](double x, double y) {
      const double b = std::exp(-((1.0 - std::cos(x)) + (d == 2 ? 1.0 - std::cos(y) : 0.0)) / w2);
      return p.rho_bar * (1.0 + A * b);
    });
    s.u[0] = field_of(grid, [&](double x, double) { return A * std::sin(x); });
    if (d == 2) s.u[1] = field_of(grid, [&](double, double y) { return A * std::sin(y); });
  } else if (spec.preset == "near_vacuum") {
    s.rho = field_of(grid, [&](double x, double y) {
      const double e = (1.0 - std::cos(x - M_PI)) + (d == 2 ? 1.0 - std::cos(y - M_PI) : 0.0);
      return p.rho_bar * (1.0 - (1.0 - spec.delta) * std::exp(-e / w2));
    });
  } else if (spec.preset == "random_bandlimited") {
    std::mt19937_64 rng(spec.seed);
    s.rho = map(random_field(grid, spec.modes, rng), [&](double f) { return p.rho_bar * (1.0 + A * f); });
    for (int j = 0; j < d; ++j) s.u[j] = A * random_field(grid, spec.modes, rng);
  } else if (spec.preset == "manufactured") {
    s.rho = field_of(grid, [&](double x, double y) {
      return p.rho_bar * (1.0 + A * std::cos(x) * (d == 2 ? std::cos(y) : 1.0));
    });
    s.u[0] = field_of(grid, [&](double x, double) { return A * std::sin(2.0 * x); });
    if (d == 2) s.u[1] = field_of(grid, [&](double, double y) { return A * std::sin(2.0 * y); });
  } else {
    throw ConfigError("initial.preset: unknown preset '" + spec.preset + "'");
  }
  const double m = min_value(s.rho);
  if (!(m > 0.0)) throw ConfigError("initial.amplitude too large: initial density is not positive");
  return s;
}

}  // namespace korteweg::app
