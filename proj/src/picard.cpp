#include <cmath>
#include <complex>
#include <sstream>

#include "korteweg/errors.hpp"
#include "korteweg/lp_besov.hpp"
#include "korteweg/solver.hpp"

namespace korteweg {

void PicardConfig::validate() const {
  if (max_iters < 1) throw ConfigError("picard.max_iters must be >= 1");
  if (!(tol > 0.0)) throw ConfigError("picard.tol must be > 0");
  if (time_steps < 1) throw ConfigError("picard.time_steps must be >= 1");
  if (!(p >= 1.0)) throw ConfigError("picard.p must be >= 1");
}

LinearSolution solve_linear_system(const RealField& q0, const VectorField& v0, double mu, double t) {
  const Grid& grid = q0.grid();
  const int d = grid.dim();
  const SpectralField Q = transform(q0);
  std::vector<SpectralField> V;
  for (const auto& c : v0) V.push_back(transform(c));

  SpectralField q(grid);
  std::vector<SpectralField> v(d, SpectralField(grid));
  const std::complex<double> I(0.0, 1.0);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto xi = grid.wavevector(i);
    const auto k = grid.derivative_wavevector(i);
    const double decay = std::exp(-mu * (xi[0] * xi[0] + xi[1] * xi[1]) * t);
    std::complex<double> div_v = 0.0;
    for (int j = 0; j < d; ++j) {
      div_v += I * k[j] * V[j][i];
      v[j][i] = decay * V[j][i];
    }
    q[i] = decay * (Q[i] - t * div_v);
  }
  LinearSolution out{inverse_transform(q), {}};
  for (const auto& c : v) out.v.push_back(inverse_transform(c));
  return out;
}

namespace {

// Solution at every node of  dw/dt - mu lap w = S(t),  w(0) = 0, with the
// trapezoid rule on the Duhamel integral:
//   I_{m+1} = e^{-lh} I_m + h/2 (e^{-lh} S_m + S_{m+1}).
std::vector<SpectralField> duhamel(const std::vector<SpectralField>& S, double mu, double h) {
  const Grid& grid = S.front().grid();
  std::vector<SpectralField> out(S.size(), SpectralField(grid));
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto xi = grid.wavevector(i);
    const double e = std::exp(-mu * (xi[0] * xi[0] + xi[1] * xi[1]) * h);
    std::complex<double> acc = 0.0;
    for (std::size_t m = 0; m + 1 < S.size(); ++m) {
      acc = e * acc + 0.5 * h * (e * S[m][i] + S[m + 1][i]);
      out[m + 1][i] = acc;
    }
  }
  return out;
}

RealField maybe_dealias(const RealField& f, bool on) { return on ? dealias(f) : f; }

}  // namespace

PicardResult picard_solve(const RealField& q0, const VectorField& v0, const PhysParams& p, double T,
                          const PicardConfig& cfg) {
  cfg.validate();
  p.validate();
  if (!(T > 0.0)) throw ConfigError("picard: T must be > 0");
  if (!p.is_quantum()) throw ConfigError("picard: the iteration scheme requires kappa = mu^2");
  const Grid& grid = q0.grid();
  const int d = grid.dim();
  const int M = cfg.time_steps;
  const double h = T / M;
  const BumpPair bumps = build_bumps();
  const double s = d / cfg.p;

  PicardResult res;
  res.T = T;
  for (int m = 0; m <= M; ++m) res.times.push_back(h * m);
  res.data_norm_q = besov_norm(q0, {s, cfg.p, 1.0}, bumps);
  res.data_norm_v = besov_norm(v0, {s - 1.0, cfg.p, 1.0}, bumps);

  PicardIterate linear;
  for (double t : res.times) {
    LinearSolution L = solve_linear_system(q0, v0, p.mu, t);
    linear.q.push_back(std::move(L.q));
    linear.v.push_back(std::move(L.v));
  }

  // Norm of the solution space on [0, T].
  auto space_norm = [&](const std::vector<RealField>& dq, const std::vector<VectorField>& dv) {
    return tilde_norm(dq, res.times, kInf, {s, cfg.p, 1.0}, bumps) +
           tilde_norm(dq, res.times, 1.0, {s + 2.0, cfg.p, 1.0}, bumps) +
           tilde_norm(dv, res.times, kInf, {s - 1.0, cfg.p, 1.0}, bumps) +
           tilde_norm(dv, res.times, 1.0, {s + 1.0, cfg.p, 1.0}, bumps);
  };

  PicardIterate current = linear;
  int growth = 0;
  for (int n = 1; n <= cfg.max_iters; ++n) {
    std::vector<SpectralField> Fq;  // source of the q correction
    std::vector<std::vector<SpectralField>> G(d);
    for (int m = 0; m <= M; ++m) {
      const RealField& q = current.q[m];
      const VectorField& v = current.v[m];
      const VectorField gq = grad(q);
      VectorField u = v;
      for (int j = 0; j < d; ++j) u[j] -= p.mu * gq[j];
      Fq.push_back(transform(maybe_dealias(p.mu * norm_squared(gq) - dot(v, gq), cfg.dealias)));
      const RealField pfac = p.gamma == 1.0
                                 ? RealField(grid, p.a)
                                 : map(q, [&](double x) {
                                     return p.a * p.gamma * std::pow(p.rho_bar * std::exp(x), p.gamma - 1.0);
                                   });
      for (int j = 0; j < d; ++j) {
        const VectorField gv = grad(v[j]);
        G[j].push_back(transform(maybe_dealias(p.mu * dot(gq, gv) - dot(u, gv) - pfac * gq[j], cfg.dealias)));
      }
    }
    std::vector<std::vector<SpectralField>> vbar(d);
    for (int j = 0; j < d; ++j) vbar[j] = duhamel(G[j], p.mu, h);
    // q-correction source: F - div vbar
    const std::complex<double> I(0.0, 1.0);
    for (int m = 0; m <= M; ++m)
      for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto k = grid.derivative_wavevector(i);
        for (int j = 0; j < d; ++j) Fq[m][i] -= I * k[j] * vbar[j][m][i];
      }
    const std::vector<SpectralField> qbar = duhamel(Fq, p.mu, h);

    PicardIterate next;
    std::vector<RealField> dq;
    std::vector<VectorField> dv;
    bool finite = true;
    for (int m = 0; m <= M; ++m) {
      RealField q = linear.q[m] + inverse_transform(qbar[m]);
      VectorField v = linear.v[m];
      for (int j = 0; j < d; ++j) v[j] += inverse_transform(vbar[j][m]);
      finite = finite && all_finite(q);
      dq.push_back(q - current.q[m]);
      VectorField diff(d, RealField(grid));
      for (int j = 0; j < d; ++j) {
        finite = finite && all_finite(v[j]);
        diff[j] = v[j] - current.v[m][j];
      }
      dv.push_back(std::move(diff));
      next.q.push_back(std::move(q));
      next.v.push_back(std::move(v));
    }
    const double diff = finite ? space_norm(dq, dv) : NAN;
    res.iterations = n;
    res.differences.push_back(diff);
    current = std::move(next);
    if (!std::isfinite(diff)) {
      res.non_contraction = true;
      break;
    }
    if (res.differences.size() >= 2) {
      const double prev = res.differences[res.differences.size() - 2];
      res.ratios.push_back(prev > 0.0 ? diff / prev : 0.0);
      growth = diff > prev ? growth + 1 : 0;
      if (growth >= 3) {
        res.non_contraction = true;
        break;
      }
    }
    if (diff < cfg.tol) {
      res.converged = true;
      break;
    }
  }
  res.last = std::move(current);
  std::ostringstream os;
  os.precision(6);
  if (res.non_contraction)
    os << "non-contraction at T = " << T << " (data norms q: " << res.data_norm_q << ", v: " << res.data_norm_v
       << ") after " << res.iterations << " iterations";
  else if (res.converged)
    os << "converged in " << res.iterations << " iterations";
  else
    os << "stopped at max_iters = " << cfg.max_iters << " without reaching tol";
  res.message = os.str();
  return res;
}

}  // namespace korteweg
