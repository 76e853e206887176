#pragma once

// Littlewood-Paley decomposition on the torus. Blocks are taken in physical
// wavenumbers: Delta_l f = F^{-1}[phi(2^{-l}|xi|) f^(xi)], with the mean mode
// kept apart. The l range covers every block with nonzero weight on some
// resolved mode, so the reconstruction is exact.

#include <limits>
#include <string>
#include <vector>

#include "korteweg/fields.hpp"

namespace korteweg {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// chi = 1 on [0, 3/4], 0 on [4/3, inf), smooth and nonincreasing in between;
/// phi(r) = chi(r/2) - chi(r), supported in [3/4, 8/3].
class BumpPair {
 public:
  static constexpr double kInner = 0.75;
  static constexpr double kOuter = 4.0 / 3.0;

  double chi(double r) const noexcept;
  double phi(double r) const noexcept;

  /// Tabulated profiles on [0, 3] at `resolution` samples per unit.
  std::vector<double> chi_samples;
  std::vector<double> phi_samples;
  int resolution = 0;
};

BumpPair build_bumps(int resolution = 256);

struct BesovSpec {
  double s = 0;
  double p = 2;
  double r = 2;  // kInf for sup
  void validate() const;
};

struct DyadicDecomposition {
  int l_min = 0;
  int l_max = -1;
  std::vector<RealField> blocks;      // blocks[l - l_min]
  std::vector<bool> boundary;         // annulus partially outside the resolved band
  double mean = 0;                    // value of the constant mode

  int count() const { return l_max - l_min + 1; }
  const RealField& block(int l) const { return blocks.at(static_cast<std::size_t>(l - l_min)); }
};

/// Range of l whose annulus meets some nonzero resolved wavevector of the grid.
std::pair<int, int> block_range(const Grid& grid, const BumpPair& bumps);
bool is_boundary_block(const Grid& grid, int l);

DyadicDecomposition decompose(const RealField& f, const BumpPair& bumps);

/// Single block Delta_l f, computed without the full decomposition.
RealField block(const RealField& f, const BumpPair& bumps, int l);

struct BlockNorm {
  int l = 0;
  double block_norm = 0;
  double weighted = 0;  // 2^{ls} ||Delta_l f||_Lp
  bool boundary = false;
};

std::vector<BlockNorm> block_norms(const DyadicDecomposition& d, const BesovSpec& spec);
double besov_norm(const RealField& f, const BesovSpec& spec, const BumpPair& bumps);
double besov_norm(const VectorField& f, const BesovSpec& spec, const BumpPair& bumps);
double lr_sum(const std::vector<double>& terms, double r);

/// JSON array of {l, block_norm, weighted, boundary}.
std::string block_report_json(const std::vector<BlockNorm>& norms);

/// Besov tilde norm: L^sigma in time (trapezoid on the given uniform grid) of
/// each weighted block norm, then l^r over blocks.
double tilde_norm(const std::vector<RealField>& series, const std::vector<double>& times, double sigma,
                  const BesovSpec& spec, const BumpPair& bumps);
/// Sum of the component tilde norms of a vector series.
double tilde_norm(const std::vector<VectorField>& series, const std::vector<double>& times, double sigma,
                  const BesovSpec& spec, const BumpPair& bumps);

struct BonyParts {
  RealField Tuv;
  RealField Tvu;
  RealField R;
  double mean_product = 0;  // mean(u) * mean(v)
};

/// uv = Tuv + Tvu + R + mean(u) mean(v), with
/// T_u v = sum_l S_{l-1}u Delta_l v, S_{l-1}u = mean(u) + sum_{m <= l-2} Delta_m u,
/// R = sum_{|l-l'| <= 1} Delta_l u Delta_l' v.
BonyParts bony_decompose(const RealField& u, const RealField& v, const BumpPair& bumps);

struct HeatBlockEntry {
  int l = 0;
  double t = 0;
  double ratio = 1;   // ||Delta_l u(t)|| / ||Delta_l u0||
  double lower = 1;   // exp(-mu (8/3)^2 2^{2l} t)
  double upper = 1;   // exp(-mu (3/4)^2 2^{2l} t)
  double c_fit = 0;   // -ln(ratio) / (mu 2^{2l} t)
  bool ok = true;
  bool boundary = false;
};

struct HeatBlockReport {
  std::vector<HeatBlockEntry> entries;
  bool all_ok = true;
};

/// Exact heat evolution u(t) = exp(t mu lap) u0, compared block by block with
/// the annulus exponentials. Norms are L^p (p = 2 by default, where the
/// two-sided bound is exact by Parseval).
HeatBlockReport heat_block_decay_check(const RealField& u0, double mu, const std::vector<double>& times,
                                       const BumpPair& bumps, double p = 2.0);

RealField heat_evolve(const RealField& u0, double mu, double t);

/// ||grad Delta_l f||_Lp / (2^l ||Delta_l f||_Lp); Bernstein gives <= 8/3 for p = 2.
double bernstein_ratio(const RealField& f, const BumpPair& bumps, int l, double p = 2.0);

/// Largest block ratio 2^{-l N (1/p1 - 1/p2)} ||Delta_l f||_p2 / ||Delta_l f||_p1 over the fields;
/// it bounds ||f||_{B^{s - N(1/p1-1/p2)}_{p2,r}} / ||f||_{B^s_{p1,r}} for every s, r.
double embedding_constant(const std::vector<RealField>& fields, double p1, double p2, const BumpPair& bumps);

/// Same samples on a grid of half the period: represents x -> f(2x).
RealField dilate_by_two(const RealField& f);

}  // namespace korteweg
