#pragma once

// Energy functionals, dissipation rates, integrability gain, vacuum
// statistics and the level-set (De Giorgi) machinery for 1/rho.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "korteweg/fields.hpp"
#include "korteweg/model.hpp"

namespace korteweg {

/// Relative entropy of the pressure law, Pi(rho_bar) = Pi'(rho_bar) = 0.
///   gamma = 1: a (rho ln(rho/rho_bar) + rho_bar - rho)
///   gamma > 1: a/(gamma-1) (rho^gamma - rho_bar^gamma - gamma rho_bar^(gamma-1) (rho - rho_bar))
RealField pi_potential(const RealField& rho, const PhysParams& p);
double pi_potential(double rho, const PhysParams& p);

/// E = int 1/2 rho|u|^2 + Pi(rho) + 2 kappa |grad sqrt(rho)|^2.
double energy(const PrimitiveState& s, const PhysParams& p);

/// E1 = int 1/2 rho|v|^2 + Pi(rho) + 2 (kappa - mu^2) |grad sqrt(rho)|^2.
/// The last term vanishes in the quantum case.
double bd_entropy(const EffectiveState& e, const PhysParams& p);

/// ||sqrt(rho) - sqrt(rho_bar)||_L2 + ||grad sqrt(rho)||_L2.
double sqrt_h1_norm(const RealField& rho, double rho_bar);

/// ||lap sqrt(rho)||_L2^2 at one instant.
double jungel_integrand(const RealField& rho);

/// Trapezoid-in-time of ||lap sqrt(rho)||^2 over the given samples.
double jungel_accumulate(const std::vector<RealField>& rho_series, const std::vector<double>& times);

/// Instantaneous dissipation rates.
struct DissipationRates {
  double u = 0;        // int 2 mu rho |Du|^2
  double v = 0;        // int mu rho |grad v|^2 (+ mu (kappa - mu^2) int rho |grad grad ln rho|^2)
  double density = 0;  // mu int P'(rho) |grad rho|^2 / rho
};
DissipationRates dissipation_rates(const PrimitiveState& s, const EffectiveState& e, const PhysParams& p);

/// ||rho^{1/p} v||_Lp with |v| the Euclidean magnitude.
double weighted_velocity_norm(const RealField& rho, const VectorField& v, double p);

/// Right side of the integrability-gain bound at time t:
///   2^{1/p} (A0 + W^{4/(p(p-2))} (a^2/2)^{1/p} (N^2 2p^2/(p-2) + 2p^2(p-4))^{1/p} t^{1/p})
///     * exp((1/p) W^{4/(p-2)} (a^2/2) (N^2 (p-4)/(p-2) + 1) t)
/// with A0 = ||rho0^{1/p} v0||_Lp and W = sup_{s<=t} ||sqrt(rho) v||_L2.
double lp_gain_rhs(double p, int dim, double a, double A0, double W, double t);

inline const std::vector<double> kGainExponents = {4.0, 8.0, 16.0};

struct DiagnosticsRow {
  double t = 0;
  double mass = 0;
  double energy = 0;
  double bd_entropy = 0;
  double dissip_u = 0;
  double dissip_v = 0;
  double dissip_density = 0;
  double jungel = 0;
  double min_rho = 0;
  double max_inv_rho = 0;
  double h1_sqrt = 0;
  std::map<double, double> lp_gain;  // p -> ||rho^{1/p} v||_Lp
  double w_sup = 0;                  // sup over past steps of ||sqrt(rho) v||_L2
};

struct DiagnosticsRecord {
  int dim = 1;
  PhysParams params;
  std::vector<DiagnosticsRow> rows;
};

/// Column names of the CSV time series, in order.
const std::vector<std::string>& csv_columns();
std::vector<double> csv_values(const DiagnosticsRow& row);

/// Integrates dissipation and Jungel rates with the trapezoid rule over every
/// observed step and produces rows on demand. Its entire state is a flat list
/// of doubles so that checkpoints restore it bitwise.
class DiagnosticsAccumulator {
 public:
  explicit DiagnosticsAccumulator(const PhysParams& params);

  /// Feeds the state at time t. Returns the row when `emit` is set.
  std::optional<DiagnosticsRow> observe(const PrimitiveState& s, const EffectiveState& e, double t, bool emit);

  std::map<std::string, double> save() const;
  void restore(const std::map<std::string, double>& saved);

 private:
  PhysParams params_;
  bool started_ = false;
  double t_prev_ = 0;
  DissipationRates rate_prev_;
  double jungel_prev_ = 0;
  DissipationRates total_;
  double jungel_total_ = 0;
  double w_sup_ = 0;
};

struct InequalityVerdict {
  bool holds = true;
  double worst_excess = 0;               // max over rows of lhs / (E(0)(1+tol)) - 1, with E(0) scale
  std::optional<double> first_violation; // time of first violating row
};

struct EnergyVerdict {
  InequalityVerdict energy;
  InequalityVerdict bd_entropy;
  bool holds() const { return energy.holds && bd_entropy.holds; }
};

/// E(t) + dissip_u(t) <= E(0)(1+tol) and E1(t) + dissip_v + dissip_density <= E1(0)(1+tol).
EnergyVerdict check_energy_inequality(const DiagnosticsRecord& rec, double tol = 1e-4);

struct LpGainResult {
  double p = 4;
  bool valid = true;  // constants apply (gamma = 1)
  std::string message;
  std::vector<double> times;
  std::vector<double> lhs;
  std::vector<double> rhs;
  bool verdict = true;
  double worst_ratio = 0;  // max lhs/rhs
};

/// Evaluates both sides of the gain bound at every recorded row.
LpGainResult lp_gain_check(const DiagnosticsRecord& rec, double p, double tol = 1e-3);

/// Time samples of a density trajectory used by level-set statistics.
struct DensitySeries {
  std::vector<double> times;
  std::vector<RealField> rho;
  std::vector<VectorField> v;  // optional, needed by the vacuum bound
};

/// Exponents tied by 1/r + N/(2q) = 1 - kappa1 with 0 < kappa1 < 1.
struct LevelSetExponents {
  double r = 4;
  double q = 4;
  double kappa1 = 0.375;
};

struct LevelSetReport {
  double alpha = 1;
  double k = 1;
  std::vector<double> times;
  std::vector<double> measure_series;  // lambda(A_k(t))
  double mu_k = 0;                     // int lambda(A_k)^{r1/q1} dt
  double q_norm = 0;
  double r = 0, q = 0, r1 = 0, q1 = 0, kappa = 0, kappa1 = 0;
  double mu_exponent = 0;     // r1/q1, used for mu_k
  double hypothesis_exponent = 0;  // (1+kappa)/(r1(1+kappa)), the exponent in the level-set hypothesis
};

/// Cell-count measure of {rho^{-alpha} >= k}.
double level_set_measure(const RealField& rho, double alpha, double k);

LevelSetReport level_set_report(const DensitySeries& run, double alpha, double k, const LevelSetExponents& ex);

struct DeGiorgiResult {
  std::vector<double> bound;  // closed-form bound on y_n, n = 0..n_max
  double theta = 0;
  bool vanishes = false;
};

/// y_n <= c^{((1+e)^n-1)/e} b^{((1+e)^n-1)/e^2 - n/e} y0^{(1+e)^n},  theta = c^{-1/e} b^{-1/e^2}.
DeGiorgiResult degiorgi_recursion(double c, double b, double eps, double y0, int n_max);

struct VacuumBoundInputs {
  int dim = 1;
  double alpha = 1;
  double q = 4;        // needs q > N
  double q3 = 2;
  double t1 = 0;
  double rho_bar = 2;  // needs rho_bar > 1
  double k0_hat = 1;   // sup 1/rho0^alpha
  double inv_rho_sup = 1;       // ||1/rho||_{L^inf([0,t1] x T^N)}
  double weighted_v_sup = 0;    // ||rho^{1/2q} v||_{L^inf_t L^{2q}}
  double sqrt_dev_sup = 0;      // ||sqrt(rho) - sqrt(rho_bar)||_{L^inf_t L^{q3}}
  double beta = 1;
  double c_alpha_mu = 1;
};

/// Right side of the sup(1/rho^alpha) bound with kappa1 = 1/2.
double vacuum_bound_formula(const VacuumBoundInputs& in);

struct VacuumBoundReport {
  VacuumBoundInputs inputs;
  double bound = 0;
  double measured = 0;  // sup of 1/rho^alpha over samples with t <= t1
  bool consistent = false;
  double r = 0, r1 = 0, q1 = 0, kappa = 0, gamma_dg = 0;
};

VacuumBoundReport vacuum_bound_estimate(const DensitySeries& run, double alpha, double q_exp, double t1,
                                        const PhysParams& p, double q3 = 2.0, double beta = 1.0,
                                        double c_alpha_mu = 1.0);

}  // namespace korteweg
