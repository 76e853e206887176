#pragma once

// Explicit lower bound on the existence time in terms of critical and
// slightly supercritical Besov norms of the data, and the restart schedule
// built on top of it.

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "korteweg/fields.hpp"
#include "korteweg/lp_besov.hpp"

namespace korteweg {

struct LifespanConstants {
  double C = 1;
  double C1 = 1;
  double c = 1;
  double mu = 1;
  double eps = 1;        // smallness parameter
  double eps_prime = 1;  // regularity offset of the supercritical norms
};

struct LifespanInputs {
  double norm_q0_crit = 0;  // ||q0||_{B^{N/p}_{p,1}}
  double norm_v0_crit = 0;  // ||v0||_{B^{N/p-1}_{p,1}}
  double norm_q0_sur = 0;   // ||q0||_{B^{N/p+eps'}_{p,1}}
  double norm_v0_sur = 0;   // ||v0||_{B^{N/p-1+eps'}_{p,1}}
  LifespanConstants k;
  int dim = 0;  // recorded only
  double p = 0; // recorded only

  double a0() const { return norm_q0_crit + norm_v0_crit; }
  void validate() const;
  /// N/(1-eps') < p < 2N.
  bool p_in_window() const;
};

inline constexpr std::array<const char*, 4> kBranchNames = {"surcritical_q", "surcritical_v", "c1_quarter",
                                                            "critical_a0"};

struct LifespanResult {
  double T = 0;
  std::array<double, 4> branches{};  // +inf when a norm vanishes
  int active = 0;
  const char* active_name() const { return kBranchNames[static_cast<std::size_t>(active)]; }
};

/// T = min( 2 (c mu)^{2/e'-1} e^{2/e'} / ((8C)^{2/e'} ||q0||_sur^{2/e'}),  same with ||v0||_sur,
///          C1/4,  1/(16 C1^2 A0 (1 + sqrt(A0))^2) ),  A0 = ||q0||_crit + ||v0||_crit.
LifespanResult lifespan_lower_bound(const LifespanInputs& in);

/// sqrt(eps) = 1 / (4 C1 (1 + 2 sqrt(A0) + A0)).
double epsilon_from_data(double A0, double C1);

/// Norms of (q0, v0) at exponent p, s = N/p.
LifespanInputs lifespan_inputs(const RealField& q0, const VectorField& v0, double p, const LifespanConstants& k,
                               const BumpPair& bumps);

struct ScheduleEntry {
  double t = 0;
  double T = 0;
  const char* branch = "";
};

struct RestartSchedule {
  std::vector<ScheduleEntry> entries;
  bool stalled = false;
  std::string message;
};

/// Greedy continuation: at each restart time t_i evaluate the bound T_i of the
/// data there and advance by fraction * T_i until the horizon is reached.
/// A bound below `floor` stalls the schedule.
RestartSchedule restart_schedule(const std::function<LifespanInputs(double)>& norms_at, double horizon,
                                 double fraction = 0.5, double floor = 1e-10, std::size_t max_entries = 100000);

struct Calibration {
  double C1 = 1;
  double T_target = 0;
  double T_bound = 0;  // bound evaluated with the calibrated C1
  bool attained = false;
};

/// Chooses C1 on the branch where the bound increases with C1 (C1 up to the
/// maximizer of min(C1/4, critical branch)) so that the bound equals T_target.
Calibration calibrate_c1(const LifespanInputs& reference, double T_target);

}  // namespace korteweg
