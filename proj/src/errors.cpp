#include "korteweg/errors.hpp"

#include <sstream>

namespace korteweg {

const char* cause_name(Cause c) noexcept {
  switch (c) {
    case Cause::config: return "config_error";
    case Cause::domain: return "domain_error";
    case Cause::vacuum_breach: return "vacuum_breach";
    case Cause::numeric_blowup: return "numeric_blowup";
    case Cause::non_contraction: return "non_contraction";
    case Cause::schedule_stall: return "schedule_stall";
    case Cause::verification: return "verification_failed";
    case Cause::io: return "io_error";
  }
  return "unknown";
}

namespace {
std::string breach_message(double t, double m) {
  std::ostringstream os;
  os.precision(17);
  os << "density fell below the vacuum floor at t=" << t << " (min rho=" << m << ")";
  return os.str();
}
std::string blowup_message(double t) {
  std::ostringstream os;
  os.precision(17);
  os << "non-finite value in the state at t=" << t;
  return os.str();
}
}  // namespace

VacuumBreach::VacuumBreach(double time, double min_rho)
    : Error(Cause::vacuum_breach, breach_message(time, min_rho)), time_(time), min_rho_(min_rho) {}

NumericBlowup::NumericBlowup(double time)
    : Error(Cause::numeric_blowup, blowup_message(time)), time_(time) {}

}  // namespace korteweg
