#pragma once

#include <stdexcept>
#include <string>

namespace korteweg {

/// Machine-readable failure causes. The CLI maps each one to a distinct exit code.
enum class Cause {
  config = 2,
  domain = 3,
  vacuum_breach = 4,
  numeric_blowup = 5,
  non_contraction = 6,
  schedule_stall = 7,
  verification = 8,
  io = 9,
};

const char* cause_name(Cause c) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Cause cause, const std::string& what) : std::runtime_error(what), cause_(cause) {}
  Cause cause() const noexcept { return cause_; }

 private:
  Cause cause_;
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(Cause::config, what) {}
};

// Vacuum (non-positive density) or an argument outside the domain of a functional.
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(Cause::domain, what) {}
};

class NumericError : public Error {
 public:
  explicit NumericError(const std::string& what) : Error(Cause::numeric_blowup, what) {}
};

class VacuumBreach : public Error {
 public:
  VacuumBreach(double time, double min_rho);
  double time() const noexcept { return time_; }
  double min_rho() const noexcept { return min_rho_; }

 private:
  double time_;
  double min_rho_;
};

class NumericBlowup : public Error {
 public:
  explicit NumericBlowup(double time);
  double time() const noexcept { return time_; }

 private:
  double time_;
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(Cause::io, what) {}
};

}  // namespace korteweg
