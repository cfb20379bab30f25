#pragma once

#include <stdexcept>
#include <string>

namespace rydmix {

/// Base of every error thrown by the library. `module()` names the component
/// that raised it so the command-line front end can attribute failures.
class Error : public std::runtime_error {
public:
  Error(std::string module, const std::string& what)
      : std::runtime_error(what), module_(std::move(module)) {}

  const std::string& module() const noexcept { return module_; }

private:
  std::string module_;
};

class DomainError : public Error {
public:
  using Error::Error;
};

/// A second-order denominator vanished: the excluded sideband is itself resonant.
class SingularityError : public Error {
public:
  using Error::Error;
};

class ConvergenceError : public Error {
public:
  using Error::Error;
};

class DegenerateNullSpaceError : public Error {
public:
  DegenerateNullSpaceError(std::string module, const std::string& what, int rank)
      : Error(std::move(module), what), rank_(rank) {}

  int rank() const noexcept { return rank_; }

private:
  int rank_;
};

class StepSizeError : public Error {
public:
  using Error::Error;
};

class WindowError : public Error {
public:
  using Error::Error;
};

class PeakCountError : public Error {
public:
  PeakCountError(std::string module, const std::string& what, int found)
      : Error(std::move(module), what), found_(found) {}

  int found() const noexcept { return found_; }

private:
  int found_;
};

class InfeasibleError : public Error {
public:
  using Error::Error;
};

class ConfigError : public Error {
public:
  using Error::Error;
};

}  // namespace rydmix
