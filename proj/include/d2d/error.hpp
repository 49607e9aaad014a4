#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace d2d {

/// Bad or inconsistent input data. Maps to CLI exit code 2.
class InputError : public std::runtime_error {
public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}

  InputError(const std::string& source, std::size_t line, const std::string& what)
      : std::runtime_error(source + ":" + std::to_string(line) + ": " + what),
        source_(source), line_(line) {}

  const std::string& source() const noexcept { return source_; }
  std::size_t line() const noexcept { return line_; }

private:
  std::string source_;
  std::size_t line_ = 0;
};

/// Valid input on which an analysis cannot produce a result. Exit code 3.
class ComputationError : public std::runtime_error {
public:
  ComputationError(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

private:
  std::string kind_;
};

class TripNotComputable : public ComputationError {
public:
  explicit TripNotComputable(const std::string& what)
      : ComputationError("trip_not_computable", what) {}
};

class FitUndefined : public ComputationError {
public:
  explicit FitUndefined(const std::string& what)
      : ComputationError("fit_undefined", what) {}
};

class SensitivityUndefined : public ComputationError {
public:
  explicit SensitivityUndefined(const std::string& what)
      : ComputationError("sensitivity_undefined", what) {}
};

} // namespace d2d
