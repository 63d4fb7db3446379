#pragma once

#include <stdexcept>
#include <string>

namespace subq {

// Error taxonomy mapped to CLI exit codes:
//   ValidationError / FormatError -> 2, ResourceError -> 3, ConvergenceError -> 4.

class ValidationError : public std::runtime_error {
  public:
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

class FormatError : public ValidationError {
  public:
    explicit FormatError(const std::string& msg) : ValidationError(msg) {}
};

class ResourceError : public std::runtime_error {
  public:
    explicit ResourceError(const std::string& msg) : std::runtime_error(msg) {}
};

class ConvergenceError : public std::runtime_error {
  public:
    ConvergenceError(const std::string& msg, double best_residual)
        : std::runtime_error(msg), best_residual_(best_residual) {}

    double best_residual() const { return best_residual_; }

  private:
    double best_residual_;
};

} // namespace subq
