#pragma once

#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace hsl {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Adaptive quadrature ran out of refinements. Carries the last estimate and
/// the error gap that was still open.
class NonConvergence : public Error {
 public:
  NonConvergence(const std::string& what, Eigen::MatrixXcd estimate, double gap)
      : Error(what), estimate_(std::move(estimate)), gap_(gap) {}

  const Eigen::MatrixXcd& estimate() const noexcept { return estimate_; }
  double gap() const noexcept { return gap_; }

 private:
  Eigen::MatrixXcd estimate_;
  double gap_;
};

class NotHermitian : public Error {
 public:
  using Error::Error;
};

class NotProjection : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class UnknownDensity : public Error {
 public:
  using Error::Error;
};

class UnknownSymbol : public Error {
 public:
  using Error::Error;
};

class BadParams : public Error {
 public:
  using Error::Error;
};

class SingularGram : public Error {
 public:
  using Error::Error;
};

class BadGridSize : public Error {
 public:
  using Error::Error;
};

/// Configuration problem; `path` names the offending field (e.g. "measure.atoms[0].lambda").
class ConfigError : public Error {
 public:
  ConfigError(std::string path, const std::string& what)
      : Error(path + ": " + what), path_(std::move(path)) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

}  // namespace hsl
