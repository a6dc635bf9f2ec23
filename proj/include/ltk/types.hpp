#pragma once

// Shared scalar/matrix aliases, tolerances and the error hierarchy.

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>

namespace ltk {

using Complex = std::complex<double>;
using RVector = Eigen::VectorXd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using CMatrix = Eigen::MatrixXcd;

inline constexpr Complex kI{0.0, 1.0};

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

// A point is outside the open set an operation is defined on.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Rank or pairing decisions that cannot be made reliably.
class DegenerateInputError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

class OverflowError : public Error {
 public:
  using Error::Error;
};

// A sampled path point left the set it was proven to stay in.
class ContainmentError : public Error {
 public:
  using Error::Error;
};

struct Tolerance {
  double abs_tol = 1e-10;
  double rel_tol = 1e-8;

  Tolerance() = default;
  Tolerance(double abs, double rel) : abs_tol(abs), rel_tol(rel) {
    if (!(abs > 0.0) || !(rel > 0.0)) {
      throw std::invalid_argument("tolerances must be strictly positive");
    }
  }
};

}  // namespace ltk
