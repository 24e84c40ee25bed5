#pragma once

#include <complex>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace jdisc {

using cd = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;
using RMatrix = Eigen::MatrixXd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr cd kI{0.0, 1.0};

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// J_st + J (or a chart's conjugate Jacobian block) is not invertible.
class SingularStructure : public Error {
 public:
  using Error::Error;
};

// A disc left the chart on which the structure is defined.
class DomainEscape : public Error {
 public:
  using Error::Error;
};

class NonConvergence : public Error {
 public:
  NonConvergence(const std::string& what, double contraction)
      : Error(what), last_contraction(contraction) {}
  double last_contraction;
};

// Too many members of a disc family failed to solve.
class FamilyFailure : public Error {
 public:
  using Error::Error;
};

// Real-valued function on C^n.
using ScalarField = std::function<double(const CVector&)>;

// Real 2n-vector (x1, y1, x2, y2, ...) <-> complex n-vector.
inline RVector to_real(const CVector& z) {
  RVector v(2 * z.size());
  for (Eigen::Index j = 0; j < z.size(); ++j) {
    v(2 * j) = z(j).real();
    v(2 * j + 1) = z(j).imag();
  }
  return v;
}

inline CVector to_complex(const RVector& v) {
  CVector z(v.size() / 2);
  for (Eigen::Index j = 0; j < z.size(); ++j) z(j) = cd(v(2 * j), v(2 * j + 1));
  return z;
}

}  // namespace jdisc
