#ifndef ACPB_TYPES_HPP
#define ACPB_TYPES_HPP

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace acpb {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;
using Complex = std::complex<double>;

/// Base class for all errors raised by the library.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Mismatched dimensions between algebra elements or chart data.
struct DimensionError : Error {
  using Error::Error;
};

/// A point lies outside the chart domain, or a trajectory left it.
struct ChartExit : Error {
  double time;
  explicit ChartExit(const std::string& msg, double t = 0.0) : Error(msg), time(t) {}
};

/// The soldering frame is singular (or too ill-conditioned) at the
/// requested point, so the isomorphism hypothesis is violated.
struct SingularFrame : Error {
  using Error::Error;
};

/// A matrix failed a group-membership residual test.
struct MembershipError : Error {
  using Error::Error;
};

/// A matrix logarithm hit eigenvalues on or across the branch cut.
struct BranchCutError : Error {
  using Error::Error;
};

/// An iterative routine failed to reach its tolerance.
struct ConvergenceError : Error {
  using Error::Error;
};

/// Malformed scenario / JSON input.
struct SchemaError : Error {
  using Error::Error;
};

}  // namespace acpb

#endif
