#include "acpb/matrix_functions.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>

namespace acpb {

namespace {

// Diagonal Pade approximant of order (6,6) for exp on matrices with
// norm at most ~0.5.
CMat pade6(const CMat& a) {
  static const double c[] = {1.0,         0.5,           5.0 / 44.0,     1.0 / 66.0,
                             1.0 / 792.0, 1.0 / 15840.0, 1.0 / 665280.0};
  const Eigen::Index n = a.rows();
  CMat a2 = a * a;
  CMat a4 = a2 * a2;
  CMat a6 = a2 * a4;
  CMat odd = a * (c[1] * CMat::Identity(n, n) + c[3] * a2 + c[5] * a4);
  CMat even = c[0] * CMat::Identity(n, n) + c[2] * a2 + c[4] * a4 + c[6] * a6;
  CMat num = even + odd;
  CMat den = even - odd;
  return den.partialPivLu().solve(num);
}

}  // namespace

CMat expm(const CMat& a) {
  if (a.rows() != a.cols()) throw DimensionError("expm: matrix must be square");
  double norm = a.cwiseAbs().rowwise().sum().maxCoeff();  // induced inf-norm
  int squarings = 0;
  if (norm > 0.25) {
    squarings = static_cast<int>(std::ceil(std::log2(norm / 0.25)));
    squarings = std::min(squarings, 64);
  }
  CMat r = pade6(a / std::pow(2.0, squarings));
  for (int i = 0; i < squarings; ++i) r = r * r;
  if (!r.allFinite()) throw ConvergenceError("expm: result not finite");
  return r;
}

CMat logm_hermitian(const CMat& a, double positivity_tol) {
  Eigen::SelfAdjointEigenSolver<CMat> es(0.5 * (a + a.adjoint()));
  Vec ev = es.eigenvalues();
  double scale = ev.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev[i] <= positivity_tol * std::max(scale, 1.0))
      throw BranchCutError("logm_hermitian: eigenvalue not strictly positive");
  }
  return es.eigenvectors() * ev.array().log().matrix().asDiagonal() *
         es.eigenvectors().adjoint();
}

CMat sqrtm_hermitian(const CMat& a, double positivity_tol) {
  Eigen::SelfAdjointEigenSolver<CMat> es(0.5 * (a + a.adjoint()));
  Vec ev = es.eigenvalues();
  double scale = ev.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev[i] <= positivity_tol * std::max(scale, 1.0))
      throw BranchCutError("sqrtm_hermitian: eigenvalue not strictly positive");
  }
  return es.eigenvectors() * ev.array().sqrt().matrix().asDiagonal() *
         es.eigenvectors().adjoint();
}

CMat logm_normal(const CMat& a, double branch_tol) {
  Eigen::ComplexEigenSolver<CMat> es(a);
  if (es.info() != Eigen::Success)
    throw ConvergenceError("logm_normal: eigendecomposition failed");
  CVec ev = es.eigenvalues();
  CVec logs(ev.size());
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    Complex z = ev[i];
    if (std::abs(z) < branch_tol)
      throw BranchCutError("logm_normal: eigenvalue at the origin");
    if (z.real() < 0.0 && std::abs(z.imag()) < branch_tol * std::abs(z))
      throw BranchCutError("logm_normal: eigenvalue on the negative real axis");
    logs[i] = std::log(z);
  }
  // For a normal matrix the eigenbasis is unitary up to round-off, so the
  // inverse is just the adjoint; use a solve to be safe for mildly
  // non-orthogonal numerical eigenvectors.
  const CMat& v = es.eigenvectors();
  return v * logs.asDiagonal() * v.partialPivLu().solve(CMat::Identity(a.rows(), a.cols()));
}

CMat polar_unitary(const CMat& a) {
  Eigen::JacobiSVD<CMat> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

double condition_number(const Mat& a) {
  Eigen::JacobiSVD<Mat> svd(a);
  double smin = svd.singularValues().minCoeff();
  double smax = svd.singularValues().maxCoeff();
  if (smin <= 0.0) return std::numeric_limits<double>::infinity();
  return smax / smin;
}

}  // namespace acpb
