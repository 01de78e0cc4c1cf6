#include "acpb/lie_algebra.hpp"

#include <cmath>

#include "acpb/matrix_functions.hpp"

namespace acpb {

namespace {

constexpr Complex kI{0.0, 1.0};

int levi_civita(int i, int j, int k) {
  if (i == j || j == k || i == k) return 0;
  if ((i + 1) % 3 == j) return 1;  // cyclic (0,1,2)
  return -1;
}

}  // namespace

LieAlgebra::LieAlgebra(std::string name, std::vector<Mat> structure, Mat metric,
                       std::vector<CMat> rep_basis, GroupKind kind,
                       double validation_tol)
    : name_(std::move(name)),
      dim_(static_cast<int>(structure.size())),
      structure_(std::move(structure)),
      metric_(std::move(metric)),
      rep_basis_(std::move(rep_basis)),
      kind_(kind) {
  if (dim_ <= 0) throw DimensionError("LieAlgebra: empty structure constants");
  for (const Mat& c : structure_)
    if (c.rows() != dim_ || c.cols() != dim_)
      throw DimensionError("LieAlgebra: structure constant shape mismatch");
  if (metric_.rows() != dim_ || metric_.cols() != dim_)
    throw DimensionError("LieAlgebra: metric shape mismatch");
  if ((metric_ - metric_.transpose()).cwiseAbs().maxCoeff() > validation_tol)
    throw Error("LieAlgebra: metric not symmetric");
  Eigen::SelfAdjointEigenSolver<Mat> es(metric_);
  if (es.eigenvalues().minCoeff() <= 0.0)
    throw Error("LieAlgebra: metric not positive definite");
  if (antisymmetry_residual() > validation_tol)
    throw Error("LieAlgebra '" + name_ + "': bracket not antisymmetric");
  if (jacobi_residual() > validation_tol)
    throw Error("LieAlgebra '" + name_ + "': Jacobi identity violated");
  if (metric_invariance_residual() > validation_tol)
    throw Error("LieAlgebra '" + name_ + "': metric not ad-invariant");

  if (!rep_basis_.empty()) {
    if (static_cast<int>(rep_basis_.size()) != dim_)
      throw DimensionError("LieAlgebra: representation basis size mismatch");
    const Eigen::Index m = rep_basis_[0].rows();
    rep_span_.resize(m * m, dim_);
    for (int j = 0; j < dim_; ++j) {
      if (rep_basis_[j].rows() != m || rep_basis_[j].cols() != m)
        throw DimensionError("LieAlgebra: representation basis shape mismatch");
      rep_span_.col(j) = rep_basis_[j].reshaped();
    }
    rep_qr_.compute(rep_span_);
  }
}

LieAlgebra LieAlgebra::su2() {
  const double s = std::sqrt(2.0);
  std::vector<Mat> c(3, Mat::Zero(3, 3));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) c[k](i, j) = s * levi_civita(i, j, k);
  // X_i = -i sigma_i / sqrt(2)
  CMat s1(2, 2), s2(2, 2), s3(2, 2);
  s1 << 0, 1, 1, 0;
  s2 << 0, -kI, kI, 0;
  s3 << 1, 0, 0, -1;
  std::vector<CMat> basis = {-kI / s * s1, -kI / s * s2, -kI / s * s3};
  return LieAlgebra("su2", std::move(c), Mat::Identity(3, 3), std::move(basis),
                    GroupKind::SpecialUnitary2);
}

LieAlgebra LieAlgebra::so3() {
  std::vector<Mat> c(3, Mat::Zero(3, 3));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) c[k](i, j) = levi_civita(i, j, k);
  std::vector<CMat> basis(3);
  for (int k = 0; k < 3; ++k) {
    Mat l = Mat::Zero(3, 3);
    for (int i = 0; i < 3; ++i)
      for (int b = 0; b < 3; ++b) l(i, b) = levi_civita(i, k, b);
    basis[k] = l.cast<Complex>();
  }
  return LieAlgebra("so3", std::move(c), Mat::Identity(3, 3), std::move(basis),
                    GroupKind::SpecialOrthogonal3);
}

LieAlgebra LieAlgebra::torus(int n) {
  if (n < 1) throw DimensionError("torus: need n >= 1");
  std::vector<Mat> c(n, Mat::Zero(n, n));
  std::vector<CMat> basis(n);
  for (int j = 0; j < n; ++j) {
    CMat b = CMat::Zero(n, n);
    b(j, j) = kI;
    basis[j] = b;
  }
  return LieAlgebra("t" + std::to_string(n), std::move(c), Mat::Identity(n, n),
                    std::move(basis), GroupKind::Torus);
}

LieAlgebra LieAlgebra::builtin(const std::string& name) {
  if (name == "su2") return su2();
  if (name == "so3") return so3();
  if (name.rfind("torus:", 0) == 0) return torus(std::stoi(name.substr(6)));
  if (name.size() >= 2 && name[0] == 't') {
    try {
      return torus(std::stoi(name.substr(1)));
    } catch (const std::invalid_argument&) {
    }
  }
  throw SchemaError("unknown built-in algebra '" + name + "'");
}

// Contraction over index pairs so that antisymmetry holds exactly in
// floating point (the bracket of an element with itself is a hard zero).
Vec LieAlgebra::bracket(const Vec& x, const Vec& y) const {
  if (x.size() != dim_ || y.size() != dim_)
    throw DimensionError("bracket: element dimension mismatch");
  Vec out = Vec::Zero(dim_);
  for (int i = 0; i < dim_; ++i)
    for (int j = i + 1; j < dim_; ++j) {
      double w = x[i] * y[j] - x[j] * y[i];
      if (w == 0.0) continue;
      for (int k = 0; k < dim_; ++k) out[k] += w * structure_[k](i, j);
    }
  return out;
}

CVec LieAlgebra::bracket(const CVec& x, const CVec& y) const {
  if (x.size() != dim_ || y.size() != dim_)
    throw DimensionError("bracket: element dimension mismatch");
  CVec out = CVec::Zero(dim_);
  for (int i = 0; i < dim_; ++i)
    for (int j = i + 1; j < dim_; ++j) {
      Complex w = x[i] * y[j] - x[j] * y[i];
      if (w == 0.0) continue;
      for (int k = 0; k < dim_; ++k) out[k] += w * structure_[k](i, j);
    }
  return out;
}

double LieAlgebra::inner(const Vec& x, const Vec& y) const {
  if (x.size() != dim_ || y.size() != dim_)
    throw DimensionError("inner: element dimension mismatch");
  return x.dot(metric_ * y);
}

Complex LieAlgebra::inner(const CVec& x, const CVec& y) const {
  if (x.size() != dim_ || y.size() != dim_)
    throw DimensionError("inner: element dimension mismatch");
  return x.conjugate().transpose() * metric_.cast<Complex>() * y;
}

double LieAlgebra::norm(const Vec& x) const { return std::sqrt(inner(x, x)); }

double LieAlgebra::norm(const CVec& x) const {
  return std::sqrt(std::abs(inner(x, x)));
}

Mat LieAlgebra::ad(const Vec& x) const {
  Mat out(dim_, dim_);
  for (int k = 0; k < dim_; ++k) out.row(k) = x.transpose() * structure_[k];
  return out;
}

double LieAlgebra::antisymmetry_residual() const {
  double r = 0.0;
  for (int k = 0; k < dim_; ++k)
    r = std::max(r, (structure_[k] + structure_[k].transpose()).cwiseAbs().maxCoeff());
  return r;
}

double LieAlgebra::jacobi_residual() const {
  double r = 0.0;
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j)
      for (int k = 0; k < dim_; ++k)
        for (int l = 0; l < dim_; ++l) {
          double s = 0.0;
          for (int m = 0; m < dim_; ++m)
            s += structure_[m](i, j) * structure_[l](m, k) +
                 structure_[m](j, k) * structure_[l](m, i) +
                 structure_[m](k, i) * structure_[l](m, j);
          r = std::max(r, std::abs(s));
        }
  return r;
}

double LieAlgebra::metric_invariance_residual() const {
  double r = 0.0;
  Vec ei = Vec::Zero(dim_), ej = Vec::Zero(dim_), ek = Vec::Zero(dim_);
  for (int z = 0; z < dim_; ++z) {
    ek.setZero();
    ek[z] = 1.0;
    for (int i = 0; i < dim_; ++i) {
      ei.setZero();
      ei[i] = 1.0;
      for (int j = 0; j < dim_; ++j) {
        ej.setZero();
        ej[j] = 1.0;
        r = std::max(r, std::abs(inner(bracket(ek, ei), ej) + inner(ei, bracket(ek, ej))));
      }
    }
  }
  return r;
}

int LieAlgebra::rep_size() const {
  if (!has_representation())
    throw Error("LieAlgebra '" + name_ + "' has no defining representation");
  return static_cast<int>(rep_basis_[0].rows());
}

CMat LieAlgebra::matrix(const CVec& z) const {
  if (!has_representation())
    throw Error("LieAlgebra '" + name_ + "' has no defining representation");
  if (z.size() != dim_) throw DimensionError("matrix: element dimension mismatch");
  CMat m = CMat::Zero(rep_basis_[0].rows(), rep_basis_[0].cols());
  for (int j = 0; j < dim_; ++j) m += z[j] * rep_basis_[j];
  return m;
}

CMat LieAlgebra::matrix(const Vec& x) const { return matrix(CVec(x.cast<Complex>())); }

CVec LieAlgebra::coords(const CMat& m, double tol) const {
  if (!has_representation())
    throw Error("LieAlgebra '" + name_ + "' has no defining representation");
  CVec rhs = m.reshaped();
  CVec c = rep_qr_.solve(rhs);
  double res = (rep_span_ * c - rhs).norm();
  if (res > tol * std::max(1.0, rhs.norm()))
    throw Error("coords: matrix is not in the algebra span (residual " +
                std::to_string(res) + ")");
  return c;
}

Vec LieAlgebra::coords_real(const CMat& m, double tol) const {
  CVec c = coords(m, tol);
  if (c.imag().cwiseAbs().maxCoeff() > tol * std::max(1.0, c.norm()))
    throw Error("coords_real: element has a complex part");
  return c.real();
}

CMat LieAlgebra::group_identity() const {
  return CMat::Identity(rep_size(), rep_size());
}

double LieAlgebra::membership_residual(const CMat& g) const {
  const Eigen::Index n = rep_size();
  if (g.rows() != n || g.cols() != n) return std::numeric_limits<double>::infinity();
  double r = (g.adjoint() * g - CMat::Identity(n, n)).norm();
  switch (kind_) {
    case GroupKind::SpecialUnitary2:
      return std::max(r, std::abs(g.determinant() - 1.0));
    case GroupKind::SpecialOrthogonal3:
      r = std::max(r, g.imag().norm());
      return std::max(r, std::abs(g.determinant() - 1.0));
    case GroupKind::Torus: {
      CMat off = g;
      off.diagonal().setZero();
      return std::max(r, off.norm());
    }
    case GroupKind::Custom:
      break;
  }
  return r;
}

double LieAlgebra::membership_residual_complexified(const CMat& g) const {
  const Eigen::Index n = rep_size();
  if (g.rows() != n || g.cols() != n) return std::numeric_limits<double>::infinity();
  switch (kind_) {
    case GroupKind::SpecialUnitary2:
      return std::abs(g.determinant() - 1.0);
    case GroupKind::SpecialOrthogonal3: {
      double r = (g.transpose() * g - CMat::Identity(n, n)).norm();
      return std::max(r, std::abs(g.determinant() - 1.0));
    }
    case GroupKind::Torus: {
      CMat off = g;
      off.diagonal().setZero();
      double r = off.norm();
      for (Eigen::Index j = 0; j < n; ++j)
        if (std::abs(g(j, j)) < 1e-12) r = std::numeric_limits<double>::infinity();
      return r;
    }
    case GroupKind::Custom:
      break;
  }
  throw Error("membership: no complexified group for custom algebra");
}

CMat LieAlgebra::project_to_group(const CMat& g) const {
  switch (kind_) {
    case GroupKind::SpecialUnitary2: {
      CMat u = polar_unitary(g);
      Complex det = u.determinant();
      return u / std::sqrt(det);
    }
    case GroupKind::SpecialOrthogonal3: {
      Mat re = g.real();
      Eigen::JacobiSVD<Mat> svd(re, Eigen::ComputeFullU | Eigen::ComputeFullV);
      Mat u = svd.matrixU() * svd.matrixV().transpose();
      if (u.determinant() < 0.0) {
        Mat flips = Mat::Identity(3, 3);
        flips(2, 2) = -1.0;
        u = svd.matrixU() * flips * svd.matrixV().transpose();
      }
      return u.cast<Complex>();
    }
    case GroupKind::Torus: {
      CMat out = CMat::Zero(g.rows(), g.cols());
      for (Eigen::Index j = 0; j < g.rows(); ++j)
        out(j, j) = g(j, j) / std::abs(g(j, j));
      return out;
    }
    case GroupKind::Custom:
      break;
  }
  throw Error("project_to_group: no group for custom algebra");
}

CMat LieAlgebra::project_to_complexified(const CMat& g) const {
  switch (kind_) {
    case GroupKind::SpecialUnitary2:
      return g / std::sqrt(g.determinant());
    case GroupKind::SpecialOrthogonal3: {
      // one Newton step toward the complex-orthogonal manifold
      CMat gi = g.transpose().partialPivLu().solve(CMat::Identity(3, 3));
      CMat out = 0.5 * (g + gi);
      Complex det = out.determinant();
      return out / std::pow(det, 1.0 / 3.0);
    }
    case GroupKind::Torus: {
      CMat out = CMat::Zero(g.rows(), g.cols());
      out.diagonal() = g.diagonal();
      return out;
    }
    case GroupKind::Custom:
      break;
  }
  throw Error("project_to_complexified: no group for custom algebra");
}

double LieAlgebra::branch_radius() const {
  switch (kind_) {
    case GroupKind::SpecialUnitary2:
      return M_PI * std::sqrt(2.0);
    case GroupKind::SpecialOrthogonal3:
      return M_PI;
    case GroupKind::Torus:
      return std::numeric_limits<double>::infinity();
    case GroupKind::Custom:
      break;
  }
  return M_PI;
}

CMat group_exp(const LieAlgebra& alg, const CVec& z) { return expm(alg.matrix(z)); }

CMat group_exp(const LieAlgebra& alg, const Vec& x) {
  return expm(alg.matrix(x));
}

CVec group_log(const LieAlgebra& alg, const CMat& g) {
  if (alg.kind() == GroupKind::Torus) {
    CVec out(alg.dim());
    for (int j = 0; j < alg.dim(); ++j) out[j] = std::log(g(j, j)) / kI;
    return out;
  }
  return alg.coords(logm_normal(g));
}

PolarFactors kp_decompose(const LieAlgebra& alg, const CMat& g, double membership_tol) {
  double res = alg.membership_residual_complexified(g);
  if (res > membership_tol)
    throw MembershipError("kp_decompose: not a complexified group element (residual " +
                          std::to_string(res) + ")");
  // g = k exp(iX): g* g = exp(2iX) with iX Hermitian, so the Hermitian
  // logarithm recovers X globally.
  CMat h = 0.5 * logm_hermitian(g.adjoint() * g);
  Vec x = alg.coords_real(-kI * h);
  CMat k = g * expm(-h);
  k = alg.project_to_group(k);
  return {k, x};
}

Vec ad_action(const LieAlgebra& alg, const CMat& g, const Vec& x, double membership_tol) {
  double res = alg.membership_residual(g);
  if (res > membership_tol)
    throw MembershipError("ad_action: not a compact group element (residual " +
                          std::to_string(res) + ")");
  CMat m = g * alg.matrix(x) * g.adjoint();
  return alg.coords_real(m);
}

CVec ad_action(const LieAlgebra& alg, const CMat& g, const CVec& z, double membership_tol) {
  double res = alg.membership_residual(g);
  if (res > membership_tol)
    throw MembershipError("ad_action: not a compact group element (residual " +
                          std::to_string(res) + ")");
  CMat m = g * alg.matrix(z) * g.adjoint();
  return alg.coords(m);
}

}  // namespace acpb
