#ifndef ACPB_LIE_ALGEBRA_HPP
#define ACPB_LIE_ALGEBRA_HPP

#include <memory>
#include <string>
#include <vector>

#include "acpb/types.hpp"

namespace acpb {

/// Which matrix group backs the defining representation of a built-in
/// algebra. Custom algebras loaded from structure constants alone have
/// no representation and no group operations.
enum class GroupKind { SpecialUnitary2, SpecialOrthogonal3, Torus, Custom };

/// A finite-dimensional real Lie algebra given by structure constants
/// c[i][j][k] with [e_i, e_j] = sum_k c[i][j][k] e_k, together with an
/// ad-invariant inner product on the chosen basis.
///
/// Elements are coefficient vectors (Vec for real elements, CVec for
/// elements of the complexification); the bracket extends C-bilinearly
/// and the complexified inner product is sesquilinear (conjugate-linear
/// in the first slot), so it restricts to the real inner product.
///
/// Instances are immutable after construction; all operations are pure
/// and safe to call concurrently.
class LieAlgebra {
 public:
  /// structure[k] is the matrix c(i,j) -> c[i][j][k]. Antisymmetry, the
  /// Jacobi identity and ad-invariance of the metric are validated at
  /// construction (throws Error on violation beyond `validation_tol`).
  LieAlgebra(std::string name, std::vector<Mat> structure, Mat metric,
             std::vector<CMat> rep_basis = {}, GroupKind kind = GroupKind::Custom,
             double validation_tol = 1e-12);

  /// su(2) with basis X_i = -i sigma_i / sqrt(2) and metric -tr(XY);
  /// the basis is orthonormal and [X_i, X_j] = sqrt(2) eps_ijk X_k.
  static LieAlgebra su2();

  /// so(3) with basis L_i = hat(e_i) (cross-product matrices) and the
  /// half-trace metric -tr(XY)/2, making the basis orthonormal with
  /// [L_i, L_j] = eps_ijk L_k.
  static LieAlgebra so3();

  /// Abelian t^n: zero bracket, identity metric, diagonal phase
  /// representation diag(i x_1, ..., i x_n).
  static LieAlgebra torus(int n);

  /// Built-in lookup by name: "su2", "so3", "t1".."t9" / "torus:n".
  static LieAlgebra builtin(const std::string& name);

  int dim() const { return dim_; }
  const std::string& name() const { return name_; }
  GroupKind kind() const { return kind_; }
  const Mat& metric() const { return metric_; }
  const Mat& structure(int k) const { return structure_[k]; }

  Vec bracket(const Vec& x, const Vec& y) const;
  CVec bracket(const CVec& x, const CVec& y) const;

  double inner(const Vec& x, const Vec& y) const;
  Complex inner(const CVec& x, const CVec& y) const;  // sesquilinear
  double norm(const Vec& x) const;
  double norm(const CVec& x) const;

  /// The matrix of ad_x : y -> [x, y] on coefficient vectors.
  Mat ad(const Vec& x) const;

  /// Worst-case residuals over all basis tuples (exact zero for the
  /// built-ins up to float representation of the constants).
  double antisymmetry_residual() const;
  double jacobi_residual() const;
  /// max over basis triples of <[z,x],y> + <x,[z,y]>.
  double metric_invariance_residual() const;

  // --- defining representation & group operations -----------------------

  bool has_representation() const { return !rep_basis_.empty(); }
  int rep_size() const;
  const std::vector<CMat>& rep_basis() const { return rep_basis_; }

  /// Matrix of a (complexified) element in the defining representation.
  CMat matrix(const CVec& z) const;
  CMat matrix(const Vec& x) const;

  /// Coefficients of a matrix lying in the (complexified) algebra span;
  /// throws Error when the reconstruction residual exceeds `tol`.
  CVec coords(const CMat& m, double tol = 1e-8) const;
  /// As above but requires the result to be real.
  Vec coords_real(const CMat& m, double tol = 1e-8) const;

  CMat group_identity() const;

  /// Residual of membership in the compact group K (unitarity /
  /// orthogonality / unit phases, plus det where applicable).
  double membership_residual(const CMat& g) const;
  /// Residual of membership in the complexified group G = K^C.
  double membership_residual_complexified(const CMat& g) const;

  /// Projects a matrix with small drift back onto K (polar projection).
  CMat project_to_group(const CMat& g) const;
  /// Projects a matrix with small drift back onto G.
  CMat project_to_complexified(const CMat& g) const;

  /// Norm bound below which the Hermitian factor's logarithm in the
  /// polar splitting is comfortably single-valued for this algebra.
  double branch_radius() const;

 private:
  std::string name_;
  int dim_;
  std::vector<Mat> structure_;
  Mat metric_;
  std::vector<CMat> rep_basis_;
  GroupKind kind_;
  // least-squares machinery for coords(): stacked basis columns
  CMat rep_span_;  // (rep_size^2) x dim
  Eigen::ColPivHouseholderQR<CMat> rep_qr_;
};

/// Exponential of a complexified algebra element into G = K^C, in the
/// defining representation.
CMat group_exp(const LieAlgebra& alg, const CVec& z);
CMat group_exp(const LieAlgebra& alg, const Vec& x);

/// Principal logarithm of a group element near enough the identity,
/// returned as complexified coefficients.
CVec group_log(const LieAlgebra& alg, const CMat& g);

/// Result of the polar splitting g = k exp(i X) with k in K, X in the
/// real algebra.
struct PolarFactors {
  CMat k;
  Vec x;
};

/// Unique splitting g = k exp(iX) of an element of G = K^C (the matrix
/// polar decomposition in the defining representation). Throws
/// MembershipError when g fails the G-residual and BranchCutError when
/// the Hermitian factor is degenerate.
PolarFactors kp_decompose(const LieAlgebra& alg, const CMat& g,
                          double membership_tol = 1e-9);

/// Adjoint action Ad_g X = g X g^{-1} of k in K on real elements,
/// re-expressed in the basis. Throws MembershipError if g is not in K.
Vec ad_action(const LieAlgebra& alg, const CMat& g, const Vec& x,
              double membership_tol = 1e-9);
CVec ad_action(const LieAlgebra& alg, const CMat& g, const CVec& z,
               double membership_tol = 1e-9);

}  // namespace acpb

#endif
