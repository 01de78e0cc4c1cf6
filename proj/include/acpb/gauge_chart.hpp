#ifndef ACPB_GAUGE_CHART_HPP
#define ACPB_GAUGE_CHART_HPP

#include <functional>
#include <memory>
#include <vector>

#include "acpb/lie_algebra.hpp"
#include "acpb/types.hpp"

namespace acpb {

/// How chart fields are differentiated: analytic callbacks when the
/// chart supplies them, otherwise central differences of step `step`
/// (optionally Richardson-extrapolated).
struct DerivConfig {
  double step = 1e-4;
  bool richardson = false;
};

/// Local trivialisation U x K of a principal bundle with connection,
/// described by two fields on a box U in R^n (n = dim of the algebra):
///
///  * connection_at(x): columns are the components A_mu(x) of the local
///    connection form, as algebra coefficient vectors;
///  * soldering_at(x): columns are the components of the soldering form
///    identifying base tangent vectors with algebra elements. Viewed as
///    an n x n matrix it must be invertible on the domain.
///
/// Charts are immutable after construction and field callbacks must be
/// pure, so every operation on a chart is re-entrant.
class GaugeChart {
 public:
  using FieldFn = std::function<Mat(const Vec&)>;
  using JacobianFn = std::function<std::vector<Mat>(const Vec&)>;

  GaugeChart(std::shared_ptr<const LieAlgebra> algebra, Vec lower, Vec upper,
             FieldFn connection, FieldFn soldering,
             JacobianFn connection_jacobian = nullptr,
             JacobianFn soldering_jacobian = nullptr, DerivConfig deriv = {});

  const LieAlgebra& algebra() const { return *algebra_; }
  std::shared_ptr<const LieAlgebra> algebra_ptr() const { return algebra_; }
  int base_dim() const { return static_cast<int>(lower_.size()); }
  const Vec& lower() const { return lower_; }
  const Vec& upper() const { return upper_; }
  const DerivConfig& deriv() const { return deriv_; }
  bool has_analytic_derivatives() const { return bool(connection_jac_); }

  bool contains(const Vec& x, double margin = 0.0) const;
  void require_inside(const Vec& x, double margin = 0.0) const;

  Mat connection_at(const Vec& x) const;
  Mat soldering_at(const Vec& x) const;
  /// Partial derivatives of the fields, one matrix per base direction.
  std::vector<Mat> connection_jacobian(const Vec& x) const;
  std::vector<Mat> soldering_jacobian(const Vec& x) const;

  double soldering_condition(const Vec& x) const;

  /// Copy of the chart over a different domain box (fields unchanged).
  GaugeChart restricted(Vec lower, Vec upper) const;
  /// The soldering matrix after a conditioning check; throws
  /// SingularFrame beyond `cond_limit` (the isomorphism hypothesis is
  /// structural, so near-singular frames are an error, not a warning).
  Mat soldering_checked(const Vec& x, double cond_limit = 1e8) const;

 private:
  std::shared_ptr<const LieAlgebra> algebra_;
  Vec lower_, upper_;
  FieldFn connection_, soldering_;
  JacobianFn connection_jac_, soldering_jac_;
  DerivConfig deriv_;
};

/// Point (x, k) of the local trivialisation.
struct BundlePoint {
  Vec x;
  CMat k;
};

/// Tangent vector split by the connection: base coordinates of the
/// horizontal part plus the algebra coefficients generating the
/// vertical part.
struct TangentVector {
  Vec horizontal;
  Vec vertical;
};

TangentVector horizontal_vector(const Vec& h, int algebra_dim);
TangentVector vertical_vector(int base_dim, const Vec& x);

/// Checks that x lies in the chart and k passes the group residual.
void require_point(const GaugeChart& chart, const BundlePoint& p,
                   double membership_tol = 1e-9);

/// Antisymmetric array of algebra-valued components indexed by base
/// direction pairs.
class AdTwoForm {
 public:
  AdTwoForm(int base_dim, int algebra_dim);
  int base_dim() const { return n_; }
  Vec operator()(int mu, int nu) const;
  void set(int mu, int nu, const Vec& value);
  /// Full bilinear contraction with two base vectors.
  Vec contract(const Vec& u, const Vec& v) const;
  double max_norm(const LieAlgebra& alg) const;

 private:
  int n_, dim_;
  std::vector<Vec> packed_;  // mu < nu, lexicographic
};

/// Curvature components F_{mu nu} = d A + [A, A] of the chart connection.
AdTwoForm curvature_form(const GaugeChart& chart, const Vec& x);

/// Exterior derivative of the soldering form twisted by the connection,
/// (d alpha)_{mu nu} + [A_mu, alpha_nu] - [A_nu, alpha_mu].
AdTwoForm soldering_exterior_derivative(const GaugeChart& chart, const Vec& x);

struct IntegrabilityResiduals {
  double soldering;  // max norm of the twisted exterior derivative
  double curvature;  // max norm of F - [soldering, soldering]
  double max() const { return soldering > curvature ? soldering : curvature; }
};

/// Pointwise obstruction to integrability of the induced almost complex
/// structure: both residuals vanish iff the structure is integrable.
IntegrabilityResiduals integrability_residuals(const GaugeChart& chart, const Vec& x);

/// The almost complex structure: horizontal vectors map to the vertical
/// direction the soldering form assigns them, vertical generators map to
/// minus the corresponding horizontal vector. Squares to -id.
TangentVector apply_complex_structure(const GaugeChart& chart, const BundlePoint& p,
                                      const TangentVector& v);

/// Norm combining the induced base metric on the horizontal part with
/// the algebra inner product on the vertical part.
double tangent_norm(const GaugeChart& chart, const BundlePoint& p,
                    const TangentVector& v);

/// Nijenhuis tensor on two vertical generators, evaluated through the
/// closed-form expression in the chart fields.
TangentVector nijenhuis_closed_form(const GaugeChart& chart, const BundlePoint& p,
                                    const Vec& gen_x, const Vec& gen_y);

/// Closed-form Nijenhuis tensor on arbitrary tangent vectors.
TangentVector nijenhuis_closed_form_general(const GaugeChart& chart,
                                            const BundlePoint& p,
                                            const TangentVector& v,
                                            const TangentVector& w);

/// Closed-form Nijenhuis tensor at the section point over x (identity
/// fibre factor). Works for algebras without a matrix representation.
TangentVector nijenhuis_closed_form_section(const GaugeChart& chart, const Vec& x,
                                            const TangentVector& v,
                                            const TangentVector& w);

/// Independent evaluation of the Nijenhuis tensor from its definition:
/// the four Lie brackets of the generator fields and their images under
/// the complex structure are computed by central finite differences in
/// chart coordinates on U x K (the fibre parameterised by k exp(.)).
/// Converges to the closed form at rate O(h^2).
TangentVector nijenhuis_finite_difference(const GaugeChart& chart,
                                          const BundlePoint& p, const Vec& gen_x,
                                          const Vec& gen_y, double h);

/// Finite-difference Nijenhuis tensor on arbitrary tangent vectors
/// (extended to fields with constant split coefficients).
TangentVector nijenhuis_finite_difference_general(const GaugeChart& chart,
                                                  const BundlePoint& p,
                                                  const TangentVector& v,
                                                  const TangentVector& w, double h);

/// Finite-difference Lie bracket of the two fundamental vertical fields;
/// approaches the generator bracket at O(h^2).
TangentVector fundamental_bracket_fd(const GaugeChart& chart, const BundlePoint& p,
                                     const Vec& gen_x, const Vec& gen_y, double h);

}  // namespace acpb

#endif
