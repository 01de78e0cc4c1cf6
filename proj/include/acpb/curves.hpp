#ifndef ACPB_CURVES_HPP
#define ACPB_CURVES_HPP

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "acpb/dynamics.hpp"
#include "acpb/gauge_chart.hpp"
#include "acpb/polynomial.hpp"

namespace acpb {

/// Domain carrying a holomorphic form: a disc in the plane or the torus
/// with lattice generated by 1 and tau.
struct Surface {
  enum class Type { Disc, Torus };
  Type type = Type::Disc;
  Complex tau{0.0, 1.0};
};

/// Holomorphic 1-form on a surface with values in the complexified
/// algebra. Either a polynomial coefficient function mu(z) dz, or the
/// scalar type: a fixed algebra direction times a scalar polynomial
/// form, direction * zeta(z) dz.
class CurveForm {
 public:
  enum class Kind { Polynomial, Scalar };

  static CurveForm polynomial(std::vector<CVec> coeffs, Surface surface = {});
  static CurveForm scalar(CVec direction, ComplexPoly zeta, Surface surface = {});

  Kind kind() const { return kind_; }
  const Surface& surface() const { return surface_; }
  int algebra_dim() const { return dim_; }
  const std::vector<CVec>& coeffs() const { return coeffs_; }
  const CVec& direction() const { return direction_; }
  const ComplexPoly& zeta() const { return zeta_; }

  /// Value of the dz-coefficient at z.
  CVec mu(Complex z) const;
  /// Component polynomial (coefficients of basis direction i).
  ComplexPoly component(int i) const;

 private:
  Kind kind_ = Kind::Polynomial;
  std::vector<CVec> coeffs_;
  CVec direction_;
  ComplexPoly zeta_;
  Surface surface_;
  int dim_ = 0;
};

/// Develops the form along a polyline path in the plane by solving the
/// right-multiplicative equation g' = g eta(path'). Developing a
/// concatenation multiplies the factors in path order.
CMat develop(const LieAlgebra& alg, const CurveForm& eta,
             const std::vector<Complex>& path, const IntegratorConfig& cfg);

/// Generic driver for the development equation with an arbitrary
/// matrix-valued integrand t -> eta(path'(t)).
CMat develop_along(const LieAlgebra& alg, const std::function<CMat(double)>& integrand,
                   double t0, double t1, const IntegratorConfig& cfg);

/// Closed form of the development for scalar-type forms:
/// exp(direction * integral of zeta along the path).
CMat scalar_develop_closed_form(const LieAlgebra& alg, const CVec& direction,
                                const ComplexPoly& zeta, const std::vector<Complex>& path);

/// Reconstructs the curve value at the endpoint of `path` from its
/// coframe pullback: acts on the base point by the developed group
/// element.
BundlePoint reconstruct_curve(const GaugeChart& chart, const BundlePoint& p0,
                              const CurveForm& eta, const std::vector<Complex>& path,
                              const IntegratorConfig& cfg);

/// Periods of a scalar polynomial form over the two torus generators
/// (segment integrals from 0 to 1 and from 0 to tau).
std::vector<Complex> torus_periods(const ComplexPoly& zeta, Complex tau);

/// Three-valued verdicts for the semi-decidable group searches.
enum class Tri { True, False, Undecided };

/// Finitely generated discrete subgroup given by generator matrices,
/// with bounded-word-length membership search.
struct StabilizerGroup {
  std::vector<CMat> generators;
  int closure_depth = 8;
  double tolerance = 1e-6;
  long element_budget = 20000;
};

struct PeriodWitness {
  Complex period;
  Tri member = Tri::Undecided;
  std::vector<int> word;  // generator indices, negative for inverses
  double distance = 0.0;  // matrix distance of the best match
};

struct LatticeCheck {
  Tri satisfied = Tri::Undecided;
  std::vector<PeriodWitness> witnesses;
  int failing_period = -1;  // index into witnesses when satisfied == False
};

/// Tests whether exp(direction * w) lies in the group for every
/// generating period w. Membership search is exhaustive when the group
/// ball stabilises below the word bound (so False is then definitive);
/// otherwise unresolved periods come back Undecided.
LatticeCheck lattice_condition(const LieAlgebra& alg, const CVec& direction,
                               const std::vector<Complex>& periods,
                               const StabilizerGroup& gamma);

enum class FactorKind { Constant, Elliptic, Rejected, Undecided };

struct Factorization {
  FactorKind kind = FactorKind::Undecided;
  std::array<Complex, 2> basis{Complex(0, 0), Complex(0, 0)};  // for Elliptic
  std::string reason;
};

/// Classifies the closure of the period subgroup of the plane after the
/// lattice condition holds: trivial or one-dimensional closures force a
/// constant map, a genuine rank-two lattice yields an elliptic curve
/// (with a reduced basis), and numerically ambiguous data comes back
/// Undecided. Rank detection uses an integer-relation reduction on the
/// finite generating set.
Factorization classify_scalar_form(const LieAlgebra& alg, const CVec& direction,
                                   const std::vector<Complex>& periods,
                                   const StabilizerGroup& gamma);

/// Samples a real 1-form with complexified-algebra values on the two
/// coordinate tangent directions at z.
using RealFormSampler = std::function<CVec(Complex z, double ux, double uy)>;

/// Residual whose vanishing characterises forms of holomorphic type:
/// the norm of eta(d/dy) - i eta(d/dx).
double holomorphic_type_residual(const LieAlgebra& alg, const RealFormSampler& sampler,
                                 Complex z);

/// Projective value of a polynomial form at z. Common zeros are divided
/// out at the coefficient level (Taylor shift), so the map extends
/// holomorphically across zeros of mu; the result is a unit vector with
/// a deterministic phase. Throws Error for the identically zero form.
CVec projectivize(const CurveForm& eta, Complex z);

/// Conformality residual at z in the coordinate direction d/dx: the
/// imaginary part of the squared-component sum of mu. Zero on conformal
/// pullbacks.
double conformality_residual(const LieAlgebra& alg, const CurveForm& eta, Complex z);

/// Same residual probed along an arbitrary tangent direction (ux, uy).
double conformality_residual_direction(const LieAlgebra& alg, const CurveForm& eta,
                                       Complex z, double ux, double uy);

/// Pullback of the induced base metric through a curve with coframe
/// pullback eta, as a 2x2 matrix over the coordinate frame (d/dx, d/dy).
Eigen::Matrix2d pullback_metric(const LieAlgebra& alg, const CurveForm& eta, Complex z);

/// The polynomial sum of squared components of mu in the orthonormal
/// basis; the zero polynomial exactly when the projectivised curve lies
/// in the quadric cut out by the complexified metric.
ComplexPoly quadric_polynomial(const LieAlgebra& alg, const CurveForm& eta);

}  // namespace acpb

#endif
