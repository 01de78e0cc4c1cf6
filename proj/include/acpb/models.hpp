#ifndef ACPB_MODELS_HPP
#define ACPB_MODELS_HPP

#include <string>

#include "acpb/gauge_chart.hpp"

namespace acpb {

/// Cross-product endomorphism y -> x cross y; a Lie algebra isomorphism
/// onto so(3) that is an isometry for the half-trace metric and
/// intertwines rotations with the adjoint action.
Mat hat(const Eigen::Vector3d& x);
Eigen::Vector3d vee(const Mat& m);

/// Orthonormal frame bundle of the upper half-space {x3 > 0} with its
/// hyperbolic metric, trivialised by the frame x3 * d/dx_i. The
/// connection field is the Levi-Civita connection in that frame and the
/// soldering field maps base vectors to so(3) through the cross-product
/// map; both come with closed-form derivatives. Integrable.
GaugeChart hyperbolic_frame_chart(double halfwidth = 2.0, double height_min = 0.2,
                                  double height_max = 4.0);

/// The homogeneous sample: the complexification of K viewed as a right
/// K-principal bundle over its compact quotient, in exponential
/// coordinates x -> exp(ix) k. Connection and soldering fields are the
/// real and (minus) imaginary parts of the left Maurer-Cartan frame,
/// evaluated by a convergent series with exact term-wise derivatives.
/// The induced structure agrees with the group's complex structure, so
/// the chart is integrable and the structure acts as multiplication by
/// i on the holomorphic coframe.
GaugeChart homogeneous_chart(const LieAlgebra& algebra, double halfwidth = 1.0);

/// Abelian chart over t^n: constant orthonormal soldering frame and a
/// linear-gauge connection realising the prescribed constant curvature.
/// Integrable exactly when the curvature vanishes.
GaugeChart torus_chart(int n, const AdTwoForm& curvature, double halfwidth = 1.0);
GaugeChart torus_chart_flat(int n, double halfwidth = 1.0);

/// CLI-facing model lookup: "hyperbolic3", "homog:su2", "homog:so3",
/// "homog:t<n>", "abelian:<n>" (flat).
GaugeChart model_by_name(const std::string& name);

}  // namespace acpb

#endif
