#ifndef ACPB_BASE_GEOMETRY_HPP
#define ACPB_BASE_GEOMETRY_HPP

#include "acpb/gauge_chart.hpp"

namespace acpb {

/// The metric induced on the base by declaring the soldering form an
/// isometry onto the algebra with its ad-invariant inner product.
struct MetricSample {
  Vec x;
  Mat g;
};

MetricSample induced_metric(const GaugeChart& chart, const Vec& x);

/// Torsion of the pulled-back connection: the base vector whose
/// soldering image is the twisted exterior derivative contracted with
/// (u, v). Vanishes iff that derivative does.
Vec torsion(const GaugeChart& chart, const Vec& x, const Vec& u, const Vec& v);

/// Curvature vector R(u, v)w of the pulled-back connection under the
/// integrability hypothesis, computed by nesting algebra brackets of the
/// soldering images. Throws Error when the residuals at x exceed
/// `residual_tol` unless `force` is set (the formula is only meaningful
/// on integrable charts).
Vec riemann_curvature(const GaugeChart& chart, const Vec& x, const Vec& u,
                      const Vec& v, const Vec& w, double residual_tol = 1e-6,
                      bool force = false);

/// Sectional curvature of the plane spanned by u, v: the pair is
/// orthonormalised against the induced metric and the result is minus
/// the squared algebra norm of the bracket of their soldering images,
/// hence always non-positive. Throws Error for (numerically) parallel
/// inputs.
double sectional_curvature(const GaugeChart& chart, const Vec& x, const Vec& u,
                           const Vec& v);

/// Curvature of the induced connection on adjoint-bundle sections:
/// bracket of the curvature form contracted with (u, v) against the
/// section value. Holds without any integrability hypothesis.
Vec adjoint_curvature(const GaugeChart& chart, const Vec& x, const Vec& u,
                      const Vec& v, const Vec& section);

}  // namespace acpb

#endif
