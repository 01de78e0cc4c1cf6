#include "acpb/base_geometry.hpp"

#include <cmath>

namespace acpb {

MetricSample induced_metric(const GaugeChart& chart, const Vec& x) {
  chart.require_inside(x);
  Mat s = chart.soldering_checked(x);
  Mat g = s.transpose() * chart.algebra().metric() * s;
  g = 0.5 * (g + g.transpose());  // kill round-off asymmetry
  return {x, std::move(g)};
}

Vec torsion(const GaugeChart& chart, const Vec& x, const Vec& u, const Vec& v) {
  Mat s = chart.soldering_checked(x);
  AdTwoForm d = soldering_exterior_derivative(chart, x);
  return s.partialPivLu().solve(d.contract(u, v));
}

Vec riemann_curvature(const GaugeChart& chart, const Vec& x, const Vec& u,
                      const Vec& v, const Vec& w, double residual_tol, bool force) {
  if (!force) {
    IntegrabilityResiduals r = integrability_residuals(chart, x);
    if (r.max() > residual_tol)
      throw Error(
          "riemann_curvature: chart fails the integrability residuals at this "
          "point (max " +
          std::to_string(r.max()) + "); pass force to evaluate anyway");
  }
  const LieAlgebra& alg = chart.algebra();
  Mat s = chart.soldering_checked(x);
  Vec nested = alg.bracket(Vec(alg.bracket(Vec(s * u), Vec(s * v))), Vec(s * w));
  return s.partialPivLu().solve(nested);
}

double sectional_curvature(const GaugeChart& chart, const Vec& x, const Vec& u,
                           const Vec& v) {
  const LieAlgebra& alg = chart.algebra();
  Mat g = induced_metric(chart, x).g;
  auto dot = [&](const Vec& a, const Vec& b) { return double(a.transpose() * g * b); };
  double nu = std::sqrt(dot(u, u));
  if (nu < 1e-14) throw Error("sectional_curvature: zero first vector");
  Vec e1 = u / nu;
  Vec r = v - dot(v, e1) * e1;
  double nr = std::sqrt(dot(r, r));
  if (nr < 1e-10 * std::max(1.0, std::sqrt(dot(v, v))))
    throw Error("sectional_curvature: vectors are parallel");
  Vec e2 = r / nr;
  Mat s = chart.soldering_at(x);
  Vec br = alg.bracket(Vec(s * e1), Vec(s * e2));
  return -alg.inner(br, br);
}

Vec adjoint_curvature(const GaugeChart& chart, const Vec& x, const Vec& u,
                      const Vec& v, const Vec& section) {
  AdTwoForm f = curvature_form(chart, x);
  return chart.algebra().bracket(f.contract(u, v), section);
}

}  // namespace acpb
