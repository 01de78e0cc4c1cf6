#ifndef ACPB_DYNAMICS_HPP
#define ACPB_DYNAMICS_HPP

#include <functional>
#include <vector>

#include "acpb/gauge_chart.hpp"

namespace acpb {

/// Classical fourth-order one-step scheme with fixed step and per-step
/// polar reprojection of the fibre factor onto the group.
struct IntegratorConfig {
  double step = 1e-3;
  int max_steps = 4000000;
  bool project = true;
};

struct FlowSample {
  double t;
  BundlePoint p;
  double projection_residual;
};

/// Flow of the fundamental vertical field: closed form (x, k exp(tX)).
BundlePoint flow_vertical(const GaugeChart& chart, const BundlePoint& p, const Vec& gen,
                          double t);

/// Flow of the horizontal image of the vertical generator under the
/// complex structure. The base projection of the trajectory is a
/// geodesic of the induced metric. Throws ChartExit (with the exit time)
/// if the trajectory leaves the chart.
BundlePoint flow_horizontal(const GaugeChart& chart, const BundlePoint& p,
                            const Vec& gen, double t, const IntegratorConfig& cfg,
                            std::vector<FlowSample>* trace = nullptr,
                            int trace_stride = 1);

/// Generator whose horizontal flow starts with base velocity v at x.
Vec shoot_generator(const GaugeChart& chart, const Vec& x, const Vec& v);

/// Geodesic through x with initial velocity v, evaluated at time t by
/// solving for the generator and flowing horizontally.
Vec geodesic_shoot(const GaugeChart& chart, const Vec& x, const Vec& v, double t,
                   const IntegratorConfig& cfg,
                   std::vector<FlowSample>* trace = nullptr, int trace_stride = 1);

using PathFn = std::function<Vec(double)>;

/// Holonomy factor of the horizontal lift along a base path: solves
/// k' = -A(path'(t)) k with k(t0) = id.
CMat holonomy(const GaugeChart& chart, const PathFn& path, double t0, double t1,
              const IntegratorConfig& cfg);

/// Parallel transport of an adjoint-bundle section value along a base
/// path (the adjoint action of the holonomy factor); preserves the
/// algebra inner product.
Vec parallel_transport(const GaugeChart& chart, const PathFn& path, double t0,
                       double t1, const Vec& section, const IntegratorConfig& cfg);

/// The holomorphic extension of the structure-group action: splits g
/// polar-wise, acts vertically by the compact factor and then flows
/// horizontally for unit time. Rejects g whose Hermitian exponent
/// exceeds the algebra branch radius.
BundlePoint complexified_action(const GaugeChart& chart, const BundlePoint& p,
                                const CMat& g, const IntegratorConfig& cfg);

/// The complexified-algebra-valued coframe combining the connection
/// (real part) with the soldering form: the unique form whose real part
/// is the connection form and which intertwines the complex structure
/// with multiplication by i.
CVec complex_coframe(const GaugeChart& chart, const BundlePoint& p,
                     const TangentVector& v);

/// Inverts the coframe at p (it is a pointwise isomorphism).
TangentVector coframe_solve(const GaugeChart& chart, const BundlePoint& p,
                            const CVec& value);

/// Finite-difference check of the action derivative at the identity:
/// returns the errors of (psi(p, exp(h gen)) - p)/h against the vertical
/// generator field and of (psi(p, exp(i h gen)) - p)/h against its
/// horizontal image. Both are O(h).
std::pair<double, double> action_derivative_errors(const GaugeChart& chart,
                                                   const BundlePoint& p, const Vec& gen,
                                                   double h,
                                                   const IntegratorConfig& cfg);

}  // namespace acpb

#endif
