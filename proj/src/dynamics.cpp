#include "acpb/dynamics.hpp"

#include <cmath>

#include "acpb/matrix_functions.hpp"

namespace acpb {

namespace {

constexpr Complex kI{0.0, 1.0};

struct FlowState {
  Vec x;
  CMat k;
};

// Right-hand side of the horizontal flow: the base moves with the
// soldering solve of the (adjoint-twisted) generator, the fibre factor
// follows the horizontal-lift rule k' = -A(x') k. Evaluated at the
// group projection of the fibre factor so that off-manifold integrator
// states never feed the adjoint action.
FlowState horizontal_rhs(const GaugeChart& chart, const LieAlgebra& alg,
                         const FlowState& s, const Vec& gen) {
  CMat kp = alg.project_to_group(s.k);
  Vec twisted = ad_action(alg, kp, gen);
  Mat frame = chart.soldering_checked(s.x);
  Vec xdot = -frame.partialPivLu().solve(twisted);
  Vec a_of_xdot = chart.connection_at(s.x) * xdot;
  CMat kdot = -alg.matrix(a_of_xdot) * kp;
  return {std::move(xdot), std::move(kdot)};
}

FlowState axpy(const FlowState& s, double c, const FlowState& d) {
  return {s.x + c * d.x, s.k + c * d.k};
}

}  // namespace

BundlePoint flow_vertical(const GaugeChart& chart, const BundlePoint& p, const Vec& gen,
                          double t) {
  require_point(chart, p);
  const LieAlgebra& alg = chart.algebra();
  return {p.x, p.k * expm(CMat(t * alg.matrix(gen)))};
}

// TODO: a Munthe-Kaas style stepper would integrate the fibre factor in
// the algebra and make the per-step polar reprojection unnecessary.
BundlePoint flow_horizontal(const GaugeChart& chart, const BundlePoint& p,
                            const Vec& gen, double t, const IntegratorConfig& cfg,
                            std::vector<FlowSample>* trace, int trace_stride) {
  require_point(chart, p);
  if (!(cfg.step > 0.0)) throw Error("flow_horizontal: step must be positive");
  const LieAlgebra& alg = chart.algebra();
  const double sign = t >= 0.0 ? 1.0 : -1.0;
  const double total = std::abs(t);
  long nsteps = static_cast<long>(std::ceil(total / cfg.step - 1e-12));
  if (nsteps > cfg.max_steps)
    throw Error("flow_horizontal: step budget exceeded");

  FlowState s{p.x, p.k};
  double time = 0.0;
  double proj_residual = 0.0;
  if (trace) trace->push_back({0.0, {s.x, s.k}, 0.0});
  for (long i = 0; i < nsteps; ++i) {
    double h = std::min(cfg.step, total - time) * sign;
    FlowState k1 = horizontal_rhs(chart, alg, s, gen);
    FlowState k2 = horizontal_rhs(chart, alg, axpy(s, 0.5 * h, k1), gen);
    FlowState k3 = horizontal_rhs(chart, alg, axpy(s, 0.5 * h, k2), gen);
    FlowState k4 = horizontal_rhs(chart, alg, axpy(s, h, k3), gen);
    s.x += (h / 6.0) * (k1.x + 2.0 * k2.x + 2.0 * k3.x + k4.x);
    s.k += (h / 6.0) * (k1.k + 2.0 * k2.k + 2.0 * k3.k + k4.k);
    time += std::abs(h);
    if (cfg.project) {
      CMat kp = alg.project_to_group(s.k);
      proj_residual = std::max(proj_residual, (kp - s.k).norm());
      s.k = std::move(kp);
    }
    if (!chart.contains(s.x))
      throw ChartExit("flow_horizontal: trajectory left the chart", sign * time);
    if (trace && ((i + 1) % trace_stride == 0 || i + 1 == nsteps))
      trace->push_back({sign * time, {s.x, s.k}, proj_residual});
  }
  return {std::move(s.x), std::move(s.k)};
}

Vec shoot_generator(const GaugeChart& chart, const Vec& x, const Vec& v) {
  if (v.norm() == 0.0) throw Error("shoot_generator: zero initial velocity");
  Mat frame = chart.soldering_checked(x);
  return Vec(-frame * v);
}

Vec geodesic_shoot(const GaugeChart& chart, const Vec& x, const Vec& v, double t,
                   const IntegratorConfig& cfg, std::vector<FlowSample>* trace,
                   int trace_stride) {
  Vec gen = shoot_generator(chart, x, v);
  BundlePoint p{x, chart.algebra().group_identity()};
  return flow_horizontal(chart, p, gen, t, cfg, trace, trace_stride).x;
}

CMat holonomy(const GaugeChart& chart, const PathFn& path, double t0, double t1,
              const IntegratorConfig& cfg) {
  const LieAlgebra& alg = chart.algebra();
  if (!(cfg.step > 0.0)) throw Error("holonomy: step must be positive");
  const double fd = 0.5 * cfg.step;
  auto rhs = [&](double t, const CMat& k) -> CMat {
    Vec x = path(t);
    chart.require_inside(x);
    Vec xdot = (path(t + fd) - path(t - fd)) / (2.0 * fd);
    Vec a = chart.connection_at(x) * xdot;
    return CMat(-alg.matrix(a) * alg.project_to_group(k));
  };
  const double sign = t1 >= t0 ? 1.0 : -1.0;
  const double total = std::abs(t1 - t0);
  long nsteps = static_cast<long>(std::ceil(total / cfg.step - 1e-12));
  CMat k = alg.group_identity();
  double time = 0.0;
  for (long i = 0; i < nsteps; ++i) {
    double h = std::min(cfg.step, total - time) * sign;
    double t = t0 + sign * time;
    CMat k1 = rhs(t, k);
    CMat k2 = rhs(t + 0.5 * h, CMat(k + 0.5 * h * k1));
    CMat k3 = rhs(t + 0.5 * h, CMat(k + 0.5 * h * k2));
    CMat k4 = rhs(t + h, CMat(k + h * k3));
    k += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    time += std::abs(h);
    if (cfg.project) k = alg.project_to_group(k);
  }
  return k;
}

Vec parallel_transport(const GaugeChart& chart, const PathFn& path, double t0,
                       double t1, const Vec& section, const IntegratorConfig& cfg) {
  CMat k = holonomy(chart, path, t0, t1, cfg);
  return ad_action(chart.algebra(), k, section);
}

BundlePoint complexified_action(const GaugeChart& chart, const BundlePoint& p,
                                const CMat& g, const IntegratorConfig& cfg) {
  const LieAlgebra& alg = chart.algebra();
  PolarFactors kp = kp_decompose(alg, g);
  double len = alg.norm(kp.x);
  if (len >= alg.branch_radius())
    throw BranchCutError(
        "complexified_action: Hermitian exponent beyond the branch radius");
  BundlePoint q{p.x, CMat(p.k * kp.k)};
  if (len == 0.0) return q;
  return flow_horizontal(chart, q, kp.x, 1.0, cfg);
}

CVec complex_coframe(const GaugeChart& chart, const BundlePoint& p,
                     const TangentVector& v) {
  const LieAlgebra& alg = chart.algebra();
  Mat frame = chart.soldering_checked(p.x);
  Vec image = ad_action(alg, CMat(p.k.adjoint()), Vec(frame * v.horizontal));
  return CVec(v.vertical.cast<Complex>() - kI * image.cast<Complex>());
}

TangentVector coframe_solve(const GaugeChart& chart, const BundlePoint& p,
                            const CVec& value) {
  const LieAlgebra& alg = chart.algebra();
  Mat frame = chart.soldering_checked(p.x);
  Vec vertical = value.real();
  Vec image = ad_action(alg, p.k, Vec(-value.imag()));
  Vec horizontal = frame.partialPivLu().solve(image);
  return {std::move(horizontal), std::move(vertical)};
}

std::pair<double, double> action_derivative_errors(const GaugeChart& chart,
                                                   const BundlePoint& p, const Vec& gen,
                                                   double h,
                                                   const IntegratorConfig& cfg) {
  const LieAlgebra& alg = chart.algebra();
  auto coordinate_rate = [&](const BundlePoint& q) -> TangentVector {
    Vec xdot = (q.x - p.x) / h;
    CVec xi = group_log(alg, CMat(alg.project_to_group(CMat(p.k.adjoint() * q.k))));
    Vec xidot = xi.real() / h;
    Vec vertical = xidot + ad_action(alg, CMat(p.k.adjoint()),
                                     Vec(chart.connection_at(p.x) * xdot));
    return {std::move(xdot), std::move(vertical)};
  };
  CVec real_dir = gen.cast<Complex>();
  CVec imag_dir = kI * gen.cast<Complex>();
  BundlePoint q1 = complexified_action(chart, p, group_exp(alg, CVec(h * real_dir)), cfg);
  BundlePoint q2 = complexified_action(chart, p, group_exp(alg, CVec(h * imag_dir)), cfg);
  TangentVector d1 = coordinate_rate(q1);
  TangentVector d2 = coordinate_rate(q2);
  TangentVector vertical_field = vertical_vector(chart.base_dim(), gen);
  TangentVector horizontal_field = apply_complex_structure(chart, p, vertical_field);
  TangentVector e1{d1.horizontal - vertical_field.horizontal,
                   d1.vertical - vertical_field.vertical};
  TangentVector e2{d2.horizontal - horizontal_field.horizontal,
                   d2.vertical - horizontal_field.vertical};
  return {tangent_norm(chart, p, e1), tangent_norm(chart, p, e2)};
}

}  // namespace acpb
