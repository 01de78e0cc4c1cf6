#include "acpb/cli.hpp"

#include <sstream>

#include "acpb/base_geometry.hpp"
#include "acpb/models.hpp"
#include "acpb/sampling.hpp"

namespace acpb::cli {

namespace {

GaugeChart scenario_chart(const Json& scenario) {
  if (scenario.contains("model")) {
    std::string name = scenario.at("model").get<std::string>();
    GaugeChart chart = model_by_name(name);
    if (name.rfind("abelian:", 0) == 0 && scenario.contains("curvature")) {
      // abelian models accept a constant curvature prescription:
      // [{"mu": i, "nu": j, "value": [..]}, ...]
      int n = chart.base_dim();
      AdTwoForm f(n, n);
      for (const Json& c : scenario.at("curvature")) {
        int mu = require_field(c, "mu", "curvature").get<int>();
        int nu = require_field(c, "nu", "curvature").get<int>();
        f.set(mu, nu, vec_from_json(require_field(c, "value", "curvature")));
      }
      return torus_chart(n, f);
    }
    return chart;
  }
  if (scenario.contains("chart")) return chart_from_json(scenario.at("chart"));
  throw SchemaError("scenario: need either 'model' or 'chart'");
}

std::uint64_t scenario_seed(const Json& s, const Options& opt) {
  if (opt.seed) return *opt.seed;
  return s.value("seed", 1u);
}

int scenario_points(const Json& s, const Options& opt, int fallback) {
  if (opt.points) return *opt.points;
  return s.value("points", fallback);
}

double scenario_step(const Json& s, const Options& opt, double fallback) {
  if (opt.step) return *opt.step;
  return s.value("step", fallback);
}

double scenario_tol(const Json& s, const Options& opt, double fallback) {
  if (opt.tol) return *opt.tol;
  return s.value("tol", fallback);
}

Json json_round(double v) { return Json(v); }

}  // namespace

CommandResult run_verify(const Json& scenario, const Options& opt) {
  GaugeChart chart = scenario_chart(scenario);
  const LieAlgebra& alg = chart.algebra();
  const std::uint64_t seed = scenario_seed(scenario, opt);
  const int npoints = scenario_points(scenario, opt, 100);
  const double tol = scenario_tol(scenario, opt, 1e-8);
  const double nstep = scenario.value("nijenhuis_step", 1e-3);
  const int npairs = scenario.value("nijenhuis_pairs", 2);

  // keep finite-difference neighbourhoods inside the box
  Vec margin = 0.05 * (chart.upper() - chart.lower());
  std::vector<Vec> points = box_samples(Vec(chart.lower() + margin),
                                        Vec(chart.upper() - margin), npoints, seed);
  SampleRng rng(seed ^ 0x9e3779b97f4a7c15ull);

  // the finite-difference evaluation walks the structure group, so it
  // needs a defining representation; custom structure-constant algebras
  // still get residuals and the section-level closed form
  const bool has_group = alg.has_representation();
  double max_r1 = 0.0, max_r2 = 0.0, max_closed = 0.0, max_numeric = 0.0;
  const int n = chart.base_dim();
  for (const Vec& x : points) {
    IntegrabilityResiduals r = integrability_residuals(chart, x);
    max_r1 = std::max(max_r1, r.soldering);
    max_r2 = std::max(max_r2, r.curvature);
    for (int k = 0; k < npairs; ++k) {
      Vec gx = rng.unit_vector(alg.dim());
      Vec gy = rng.unit_vector(alg.dim());
      TangentVector closed = nijenhuis_closed_form_section(
          chart, x, vertical_vector(n, gx), vertical_vector(n, gy));
      BundlePoint p{x, has_group ? alg.group_identity() : CMat()};
      if (has_group) {
        max_closed = std::max(max_closed, tangent_norm(chart, p, closed));
        max_numeric = std::max(
            max_numeric, tangent_norm(chart, p, nijenhuis_finite_difference(
                                                   chart, p, gx, gy, nstep)));
      } else {
        Vec img = chart.soldering_at(x) * closed.horizontal;
        max_closed = std::max(max_closed, std::sqrt(alg.inner(img, img) +
                                                    alg.inner(closed.vertical,
                                                              closed.vertical)));
      }
    }
  }
  bool integrable = std::max(max_r1, max_r2) <= tol;
  CommandResult out;
  out.report = Json{{"command", "verify"},
                    {"algebra", alg.name()},
                    {"seed", seed},
                    {"points", npoints},
                    {"tol", tol},
                    {"max_r1", json_round(max_r1)},
                    {"max_r2", json_round(max_r2)},
                    {"max_nijenhuis_closed", json_round(max_closed)},
                    {"max_nijenhuis_numeric",
                     has_group ? Json(max_numeric) : Json(nullptr)},
                    {"verdict", integrable ? "integrable within tolerance"
                                           : "non-integrable"}};
  out.exit_code = integrable ? kPass : kFail;
  return out;
}

CommandResult run_curvature(const Json& scenario, const Options& opt) {
  GaugeChart chart = scenario_chart(scenario);
  const LieAlgebra& alg = chart.algebra();
  const std::uint64_t seed = scenario_seed(scenario, opt);
  const int npoints = scenario_points(scenario, opt, 50);
  const int planes = scenario.value("planes", 20);

  Vec margin = 0.05 * (chart.upper() - chart.lower());
  std::vector<Vec> points = box_samples(Vec(chart.lower() + margin),
                                        Vec(chart.upper() - margin), npoints, seed);

  Json records = Json::array();
  std::ostringstream csv;
  csv << "point_index,plane_seed,K\n";
  double kmin = std::numeric_limits<double>::infinity();
  double kmax = -std::numeric_limits<double>::infinity();
  double ksum = 0.0;
  long ksamples = 0;
  for (size_t pi = 0; pi < points.size(); ++pi) {
    const Vec& x = points[pi];
    MetricSample g = induced_metric(chart, x);
    IntegrabilityResiduals r = integrability_residuals(chart, x);
    Json samples = Json::array();
    for (int s = 0; s < planes; ++s) {
      std::uint64_t plane_seed =
          seed ^ (0x517cc1b727220a95ull * (pi * planes + s + 1));
      SampleRng rng(plane_seed);
      Vec u = rng.unit_vector(chart.base_dim());
      Vec v = rng.unit_vector(chart.base_dim());
      double kappa;
      try {
        kappa = sectional_curvature(chart, x, u, v);
      } catch (const Error&) {
        continue;  // parallel draw; skip
      }
      samples.push_back(Json{{"plane_seed", plane_seed}, {"K", kappa}});
      csv << pi << "," << plane_seed << "," << kappa << "\n";
      kmin = std::min(kmin, kappa);
      kmax = std::max(kmax, kappa);
      ksum += kappa;
      ++ksamples;
    }
    Json gm = Json::array();
    for (Eigen::Index i = 0; i < g.g.rows(); ++i) {
      Json row = Json::array();
      for (Eigen::Index j = 0; j < g.g.cols(); ++j) row.push_back(g.g(i, j));
      gm.push_back(std::move(row));
    }
    records.push_back(Json{{"x", json_from_vec(x)},
                           {"g_matrix", std::move(gm)},
                           {"sectional_samples", std::move(samples)},
                           {"residuals",
                            Json{{"r1", r.soldering}, {"r2", r.curvature}}}});
  }
  CommandResult out;
  out.report = Json{{"command", "curvature"},
                    {"algebra", alg.name()},
                    {"seed", seed},
                    {"points", npoints},
                    {"planes", planes},
                    {"summary",
                     Json{{"min_K", kmin},
                          {"max_K", kmax},
                          {"mean_K", ksamples ? ksum / ksamples : 0.0},
                          {"samples", ksamples}}},
                    {"records", std::move(records)}};
  out.files["sectional.csv"] = csv.str();
  out.exit_code = kPass;
  return out;
}

CommandResult run_geodesic(const Json& scenario, const Options& opt) {
  GaugeChart chart = scenario_chart(scenario);
  const Json& geo = require_field(scenario, "geodesic", "scenario");
  Vec start = vec_from_json(require_field(geo, "start", "geodesic"));
  Vec velocity = vec_from_json(require_field(geo, "velocity", "geodesic"));
  double time = require_field(geo, "time", "geodesic").get<double>();
  if (velocity.norm() == 0.0)
    throw SchemaError("geodesic: zero initial velocity");

  IntegratorConfig cfg;
  cfg.step = scenario_step(scenario, opt, 1e-3);

  std::vector<FlowSample> trace;
  Vec gen = shoot_generator(chart, start, velocity);
  BundlePoint p0{start, chart.algebra().group_identity()};
  std::string exit_status = "completed";
  double exit_time = time;
  try {
    flow_horizontal(chart, p0, gen, time, cfg, &trace, 1);
  } catch (const ChartExit& e) {
    exit_status = "chart-exit";
    exit_time = e.time;
  }

  // speed of the recorded base curve by a fourth-order difference
  // stencil, independent of the integrator's own velocity field
  const long nt = static_cast<long>(trace.size());
  std::vector<double> speed(nt, -1.0);
  for (long i = 2; i + 2 < nt; ++i) {
    double dt = (trace[i + 1].t - trace[i - 1].t) / 2.0;
    Vec v = (8.0 * (trace[i + 1].p.x - trace[i - 1].p.x) -
             (trace[i + 2].p.x - trace[i - 2].p.x)) /
            (12.0 * dt);
    Mat g = induced_metric(chart, trace[i].p.x).g;
    speed[i] = std::sqrt(v.dot(g * v));
  }
  double speed0 = -1.0, drift = 0.0, proj = 0.0;
  for (long i = 2; i + 2 < nt; ++i) {
    if (speed0 < 0.0) speed0 = speed[i];
    drift = std::max(drift, std::abs(speed[i] - speed0));
  }
  for (long i = 0; i < nt; ++i) proj = std::max(proj, trace[i].projection_residual);

  std::ostringstream csv;
  csv << "t";
  for (int d = 0; d < chart.base_dim(); ++d) csv << ",x" << d;
  int m = chart.algebra().rep_size();
  for (int r = 0; r < m; ++r)
    for (int c = 0; c < m; ++c) csv << ",k" << r << c << "_re,k" << r << c << "_im";
  csv << ",speed,projection_residual\n";
  for (long i = 0; i < nt; ++i) {
    const FlowSample& s = trace[i];
    csv << s.t;
    for (int d = 0; d < chart.base_dim(); ++d) csv << "," << s.p.x[d];
    for (int r = 0; r < m; ++r)
      for (int c = 0; c < m; ++c)
        csv << "," << s.p.k(r, c).real() << "," << s.p.k(r, c).imag();
    csv << "," << speed[i] << "," << s.projection_residual << "\n";
  }

  CommandResult out;
  const FlowSample& last = trace.back();
  out.report = Json{{"command", "geodesic"},
                    {"algebra", chart.algebra().name()},
                    {"step", cfg.step},
                    {"time", time},
                    {"status", exit_status},
                    {"exit_time", exit_time},
                    {"end_point", json_from_vec(last.p.x)},
                    {"speed_drift", drift},
                    {"projection_residual_max", proj},
                    {"samples", trace.size()}};
  out.files["trajectory.csv"] = csv.str();
  out.exit_code = exit_status == "completed" ? kPass : kFail;
  return out;
}

CommandResult run_curve(const Json& scenario, const Options& opt) {
  GaugeChart chart = scenario_chart(scenario);
  const LieAlgebra& alg = chart.algebra();
  const Json& cj = require_field(scenario, "curve", "scenario");
  CurveForm eta = curve_form_from_json(require_field(cj, "form", "curve"));
  if (eta.algebra_dim() != alg.dim())
    throw SchemaError("curve: form dimension does not match the chart algebra");

  IntegratorConfig cfg;
  cfg.step = scenario_step(scenario, opt, 1e-3);

  Json report{{"command", "curve"}, {"algebra", alg.name()}};

  // development along the given path (default: unit segment)
  std::vector<Complex> path = {Complex(0, 0), Complex(1, 0)};
  if (cj.contains("path")) {
    path.clear();
    for (const Json& z : cj.at("path")) path.push_back(complex_from_json(z));
    if (path.size() < 2) throw SchemaError("curve.path: need at least two points");
  }
  CMat dev = develop(alg, eta, path, cfg);
  report["develop"] = Json{{"endpoint", json_from_cmat(dev)}};
  if (eta.kind() == CurveForm::Kind::Scalar) {
    CMat closed = scalar_develop_closed_form(alg, eta.direction(), eta.zeta(), path);
    report["develop"]["closed_form_error"] = (dev - closed).norm();
  }

  // quadric and conformality diagnostics
  ComplexPoly quadric = quadric_polynomial(alg, eta);
  Json qc = Json::array();
  for (Eigen::Index i = 0; i < quadric.coeffs().size(); ++i)
    qc.push_back(Json::array(
        {quadric.coeffs()[i].real(), quadric.coeffs()[i].imag()}));
  double conf = 0.0;
  SampleRng rng(scenario_seed(scenario, opt));
  for (int i = 0; i < 32; ++i) {
    Complex z(rng.uniform(-0.9, 0.9), rng.uniform(-0.9, 0.9));
    conf = std::max(conf, conformality_residual(alg, eta, z));
  }
  report["quadric"] = Json{{"coefficients", std::move(qc)},
                           {"max_abs_coefficient", quadric.max_coeff_abs()}};
  report["conformality"] = Json{{"max_residual", conf}};

  // lattice condition and factorisation for scalar forms
  int exit_code = kPass;
  if (eta.kind() == CurveForm::Kind::Scalar && cj.contains("gamma")) {
    StabilizerGroup gamma = stabilizer_from_json(cj.at("gamma"));
    std::vector<Complex> periods;
    if (cj.contains("periods")) {
      for (const Json& w : cj.at("periods")) periods.push_back(complex_from_json(w));
    } else if (eta.surface().type == Surface::Type::Torus) {
      periods = torus_periods(eta.zeta(), eta.surface().tau);
    }
    Json wred = Json::array();
    LatticeCheck check = lattice_condition(alg, eta.direction(), periods, gamma);
    for (const PeriodWitness& w : check.witnesses) {
      Json entry{{"period", Json::array({w.period.real(), w.period.imag()})},
                 {"member", w.member == Tri::True     ? "true"
                            : w.member == Tri::False ? "false"
                                                      : "undecided"},
                 {"distance", w.distance}};
      Json word = Json::array();
      for (int s : w.word) word.push_back(s);
      entry["word"] = std::move(word);
      wred.push_back(std::move(entry));
    }
    Factorization fac = classify_scalar_form(alg, eta.direction(), periods, gamma);
    std::string verdict;
    switch (fac.kind) {
      case FactorKind::Constant: verdict = "constant"; break;
      case FactorKind::Elliptic: verdict = "elliptic"; break;
      case FactorKind::Rejected: verdict = "rejected"; break;
      case FactorKind::Undecided: verdict = "undecided"; break;
    }
    report["lattice"] = Json{
        {"satisfied", check.satisfied == Tri::True     ? "true"
                      : check.satisfied == Tri::False ? "false"
                                                       : "undecided"},
        {"witnesses", std::move(wred)},
        {"failing_period", check.failing_period}};
    report["factorization"] =
        Json{{"verdict", verdict},
             {"reason", fac.reason},
             {"basis", Json::array({Json::array({fac.basis[0].real(), fac.basis[0].imag()}),
                                    Json::array({fac.basis[1].real(), fac.basis[1].imag()})})}};
    if (fac.kind == FactorKind::Rejected || fac.kind == FactorKind::Undecided)
      exit_code = kFail;
  }

  CommandResult out;
  out.report = std::move(report);
  out.exit_code = exit_code;
  return out;
}

CommandResult run_command(const std::string& command, const Json& scenario,
                          const Options& opt) {
  try {
    if (command == "verify") return run_verify(scenario, opt);
    if (command == "curvature") return run_curvature(scenario, opt);
    if (command == "geodesic") return run_geodesic(scenario, opt);
    if (command == "curve") return run_curve(scenario, opt);
    throw SchemaError("unknown command '" + command + "'");
  } catch (const SchemaError& e) {
    CommandResult out;
    out.exit_code = kUsage;
    out.report = Json{{"error", e.what()}, {"kind", "schema"}};
    return out;
  } catch (const Error& e) {
    CommandResult out;
    out.exit_code = kNumeric;
    out.report = Json{{"error", e.what()}, {"kind", "numeric"}};
    return out;
  }
}

}  // namespace acpb::cli
