// Independent differential-geometry oracles built from the induced
// metric alone: Christoffel symbols by central differences, a geodesic
// integrator on (x, v), and the curvature tensor from the Christoffel
// field. These never touch the algebra-side formulas they are used to
// check.
#ifndef ACPB_TESTS_METRIC_ORACLE_HPP
#define ACPB_TESTS_METRIC_ORACLE_HPP

#include <functional>

#include "acpb/base_geometry.hpp"

namespace acpb::testing {

using MetricFn = std::function<Mat(const Vec&)>;

inline MetricFn metric_of(const GaugeChart& chart) {
  return [&chart](const Vec& x) { return induced_metric(chart, x).g; };
}

// Gamma[l](m,n) = Christoffel symbol of the second kind
inline std::vector<Mat> christoffel(const MetricFn& g, const Vec& x, double h = 1e-5) {
  const int n = static_cast<int>(x.size());
  std::vector<Mat> dg(n);
  for (int m = 0; m < n; ++m) {
    Vec e = Vec::Zero(n);
    e[m] = 1.0;
    dg[m] = (g(x + h * e) - g(x - h * e)) / (2.0 * h);
  }
  Mat ginv = g(x).inverse();
  std::vector<Mat> gamma(n, Mat::Zero(n, n));
  for (int l = 0; l < n; ++l)
    for (int m = 0; m < n; ++m)
      for (int p = 0; p < n; ++p) {
        double s = 0.0;
        for (int r = 0; r < n; ++r)
          s += ginv(l, r) * (dg[m](r, p) + dg[p](r, m) - dg[r](m, p));
        gamma[l](m, p) = 0.5 * s;
      }
  return gamma;
}

// classical fourth-order step on (x, v) with xdot = v,
// vdot^l = -Gamma^l_{mn} v^m v^n
inline Vec geodesic_oracle(const MetricFn& g, Vec x, Vec v, double t, double step,
                           double fd_h = 1e-5) {
  auto acc = [&](const Vec& xx, const Vec& vv) -> Vec {
    std::vector<Mat> gamma = christoffel(g, xx, fd_h);
    Vec a(xx.size());
    for (int l = 0; l < xx.size(); ++l) a[l] = -vv.dot(gamma[l] * vv);
    return a;
  };
  const double sign = t >= 0.0 ? 1.0 : -1.0;
  double total = std::abs(t), time = 0.0;
  while (time < total - 1e-12) {
    double h = std::min(step, total - time) * sign;
    Vec k1x = v, k1v = acc(x, v);
    Vec k2x = v + 0.5 * h * k1v, k2v = acc(x + 0.5 * h * k1x, Vec(v + 0.5 * h * k1v));
    Vec k3x = v + 0.5 * h * k2v, k3v = acc(x + 0.5 * h * k2x, Vec(v + 0.5 * h * k2v));
    Vec k4x = v + h * k3v, k4v = acc(x + h * k3x, Vec(v + h * k3v));
    x += (h / 6.0) * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
    v += (h / 6.0) * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
    time += std::abs(h);
  }
  return x;
}

// R^r_{smn} from finite differences of the Christoffel field
inline double sectional_oracle(const MetricFn& g, const Vec& x, const Vec& u,
                               const Vec& v, double h = 1e-4) {
  const int n = static_cast<int>(x.size());
  std::vector<Mat> gamma = christoffel(g, x, h);
  std::vector<std::vector<Mat>> dgamma(n);
  for (int m = 0; m < n; ++m) {
    Vec e = Vec::Zero(n);
    e[m] = 1.0;
    std::vector<Mat> gp = christoffel(g, Vec(x + h * e), h);
    std::vector<Mat> gm = christoffel(g, Vec(x - h * e), h);
    dgamma[m].resize(n);
    for (int l = 0; l < n; ++l) dgamma[m][l] = (gp[l] - gm[l]) / (2.0 * h);
  }
  // R(u,v)v contracted against u through the metric
  Mat gx = g(x);
  double num = 0.0;
  for (int r = 0; r < n; ++r) {
    double comp = 0.0;
    for (int s = 0; s < n; ++s)
      for (int m = 0; m < n; ++m)
        for (int p = 0; p < n; ++p) {
          double term = dgamma[m][r](p, s) - dgamma[p][r](m, s);
          for (int l = 0; l < n; ++l)
            term += gamma[r](m, l) * gamma[l](p, s) - gamma[r](p, l) * gamma[l](m, s);
          comp += term * u[m] * v[p] * v[s];
        }
    for (int q = 0; q < n; ++q) num += u[q] * gx(q, r) * comp;
  }
  double uu = u.dot(gx * u), vv = v.dot(gx * v), uv = u.dot(gx * v);
  return num / (uu * vv - uv * uv);
}

}  // namespace acpb::testing

#endif
