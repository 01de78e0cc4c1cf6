#include "acpb/models.hpp"

#include <cmath>

namespace acpb {

Mat hat(const Eigen::Vector3d& x) {
  Mat m(3, 3);
  m << 0.0, -x[2], x[1], x[2], 0.0, -x[0], -x[1], x[0], 0.0;
  return m;
}

Eigen::Vector3d vee(const Mat& m) {
  return Eigen::Vector3d(m(2, 1), m(0, 2), m(1, 0));
}

GaugeChart hyperbolic_frame_chart(double halfwidth, double height_min,
                                  double height_max) {
  if (!(height_min > 0.0 && height_max > height_min))
    throw Error("hyperbolic_frame_chart: need 0 < height_min < height_max");
  auto algebra = std::make_shared<const LieAlgebra>(LieAlgebra::so3());
  Vec lo(3), hi(3);
  lo << -halfwidth, -halfwidth, height_min;
  hi << halfwidth, halfwidth, height_max;

  // Levi-Civita connection of (dx^2 + dy^2 + dt^2)/t^2 in the frame
  // e_i = t d/dx_i, expressed through the cross-product basis:
  //   A(d/dx) = -(1/t) L_2,  A(d/dy) = (1/t) L_1,  A(d/dt) = 0,
  // and the soldering frame is (1/t) * identity.
  auto connection = [](const Vec& x) {
    Mat a = Mat::Zero(3, 3);
    a(1, 0) = -1.0 / x[2];
    a(0, 1) = 1.0 / x[2];
    return a;
  };
  auto soldering = [](const Vec& x) { return Mat((1.0 / x[2]) * Mat::Identity(3, 3)); };
  auto connection_jac = [](const Vec& x) {
    std::vector<Mat> d(3, Mat::Zero(3, 3));
    double it2 = 1.0 / (x[2] * x[2]);
    d[2](1, 0) = it2;
    d[2](0, 1) = -it2;
    return d;
  };
  auto soldering_jac = [](const Vec& x) {
    std::vector<Mat> d(3, Mat::Zero(3, 3));
    d[2] = -(1.0 / (x[2] * x[2])) * Mat::Identity(3, 3);
    return d;
  };
  return GaugeChart(algebra, lo, hi, connection, soldering, connection_jac,
                    soldering_jac);
}

namespace {

constexpr Complex kI{0.0, 1.0};

// phi(B) = sum_m (-B)^m / (m+1)!  (= (1 - exp(-B)) B^{-1} away from the
// kernel), together with its directional derivatives in x where
// B = i ad_x is linear in x. Terms are accumulated until they fall
// below machine precision.
struct MaurerCartanSeries {
  explicit MaurerCartanSeries(std::shared_ptr<const LieAlgebra> alg)
      : algebra(std::move(alg)) {
    for (int j = 0; j < algebra->dim(); ++j) {
      Vec e = Vec::Zero(algebra->dim());
      e[j] = 1.0;
      directions.push_back(kI * algebra->ad(e).cast<Complex>());
    }
  }

  CMat value(const Vec& x) const {
    const int n = algebra->dim();
    CMat b = CMat::Zero(n, n);
    for (int j = 0; j < n; ++j) b += x[j] * directions[j];
    CMat term = CMat::Identity(n, n);
    CMat sum = term;
    for (int m = 1; m < 80; ++m) {
      term = term * (-b) / static_cast<double>(m + 1);
      sum += term;
      if (term.norm() < 1e-18 * std::max(1.0, sum.norm())) break;
    }
    return sum;
  }

  std::vector<CMat> jacobian(const Vec& x) const {
    const int n = algebra->dim();
    CMat b = CMat::Zero(n, n);
    for (int j = 0; j < n; ++j) b += x[j] * directions[j];
    // powers of (-b)
    std::vector<CMat> pw = {CMat::Identity(n, n)};
    double scale = std::max(1.0, b.norm());
    double factorial = 1.0;
    int top = 1;
    for (int m = 1; m < 80; ++m) {
      pw.push_back(pw.back() * (-b));
      factorial *= (m + 1);
      top = m;
      if (std::pow(scale, m) / factorial < 1e-18) break;
    }
    std::vector<CMat> out(n, CMat::Zero(n, n));
    for (int mu = 0; mu < n; ++mu) {
      CMat dmu = CMat::Zero(n, n);
      double fact = 1.0;  // (m+1)!
      for (int m = 1; m <= top; ++m) {
        fact *= (m + 1);
        CMat inner = CMat::Zero(n, n);
        for (int a = 0; a + 1 <= m; ++a)
          inner += pw[a] * (-directions[mu]) * pw[m - 1 - a];
        dmu += inner / fact;
      }
      out[mu] = dmu;
    }
    return out;
  }

  std::shared_ptr<const LieAlgebra> algebra;
  std::vector<CMat> directions;
};

}  // namespace

GaugeChart homogeneous_chart(const LieAlgebra& algebra, double halfwidth) {
  auto alg = std::make_shared<const LieAlgebra>(algebra);
  auto series = std::make_shared<MaurerCartanSeries>(alg);
  const int n = alg->dim();
  Vec lo = Vec::Constant(n, -halfwidth);
  Vec hi = Vec::Constant(n, halfwidth);

  auto connection = [series](const Vec& x) { return Mat(-series->value(x).imag()); };
  auto soldering = [series](const Vec& x) { return Mat(-series->value(x).real()); };
  auto connection_jac = [series, n](const Vec& x) {
    std::vector<CMat> d = series->jacobian(x);
    std::vector<Mat> out(n);
    for (int mu = 0; mu < n; ++mu) out[mu] = -d[mu].imag();
    return out;
  };
  auto soldering_jac = [series, n](const Vec& x) {
    std::vector<CMat> d = series->jacobian(x);
    std::vector<Mat> out(n);
    for (int mu = 0; mu < n; ++mu) out[mu] = -d[mu].real();
    return out;
  };
  return GaugeChart(alg, lo, hi, connection, soldering, connection_jac, soldering_jac);
}

GaugeChart torus_chart(int n, const AdTwoForm& curvature, double halfwidth) {
  if (curvature.base_dim() != n) throw DimensionError("torus_chart: curvature arity");
  auto alg = std::make_shared<const LieAlgebra>(LieAlgebra::torus(n));
  Vec lo = Vec::Constant(n, -halfwidth);
  Vec hi = Vec::Constant(n, halfwidth);
  auto f = std::make_shared<AdTwoForm>(curvature);

  // linear gauge A_nu = (1/2) sum_mu x^mu F_{mu nu}
  auto connection = [f, n](const Vec& x) {
    Mat a = Mat::Zero(n, n);
    for (int nu = 0; nu < n; ++nu) {
      Vec col = Vec::Zero(n);
      for (int mu = 0; mu < n; ++mu) col += 0.5 * x[mu] * (*f)(mu, nu);
      a.col(nu) = col;
    }
    return a;
  };
  auto soldering = [n](const Vec&) { return Mat(Mat::Identity(n, n)); };
  auto connection_jac = [f, n](const Vec&) {
    std::vector<Mat> d(n, Mat::Zero(n, n));
    for (int mu = 0; mu < n; ++mu)
      for (int nu = 0; nu < n; ++nu) d[mu].col(nu) = 0.5 * (*f)(mu, nu);
    return d;
  };
  auto soldering_jac = [n](const Vec&) { return std::vector<Mat>(n, Mat::Zero(n, n)); };
  return GaugeChart(alg, lo, hi, connection, soldering, connection_jac, soldering_jac);
}

GaugeChart torus_chart_flat(int n, double halfwidth) {
  return torus_chart(n, AdTwoForm(n, n), halfwidth);
}

GaugeChart model_by_name(const std::string& name) {
  if (name == "hyperbolic3") return hyperbolic_frame_chart();
  if (name.rfind("homog:", 0) == 0)
    return homogeneous_chart(LieAlgebra::builtin(name.substr(6)));
  if (name.rfind("abelian:", 0) == 0) return torus_chart_flat(std::stoi(name.substr(8)));
  throw SchemaError("unknown model '" + name + "'");
}

}  // namespace acpb
