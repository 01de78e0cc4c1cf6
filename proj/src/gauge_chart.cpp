#include "acpb/gauge_chart.hpp"

#include <cmath>

#include "acpb/matrix_functions.hpp"

namespace acpb {

namespace {

std::vector<Mat> numeric_jacobian(const GaugeChart::FieldFn& f, const Vec& x,
                                  const DerivConfig& cfg) {
  const int n = static_cast<int>(x.size());
  std::vector<Mat> out(n);
  for (int mu = 0; mu < n; ++mu) {
    Vec e = Vec::Zero(n);
    e[mu] = 1.0;
    auto central = [&](double h) -> Mat {
      return (f(x + h * e) - f(x - h * e)) / (2.0 * h);
    };
    Mat d = central(cfg.step);
    if (cfg.richardson) d = (4.0 * central(cfg.step / 2.0) - d) / 3.0;
    out[mu] = d;
  }
  return out;
}

Vec compact_log_coords(const LieAlgebra& alg, const CMat& m) {
  CVec z = group_log(alg, m);
  return z.real();
}

}  // namespace

GaugeChart::GaugeChart(std::shared_ptr<const LieAlgebra> algebra, Vec lower, Vec upper,
                       FieldFn connection, FieldFn soldering,
                       JacobianFn connection_jacobian, JacobianFn soldering_jacobian,
                       DerivConfig deriv)
    : algebra_(std::move(algebra)),
      lower_(std::move(lower)),
      upper_(std::move(upper)),
      connection_(std::move(connection)),
      soldering_(std::move(soldering)),
      connection_jac_(std::move(connection_jacobian)),
      soldering_jac_(std::move(soldering_jacobian)),
      deriv_(deriv) {
  if (!algebra_) throw Error("GaugeChart: null algebra");
  if (lower_.size() != upper_.size() || lower_.size() == 0)
    throw DimensionError("GaugeChart: malformed domain box");
  if (static_cast<int>(lower_.size()) != algebra_->dim())
    throw DimensionError(
        "GaugeChart: base dimension must equal the algebra dimension");
  if ((upper_ - lower_).minCoeff() <= 0.0)
    throw Error("GaugeChart: empty domain box");
  if (bool(connection_jac_) != bool(soldering_jac_))
    throw Error("GaugeChart: supply analytic derivatives for both fields or neither");
}

bool GaugeChart::contains(const Vec& x, double margin) const {
  if (x.size() != lower_.size()) return false;
  for (Eigen::Index i = 0; i < x.size(); ++i)
    if (x[i] < lower_[i] + margin || x[i] > upper_[i] - margin) return false;
  return true;
}

void GaugeChart::require_inside(const Vec& x, double margin) const {
  if (!contains(x, margin)) throw ChartExit("point outside chart domain");
}

Mat GaugeChart::connection_at(const Vec& x) const {
  Mat a = connection_(x);
  if (a.rows() != algebra_->dim() || a.cols() != base_dim())
    throw DimensionError("GaugeChart: connection field has wrong shape");
  return a;
}

Mat GaugeChart::soldering_at(const Vec& x) const {
  Mat s = soldering_(x);
  if (s.rows() != algebra_->dim() || s.cols() != base_dim())
    throw DimensionError("GaugeChart: soldering field has wrong shape");
  return s;
}

std::vector<Mat> GaugeChart::connection_jacobian(const Vec& x) const {
  if (connection_jac_) return connection_jac_(x);
  return numeric_jacobian(connection_, x, deriv_);
}

std::vector<Mat> GaugeChart::soldering_jacobian(const Vec& x) const {
  if (soldering_jac_) return soldering_jac_(x);
  return numeric_jacobian(soldering_, x, deriv_);
}

GaugeChart GaugeChart::restricted(Vec lower, Vec upper) const {
  return GaugeChart(algebra_, std::move(lower), std::move(upper), connection_,
                    soldering_, connection_jac_, soldering_jac_, deriv_);
}

double GaugeChart::soldering_condition(const Vec& x) const {
  return condition_number(soldering_at(x));
}

Mat GaugeChart::soldering_checked(const Vec& x, double cond_limit) const {
  Mat s = soldering_at(x);
  double cond = condition_number(s);
  if (!(cond < cond_limit))
    throw SingularFrame("soldering frame is singular at the requested point (cond " +
                        std::to_string(cond) + ")");
  return s;
}

TangentVector horizontal_vector(const Vec& h, int algebra_dim) {
  return {h, Vec::Zero(algebra_dim)};
}

TangentVector vertical_vector(int base_dim, const Vec& x) {
  return {Vec::Zero(base_dim), x};
}

void require_point(const GaugeChart& chart, const BundlePoint& p, double membership_tol) {
  chart.require_inside(p.x);
  double res = chart.algebra().membership_residual(p.k);
  if (res > membership_tol)
    throw MembershipError("bundle point fibre factor off the group (residual " +
                          std::to_string(res) + ")");
}

AdTwoForm::AdTwoForm(int base_dim, int algebra_dim)
    : n_(base_dim), dim_(algebra_dim),
      packed_(static_cast<size_t>(base_dim) * (base_dim - 1) / 2, Vec::Zero(algebra_dim)) {}

namespace {
inline int pair_index(int n, int mu, int nu) {
  // mu < nu assumed
  return mu * (2 * n - mu - 1) / 2 + (nu - mu - 1);
}
}  // namespace

Vec AdTwoForm::operator()(int mu, int nu) const {
  if (mu == nu) return Vec::Zero(dim_);
  if (mu < nu) return packed_[pair_index(n_, mu, nu)];
  return -packed_[pair_index(n_, nu, mu)];
}

void AdTwoForm::set(int mu, int nu, const Vec& value) {
  if (mu == nu) throw Error("AdTwoForm: diagonal components vanish");
  if (mu < nu)
    packed_[pair_index(n_, mu, nu)] = value;
  else
    packed_[pair_index(n_, nu, mu)] = -value;
}

Vec AdTwoForm::contract(const Vec& u, const Vec& v) const {
  Vec out = Vec::Zero(dim_);
  for (int mu = 0; mu < n_; ++mu)
    for (int nu = mu + 1; nu < n_; ++nu)
      out += (u[mu] * v[nu] - u[nu] * v[mu]) * packed_[pair_index(n_, mu, nu)];
  return out;
}

double AdTwoForm::max_norm(const LieAlgebra& alg) const {
  double r = 0.0;
  for (const Vec& c : packed_) r = std::max(r, alg.norm(c));
  return r;
}

AdTwoForm curvature_form(const GaugeChart& chart, const Vec& x) {
  chart.require_inside(x);
  const LieAlgebra& alg = chart.algebra();
  const int n = chart.base_dim();
  Mat a = chart.connection_at(x);
  std::vector<Mat> da = chart.connection_jacobian(x);
  AdTwoForm f(n, alg.dim());
  for (int mu = 0; mu < n; ++mu)
    for (int nu = mu + 1; nu < n; ++nu)
      f.set(mu, nu,
            Vec(da[mu].col(nu) - da[nu].col(mu) + alg.bracket(Vec(a.col(mu)), Vec(a.col(nu)))));
  return f;
}

AdTwoForm soldering_exterior_derivative(const GaugeChart& chart, const Vec& x) {
  chart.require_inside(x);
  const LieAlgebra& alg = chart.algebra();
  const int n = chart.base_dim();
  Mat a = chart.connection_at(x);
  Mat s = chart.soldering_at(x);
  std::vector<Mat> ds = chart.soldering_jacobian(x);
  AdTwoForm d(n, alg.dim());
  for (int mu = 0; mu < n; ++mu)
    for (int nu = mu + 1; nu < n; ++nu)
      d.set(mu, nu,
            Vec(ds[mu].col(nu) - ds[nu].col(mu) +
                alg.bracket(Vec(a.col(mu)), Vec(s.col(nu))) -
                alg.bracket(Vec(a.col(nu)), Vec(s.col(mu)))));
  return d;
}

IntegrabilityResiduals integrability_residuals(const GaugeChart& chart, const Vec& x) {
  const LieAlgebra& alg = chart.algebra();
  const int n = chart.base_dim();
  AdTwoForm d = soldering_exterior_derivative(chart, x);
  AdTwoForm f = curvature_form(chart, x);
  Mat s = chart.soldering_at(x);
  double r2 = 0.0;
  for (int mu = 0; mu < n; ++mu)
    for (int nu = mu + 1; nu < n; ++nu)
      r2 = std::max(r2, alg.norm(Vec(f(mu, nu) -
                                     alg.bracket(Vec(s.col(mu)), Vec(s.col(nu))))));
  return {d.max_norm(alg), r2};
}

TangentVector apply_complex_structure(const GaugeChart& chart, const BundlePoint& p,
                                      const TangentVector& v) {
  const LieAlgebra& alg = chart.algebra();
  Mat s = chart.soldering_checked(p.x);
  Vec twisted = ad_action(alg, p.k, v.vertical);
  Vec new_horizontal = -s.partialPivLu().solve(twisted);
  Vec new_vertical = ad_action(alg, CMat(p.k.adjoint()), Vec(s * v.horizontal));
  return {new_horizontal, new_vertical};
}

double tangent_norm(const GaugeChart& chart, const BundlePoint& p,
                    const TangentVector& v) {
  const LieAlgebra& alg = chart.algebra();
  Mat s = chart.soldering_at(p.x);
  Vec image = s * v.horizontal;  // algebra image of the horizontal part
  return std::sqrt(alg.inner(image, image) + alg.inner(v.vertical, v.vertical));
}

TangentVector nijenhuis_closed_form_section(const GaugeChart& chart, const Vec& x,
                                            const TangentVector& v,
                                            const TangentVector& w) {
  const LieAlgebra& alg = chart.algebra();
  Mat s = chart.soldering_checked(x);
  auto lu = s.partialPivLu();
  AdTwoForm f = curvature_form(chart, x);
  AdTwoForm d = soldering_exterior_derivative(chart, x);

  const Vec& x1 = v.vertical;
  const Vec& x2 = w.vertical;
  const Vec& h1 = v.horizontal;
  const Vec& h2 = w.horizontal;
  Vec a = lu.solve(x1);
  Vec b = lu.solve(x2);

  // vertical-vertical block
  Vec horizontal = -lu.solve(d.contract(a, b));
  Vec vertical = alg.bracket(x1, x2) - f.contract(a, b);
  // mixed blocks
  horizontal += lu.solve(Vec(f.contract(a, h2) - alg.bracket(x1, Vec(s * h2))));
  vertical += -d.contract(a, h2);
  horizontal -= lu.solve(Vec(f.contract(b, h1) - alg.bracket(x2, Vec(s * h1))));
  vertical -= -d.contract(b, h1);
  // horizontal-horizontal block
  horizontal += lu.solve(d.contract(h1, h2));
  vertical += f.contract(h1, h2) - alg.bracket(Vec(s * h1), Vec(s * h2));

  return {std::move(horizontal), std::move(vertical)};
}

TangentVector nijenhuis_closed_form_general(const GaugeChart& chart,
                                            const BundlePoint& p,
                                            const TangentVector& v,
                                            const TangentVector& w) {
  const LieAlgebra& alg = chart.algebra();
  // pull both arguments back to the identity fibre point (the tensor is
  // equivariant, so we compute there and push the result forward)
  TangentVector ve{v.horizontal, ad_action(alg, p.k, v.vertical)};
  TangentVector we{w.horizontal, ad_action(alg, p.k, w.vertical)};
  TangentVector n = nijenhuis_closed_form_section(chart, p.x, ve, we);
  n.vertical = ad_action(alg, CMat(p.k.adjoint()), n.vertical);
  return n;
}

TangentVector nijenhuis_closed_form(const GaugeChart& chart, const BundlePoint& p,
                                    const Vec& gen_x, const Vec& gen_y) {
  const int n = chart.base_dim();
  return nijenhuis_closed_form_general(chart, p, vertical_vector(n, gen_x),
                                       vertical_vector(n, gen_y));
}

namespace {

// Finite-difference machinery around a fixed bundle point. Coordinates
// on U x K are (x, xi) with the fibre parameterised as k0 exp(xi).
class CoordFrame {
 public:
  CoordFrame(const GaugeChart& chart, BundlePoint p0, double delta)
      : chart_(chart), alg_(chart.algebra()), p0_(std::move(p0)), delta_(delta),
        n_(chart.base_dim()) {}

  // coordinates hold the absolute base point in the head and the
  // fibre exponent relative to p0.k in the tail
  Vec center() const {
    Vec c = Vec::Zero(2 * n_);
    c.head(n_) = p0_.x;
    return c;
  }

  BundlePoint point(const Vec& c) const {
    Vec x = c.head(n_);
    chart_.require_inside(x);
    CMat k = p0_.k * expm(alg_.matrix(Vec(c.tail(n_))));
    return {std::move(x), std::move(k)};
  }

  // coordinate velocity of a curve through point(c) with the given
  // split tangent; the fibre rate is taken by central differences of
  // the exact group flow
  Vec tangent_to_coord(const Vec& c, const BundlePoint& p, const TangentVector& t) const {
    Vec a_of_h = chart_.connection_at(p.x) * t.horizontal;
    CMat omega = alg_.matrix(t.vertical) -
                 p.k.adjoint() * alg_.matrix(a_of_h) * p.k;
    CMat e = expm(alg_.matrix(Vec(c.tail(n_))));
    Vec xi_plus = compact_log_coords(alg_, CMat(e * expm(CMat(delta_ * omega))));
    Vec xi_minus = compact_log_coords(alg_, CMat(e * expm(CMat(-delta_ * omega))));
    Vec out(2 * n_);
    out.head(n_) = t.horizontal;
    out.tail(n_) = (xi_plus - xi_minus) / (2.0 * delta_);
    return out;
  }

  // exact conversion at the centre (xi = 0)
  TangentVector coord_to_tangent_center(const Vec& cdot) const {
    Vec h = cdot.head(n_);
    Vec xidot = cdot.tail(n_);
    Vec a_of_h = chart_.connection_at(p0_.x) * h;
    Vec vertical = xidot + ad_action(alg_, CMat(p0_.k.adjoint()), a_of_h);
    return {std::move(h), std::move(vertical)};
  }

  Vec tangent_to_coord_center(const TangentVector& t) const {
    Vec a_of_h = chart_.connection_at(p0_.x) * t.horizontal;
    Vec out(2 * n_);
    out.head(n_) = t.horizontal;
    out.tail(n_) = t.vertical - ad_action(alg_, CMat(p0_.k.adjoint()), a_of_h);
    return out;
  }

  using FieldFn = std::function<Vec(const Vec&)>;

  // the field with constant split coefficients (h, x)
  FieldFn constant_field(TangentVector t) const {
    return [this, t = std::move(t)](const Vec& c) {
      return tangent_to_coord(c, point(c), t);
    };
  }

  // pointwise image of a constant field under the complex structure
  FieldFn structure_image_field(TangentVector t) const {
    return [this, t = std::move(t)](const Vec& c) {
      BundlePoint p = point(c);
      return tangent_to_coord(c, p, apply_complex_structure(chart_, p, t));
    };
  }

  Vec fd_bracket(const FieldFn& f, const FieldFn& g, const Vec& c) const {
    Vec fc = f(c);
    Vec gc = g(c);
    Vec dg = (g(c + delta_ * fc) - g(c - delta_ * fc)) / (2.0 * delta_);
    Vec df = (f(c + delta_ * gc) - f(c - delta_ * gc)) / (2.0 * delta_);
    return dg - df;
  }

 private:
  const GaugeChart& chart_;
  const LieAlgebra& alg_;
  BundlePoint p0_;
  double delta_;
  int n_;
};

}  // namespace

TangentVector nijenhuis_finite_difference_general(const GaugeChart& chart,
                                                  const BundlePoint& p,
                                                  const TangentVector& v,
                                                  const TangentVector& w, double h) {
  if (!(h > 0.0)) throw Error("nijenhuis_finite_difference: step must be positive");
  require_point(chart, p);
  CoordFrame frame(chart, p, h);
  auto fv = frame.constant_field(v);
  auto fw = frame.constant_field(w);
  auto jfv = frame.structure_image_field(v);
  auto jfw = frame.structure_image_field(w);
  Vec c0 = frame.center();

  Vec term = frame.fd_bracket(jfv, jfw, c0) - frame.fd_bracket(fv, fw, c0);
  TangentVector mixed1 = frame.coord_to_tangent_center(frame.fd_bracket(fv, jfw, c0));
  TangentVector mixed2 = frame.coord_to_tangent_center(frame.fd_bracket(jfv, fw, c0));
  Vec jterm = frame.tangent_to_coord_center(apply_complex_structure(chart, p, mixed1)) +
              frame.tangent_to_coord_center(apply_complex_structure(chart, p, mixed2));
  return frame.coord_to_tangent_center(Vec(term - jterm));
}

TangentVector nijenhuis_finite_difference(const GaugeChart& chart, const BundlePoint& p,
                                          const Vec& gen_x, const Vec& gen_y, double h) {
  const int n = chart.base_dim();
  return nijenhuis_finite_difference_general(chart, p, vertical_vector(n, gen_x),
                                             vertical_vector(n, gen_y), h);
}

TangentVector fundamental_bracket_fd(const GaugeChart& chart, const BundlePoint& p,
                                     const Vec& gen_x, const Vec& gen_y, double h) {
  require_point(chart, p);
  CoordFrame frame(chart, p, h);
  const int n = chart.base_dim();
  auto fx = frame.constant_field(vertical_vector(n, gen_x));
  auto fy = frame.constant_field(vertical_vector(n, gen_y));
  return frame.coord_to_tangent_center(frame.fd_bracket(fx, fy, frame.center()));
}

}  // namespace acpb
