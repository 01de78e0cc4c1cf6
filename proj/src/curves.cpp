#include "acpb/curves.hpp"

#include <algorithm>
#include <cmath>

#include "acpb/matrix_functions.hpp"

namespace acpb {

namespace {
constexpr Complex kI{0.0, 1.0};
}

CurveForm CurveForm::polynomial(std::vector<CVec> coeffs, Surface surface) {
  if (coeffs.empty()) throw Error("CurveForm: polynomial form needs coefficients");
  CurveForm f;
  f.kind_ = Kind::Polynomial;
  f.dim_ = static_cast<int>(coeffs[0].size());
  for (const CVec& c : coeffs)
    if (c.size() != f.dim_) throw DimensionError("CurveForm: ragged coefficients");
  f.coeffs_ = std::move(coeffs);
  f.surface_ = surface;
  return f;
}

CurveForm CurveForm::scalar(CVec direction, ComplexPoly zeta, Surface surface) {
  CurveForm f;
  f.kind_ = Kind::Scalar;
  f.dim_ = static_cast<int>(direction.size());
  f.direction_ = std::move(direction);
  f.zeta_ = std::move(zeta);
  f.surface_ = surface;
  return f;
}

CVec CurveForm::mu(Complex z) const {
  if (kind_ == Kind::Scalar) return CVec(direction_ * zeta_.eval(z));
  CVec out = CVec::Zero(dim_);
  Complex zk = 1.0;
  for (const CVec& c : coeffs_) {
    out += zk * c;
    zk *= z;
  }
  return out;
}

ComplexPoly CurveForm::component(int i) const {
  if (kind_ == Kind::Scalar) {
    CVec scaled = zeta_.coeffs() * direction_[i];
    return ComplexPoly(scaled);
  }
  CVec c(coeffs_.size());
  for (size_t j = 0; j < coeffs_.size(); ++j) c[j] = coeffs_[j][i];
  return ComplexPoly(c);
}

CMat develop_along(const LieAlgebra& alg, const std::function<CMat(double)>& integrand,
                   double t0, double t1, const IntegratorConfig& cfg) {
  if (!(cfg.step > 0.0)) throw Error("develop_along: step must be positive");
  const double sign = t1 >= t0 ? 1.0 : -1.0;
  const double total = std::abs(t1 - t0);
  long nsteps = static_cast<long>(std::ceil(total / cfg.step - 1e-12));
  if (nsteps > cfg.max_steps) throw Error("develop_along: step budget exceeded");
  CMat g = alg.group_identity();
  auto rhs = [&](double t, const CMat& cur) -> CMat { return CMat(cur * integrand(t)); };
  double time = 0.0;
  for (long i = 0; i < nsteps; ++i) {
    double h = std::min(cfg.step, total - time) * sign;
    double t = t0 + sign * time;
    CMat k1 = rhs(t, g);
    CMat k2 = rhs(t + 0.5 * h, CMat(g + 0.5 * h * k1));
    CMat k3 = rhs(t + 0.5 * h, CMat(g + 0.5 * h * k2));
    CMat k4 = rhs(t + h, CMat(g + h * k3));
    g += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    time += std::abs(h);
    if (cfg.project) g = alg.project_to_complexified(g);
    if (!g.allFinite() || g.norm() > 1e12)
      throw ConvergenceError("develop_along: group factor blew up");
  }
  return g;
}

CMat develop(const LieAlgebra& alg, const CurveForm& eta,
             const std::vector<Complex>& path, const IntegratorConfig& cfg) {
  if (path.size() < 2) return alg.group_identity();
  if (eta.algebra_dim() != alg.dim())
    throw DimensionError("develop: form and algebra dimensions differ");
  CMat g = alg.group_identity();
  for (size_t seg = 0; seg + 1 < path.size(); ++seg) {
    Complex z0 = path[seg];
    Complex dz = path[seg + 1] - path[seg];
    auto integrand = [&](double t) -> CMat {
      return alg.matrix(CVec(eta.mu(z0 + t * dz) * dz));
    };
    g = g * develop_along(alg, integrand, 0.0, 1.0, cfg);
  }
  return g;
}

CMat scalar_develop_closed_form(const LieAlgebra& alg, const CVec& direction,
                                const ComplexPoly& zeta,
                                const std::vector<Complex>& path) {
  if (path.size() < 2) return alg.group_identity();
  ComplexPoly anti = zeta.antiderivative();
  Complex integral = anti.eval(path.back()) - anti.eval(path.front());
  return expm(alg.matrix(CVec(direction * integral)));
}

BundlePoint reconstruct_curve(const GaugeChart& chart, const BundlePoint& p0,
                              const CurveForm& eta, const std::vector<Complex>& path,
                              const IntegratorConfig& cfg) {
  CMat g = develop(chart.algebra(), eta, path, cfg);
  return complexified_action(chart, p0, g, cfg);
}

std::vector<Complex> torus_periods(const ComplexPoly& zeta, Complex tau) {
  ComplexPoly anti = zeta.antiderivative();
  return {anti.eval(1.0) - anti.eval(0.0), anti.eval(tau) - anti.eval(0.0)};
}

namespace {

struct BallElement {
  CMat m;
  Complex signature;  // trace; cheap rejection before the full distance
  std::vector<int> word;
};

struct GroupBall {
  std::vector<BallElement> elements;
  bool complete = false;  // the ball stabilised below the depth bound
};

GroupBall enumerate_ball(const LieAlgebra& alg, const StabilizerGroup& gamma) {
  GroupBall ball;
  const double dim_factor = std::sqrt(double(alg.rep_size()));
  ball.elements.push_back({alg.group_identity(), Complex(double(alg.rep_size())), {}});
  std::vector<CMat> steps;
  std::vector<int> labels;
  for (size_t i = 0; i < gamma.generators.size(); ++i) {
    const CMat& g = gamma.generators[i];
    if (alg.membership_residual_complexified(g) > 1e-6)
      throw MembershipError("StabilizerGroup: generator " + std::to_string(i) +
                            " fails the group residual");
    steps.push_back(g);
    labels.push_back(static_cast<int>(i) + 1);
    steps.push_back(g.partialPivLu().solve(alg.group_identity()));
    labels.push_back(-(static_cast<int>(i) + 1));
  }
  auto find_close = [&](const CMat& m, Complex sig) -> bool {
    for (const BallElement& e : ball.elements) {
      if (std::abs(e.signature - sig) > gamma.tolerance * dim_factor) continue;
      if ((e.m - m).norm() <= gamma.tolerance) return true;
    }
    return false;
  };
  size_t frontier_begin = 0;
  for (int depth = 0; depth < gamma.closure_depth; ++depth) {
    size_t frontier_end = ball.elements.size();
    bool grew = false;
    for (size_t e = frontier_begin; e < frontier_end; ++e) {
      for (size_t s = 0; s < steps.size(); ++s) {
        CMat m = ball.elements[e].m * steps[s];
        Complex sig = m.trace();
        if (find_close(m, sig)) continue;
        std::vector<int> word = ball.elements[e].word;
        word.push_back(labels[s]);
        ball.elements.push_back({std::move(m), sig, std::move(word)});
        grew = true;
        if (static_cast<long>(ball.elements.size()) > gamma.element_budget)
          return ball;  // budget exhausted, incomplete
      }
    }
    frontier_begin = frontier_end;
    if (!grew) {
      ball.complete = true;
      return ball;
    }
  }
  return ball;  // depth exhausted without stabilising
}

}  // namespace

LatticeCheck lattice_condition(const LieAlgebra& alg, const CVec& direction,
                               const std::vector<Complex>& periods,
                               const StabilizerGroup& gamma) {
  GroupBall ball = enumerate_ball(alg, gamma);
  LatticeCheck out;
  out.satisfied = Tri::True;
  for (size_t i = 0; i < periods.size(); ++i) {
    CMat target = expm(alg.matrix(CVec(direction * periods[i])));
    PeriodWitness w;
    w.period = periods[i];
    double best = std::numeric_limits<double>::infinity();
    const BallElement* match = nullptr;
    for (const BallElement& e : ball.elements) {
      double d = (e.m - target).norm();
      if (d < best) {
        best = d;
        match = &e;
      }
    }
    w.distance = best;
    if (match && best <= gamma.tolerance) {
      w.member = Tri::True;
      w.word = match->word;
    } else if (ball.complete) {
      w.member = Tri::False;
    } else {
      w.member = Tri::Undecided;
    }
    out.witnesses.push_back(std::move(w));
  }
  for (size_t i = 0; i < out.witnesses.size(); ++i) {
    if (out.witnesses[i].member == Tri::False) {
      out.satisfied = Tri::False;
      out.failing_period = static_cast<int>(i);
      return out;
    }
    if (out.witnesses[i].member == Tri::Undecided) out.satisfied = Tri::Undecided;
  }
  return out;
}

namespace {

using V2 = Eigen::Vector2d;

inline V2 to_v2(Complex z) { return V2(z.real(), z.imag()); }
inline Complex to_complex(const V2& v) { return Complex(v[0], v[1]); }
inline double det2(const V2& a, const V2& b) { return a[0] * b[1] - a[1] * b[0]; }

Complex canonical_sign(Complex b) {
  if (b.real() < -1e-12 || (std::abs(b.real()) <= 1e-12 && b.imag() < 0.0)) return -b;
  return b;
}

std::array<Complex, 2> gauss_reduce(V2 b1, V2 b2) {
  for (int iter = 0; iter < 64; ++iter) {
    if (b1.norm() > b2.norm()) std::swap(b1, b2);
    double mu = std::round(b2.dot(b1) / b1.squaredNorm());
    if (mu == 0.0) break;
    b2 -= mu * b1;
  }
  Complex c1 = canonical_sign(to_complex(b1));
  Complex c2 = canonical_sign(to_complex(b2));
  if (std::abs(c2) < std::abs(c1) ||
      (std::abs(std::abs(c2) - std::abs(c1)) < 1e-12 &&
       (c2.real() > c1.real() + 1e-12 ||
        (std::abs(c2.real() - c1.real()) <= 1e-12 && c2.imag() < c1.imag()))))
    std::swap(c1, c2);
  return {c1, c2};
}

// 1D commensurability by the Euclidean algorithm with tolerance:
// returns true (and the unit) when the reals are integer multiples of a
// common divisor, false when the iteration drives the remainders toward
// zero without terminating (dense subgroup of the line).
enum class LineClass { Discrete, Dense, Ambiguous };

LineClass classify_line(std::vector<double> values, double scale) {
  std::vector<double> basis;
  const double tol = 1e-9 * scale;
  for (double v : values) {
    v = std::abs(v);
    if (v <= tol) continue;
    for (int iter = 0; iter < 200; ++iter) {
      bool reduced = false;
      for (double b : basis) {
        double r = std::remainder(v, b);
        if (std::abs(r) < std::abs(v)) {
          v = std::abs(r);
          reduced = true;
        }
      }
      if (v <= tol) break;
      if (!reduced) break;
    }
    if (v <= tol) continue;
    // v is independent of the current basis: fold the basis through the
    // gcd iteration with v
    basis.push_back(v);
    for (int iter = 0; iter < 200 && basis.size() > 1; ++iter) {
      std::sort(basis.begin(), basis.end());
      double g = basis[0];
      std::vector<double> next = {g};
      bool changed = false;
      for (size_t i = 1; i < basis.size(); ++i) {
        double r = std::abs(std::remainder(basis[i], g));
        if (r > tol) {
          next.push_back(r);
          changed = true;
        } else if (std::abs(basis[i] - g) > tol) {
          changed = true;  // multiple folded away
        }
      }
      basis = std::move(next);
      if (!changed) break;
      if (basis[0] < 1e-7 * scale) return LineClass::Dense;
    }
  }
  if (basis.size() <= 1) return LineClass::Discrete;
  return LineClass::Ambiguous;
}

}  // namespace

Factorization classify_scalar_form(const LieAlgebra& alg, const CVec& direction,
                                   const std::vector<Complex>& periods,
                                   const StabilizerGroup& gamma) {
  Factorization out;
  LatticeCheck check = lattice_condition(alg, direction, periods, gamma);
  if (check.satisfied == Tri::False) {
    out.kind = FactorKind::Rejected;
    out.reason = "lattice condition fails at period index " +
                 std::to_string(check.failing_period);
    return out;
  }
  if (check.satisfied == Tri::Undecided) {
    out.kind = FactorKind::Undecided;
    out.reason = "lattice condition undecided (search budget exhausted)";
    return out;
  }

  double scale = 0.0;
  for (Complex w : periods) scale = std::max(scale, std::abs(w));
  std::vector<V2> ws;
  for (Complex w : periods)
    if (std::abs(w) > 1e-12 * std::max(1.0, scale)) ws.push_back(to_v2(w));
  if (ws.empty()) {
    out.kind = FactorKind::Constant;
    out.reason = "trivial period group";
    return out;
  }

  Eigen::MatrixXd m(2, ws.size());
  for (size_t i = 0; i < ws.size(); ++i) m.col(i) = ws[i];
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  double s0 = svd.singularValues()[0];
  double s1 = svd.singularValues().size() > 1 ? svd.singularValues()[1] : 0.0;
  if (s1 <= 1e-10 * s0) {
    // all periods on a real line through the origin: both the discrete
    // rank-one case and a dense line closure force a constant map
    V2 dir = ws[0] / ws[0].norm();
    std::vector<double> coords;
    for (const V2& w : ws) coords.push_back(w.dot(dir));
    switch (classify_line(coords, scale)) {
      case LineClass::Discrete:
        out.reason = "periods generate a discrete rank-one group";
        break;
      case LineClass::Dense:
        out.reason = "periods are dense on a real line";
        break;
      case LineClass::Ambiguous:
        out.reason = "periods lie on a real line (discreteness unresolved)";
        break;
    }
    out.kind = FactorKind::Constant;
    return out;
  }

  // genuine planar rank: sweep-refine a working basis. A sweep either
  // absorbs every period integrally (a lattice) or finds a fractional
  // remainder, and replacing a basis vector by the remainder at least
  // halves the covolume, so the iteration terminates: either the basis
  // stabilises (elliptic) or it shrinks through the discreteness
  // threshold (dense, hence constant).
  const double zero_tol = 1e-9 * scale;
  const double dense_tol = 1e-7 * scale;
  V2 b1 = ws[0], b2 = ws[0];
  double best = 0.0;
  for (size_t i = 0; i < ws.size(); ++i)
    for (size_t j = i + 1; j < ws.size(); ++j)
      if (std::abs(det2(ws[i], ws[j])) > best) {
        best = std::abs(det2(ws[i], ws[j]));
        b1 = ws[i];
        b2 = ws[j];
      }
  for (int sweep = 0; sweep < 120; ++sweep) {
    auto pair = gauss_reduce(b1, b2);
    b1 = to_v2(pair[0]);
    b2 = to_v2(pair[1]);
    if (std::min(b1.norm(), b2.norm()) < dense_tol) {
      out.kind = FactorKind::Constant;
      out.reason = "period vectors shrink without bound (dense subgroup)";
      return out;
    }
    Eigen::Matrix2d b;
    b.col(0) = b1;
    b.col(1) = b2;
    auto lu = b.partialPivLu();
    bool refined = false;
    for (const V2& w : ws) {
      V2 c = lu.solve(w);
      V2 frac = c - V2(std::round(c[0]), std::round(c[1]));
      V2 r = b * frac;
      if (r.norm() <= zero_tol) continue;
      // swap the remainder in against the slot with the larger
      // fractional coefficient; that multiplies the covolume by |frac|
      if (std::abs(frac[0]) >= std::abs(frac[1]))
        b1 = r;
      else
        b2 = r;
      refined = true;
      break;
    }
    if (!refined) {
      auto reduced = gauss_reduce(b1, b2);
      double d = std::abs(det2(to_v2(reduced[0]), to_v2(reduced[1])));
      if (d < 1e-8 * std::abs(reduced[0]) * std::abs(reduced[1])) {
        out.kind = FactorKind::Undecided;
        out.reason = "period matrix too ill-conditioned";
        return out;
      }
      out.kind = FactorKind::Elliptic;
      out.basis = reduced;
      out.reason = "periods generate a rank-two lattice";
      return out;
    }
  }
  out.kind = FactorKind::Undecided;
  out.reason = "period reduction did not stabilise";
  return out;
}

double holomorphic_type_residual(const LieAlgebra& alg, const RealFormSampler& sampler,
                                 Complex z) {
  CVec ex = sampler(z, 1.0, 0.0);
  CVec ey = sampler(z, 0.0, 1.0);
  return alg.norm(CVec(ey - kI * ex));
}

CVec projectivize(const CurveForm& eta, Complex z) {
  const int dim = eta.algebra_dim();
  std::vector<CVec> taylor(dim);
  double scale = 0.0;
  int maxlen = 0;
  for (int i = 0; i < dim; ++i) {
    taylor[i] = eta.component(i).taylor_at(z);
    scale = std::max(scale, taylor[i].cwiseAbs().maxCoeff());
    maxlen = std::max<int>(maxlen, static_cast<int>(taylor[i].size()));
  }
  if (scale <= 0.0) throw Error("projectivize: the form vanishes identically");
  const double tol = 1e-9 * scale;
  int order = maxlen;
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < taylor[i].size(); ++j)
      if (std::abs(taylor[i][j]) > tol) {
        order = std::min(order, j);
        break;
      }
  if (order >= maxlen) throw Error("projectivize: the form vanishes identically");
  CVec w(dim);
  for (int i = 0; i < dim; ++i)
    w[i] = order < taylor[i].size() ? taylor[i][order] : Complex(0.0);
  w /= w.norm();
  int lead = 0;
  double best = 0.0;
  for (int i = 0; i < dim; ++i)
    if (std::abs(w[i]) > best * (1.0 + 1e-12)) {
      best = std::abs(w[i]);
      lead = i;
    }
  w *= std::conj(w[lead]) / std::abs(w[lead]);
  return w;
}

double conformality_residual(const LieAlgebra& alg, const CurveForm& eta, Complex z) {
  return conformality_residual_direction(alg, eta, z, 1.0, 0.0);
}

double conformality_residual_direction(const LieAlgebra& alg, const CurveForm& eta,
                                       Complex z, double ux, double uy) {
  CVec m = eta.mu(z);
  Complex dir(ux, uy);
  Complex q = (m.transpose() * alg.metric().cast<Complex>() * m)(0, 0);
  return std::abs(std::imag(dir * dir * q));
}

Eigen::Matrix2d pullback_metric(const LieAlgebra& alg, const CurveForm& eta, Complex z) {
  CVec m = eta.mu(z);
  Vec re = m.real(), im = m.imag();
  Eigen::Matrix2d p;
  p(0, 0) = alg.inner(im, im);
  p(0, 1) = p(1, 0) = alg.inner(im, re);
  p(1, 1) = alg.inner(re, re);
  return p;
}

ComplexPoly quadric_polynomial(const LieAlgebra& alg, const CurveForm& eta) {
  if (eta.algebra_dim() != alg.dim())
    throw DimensionError("quadric_polynomial: dimension mismatch");
  ComplexPoly out;
  Mat g = alg.metric();
  for (int i = 0; i < alg.dim(); ++i)
    for (int j = 0; j < alg.dim(); ++j) {
      if (g(i, j) == 0.0) continue;
      ComplexPoly term = eta.component(i) * eta.component(j);
      CVec scaled = term.coeffs() * Complex(g(i, j));
      out = out + ComplexPoly(scaled);
    }
  return out;
}

}  // namespace acpb
