#include <doctest.h>

#include "acpb/lie_algebra.hpp"
#include "acpb/matrix_functions.hpp"
#include "acpb/models.hpp"
#include "acpb/sampling.hpp"

using namespace acpb;

namespace {
const double kSqrt2 = std::sqrt(2.0);

Vec basis_vec(int dim, int i) {
  Vec e = Vec::Zero(dim);
  e[i] = 1.0;
  return e;
}

CMat random_su2(SampleRng& rng) {
  Vec x = rng.vector(3, -1.5, 1.5);
  return group_exp(LieAlgebra::su2(), x);
}

CMat random_so3(SampleRng& rng) {
  Vec x = rng.vector(3, -1.5, 1.5);
  return group_exp(LieAlgebra::so3(), x);
}
}  // namespace

TEST_CASE("built-in algebras validate exactly") {
  for (const auto& alg : {LieAlgebra::su2(), LieAlgebra::so3(), LieAlgebra::torus(3)}) {
    CHECK(alg.antisymmetry_residual() < 1e-15);
    CHECK(alg.jacobi_residual() < 1e-15);
    CHECK(alg.metric_invariance_residual() < 1e-15);
  }
}

TEST_CASE("su2 bracket follows the epsilon relation") {
  LieAlgebra su2 = LieAlgebra::su2();
  Vec b12 = su2.bracket(basis_vec(3, 0), basis_vec(3, 1));
  CHECK((b12 - kSqrt2 * basis_vec(3, 2)).norm() == doctest::Approx(0.0).epsilon(1e-15));
  // matches the matrix commutator in the defining representation
  CMat comm = su2.matrix(basis_vec(3, 0)) * su2.matrix(basis_vec(3, 1)) -
              su2.matrix(basis_vec(3, 1)) * su2.matrix(basis_vec(3, 0));
  CHECK((comm - su2.matrix(b12)).norm() < 1e-14);
}

TEST_CASE("bracket of an element with itself vanishes") {
  LieAlgebra su2 = LieAlgebra::su2();
  SampleRng rng(7);
  Vec x = rng.vector(3, -2.0, 2.0);
  CHECK(su2.bracket(x, x).norm() == 0.0);
}

TEST_CASE("so3 bracket equals the commutator of cross-product matrices") {
  LieAlgebra so3 = LieAlgebra::so3();
  Mat l1 = hat(Eigen::Vector3d::UnitX());
  Mat l2 = hat(Eigen::Vector3d::UnitY());
  Mat comm = l1 * l2 - l2 * l1;
  Vec b = so3.bracket(basis_vec(3, 0), basis_vec(3, 1));
  CHECK((so3.matrix(b).real() - comm).norm() < 1e-15);
  CHECK((b - basis_vec(3, 2)).norm() < 1e-15);
}

TEST_CASE("metric: su2 basis orthonormal under -tr, so3 under -tr/2") {
  LieAlgebra su2 = LieAlgebra::su2();
  LieAlgebra so3 = LieAlgebra::so3();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      Complex tr_su2 = (su2.matrix(basis_vec(3, i)) * su2.matrix(basis_vec(3, j))).trace();
      CHECK(std::abs(-tr_su2.real() - (i == j ? 1.0 : 0.0)) < 1e-15);
      CHECK(std::abs(tr_su2.imag()) < 1e-15);
      Complex tr_so3 = (so3.matrix(basis_vec(3, i)) * so3.matrix(basis_vec(3, j))).trace();
      CHECK(std::abs(-0.5 * tr_so3.real() - (i == j ? 1.0 : 0.0)) < 1e-15);
      CHECK(su2.inner(basis_vec(3, i), basis_vec(3, j)) ==
            doctest::Approx(i == j ? 1.0 : 0.0));
    }
}

TEST_CASE("metric invariance under the bracket holds for random triples") {
  SampleRng rng(11);
  for (const auto& alg : {LieAlgebra::su2(), LieAlgebra::so3()}) {
    double worst = 0.0;
    for (int it = 0; it < 1000; ++it) {
      Vec x = rng.vector(3, -1.0, 1.0), y = rng.vector(3, -1.0, 1.0),
          z = rng.vector(3, -1.0, 1.0);
      worst = std::max(worst, std::abs(alg.inner(alg.bracket(z, x), y) +
                                       alg.inner(x, alg.bracket(z, y))));
    }
    CHECK(worst < 1e-14);
  }
}

TEST_CASE("complexified inner product is sesquilinear and restricts to the real one") {
  LieAlgebra su2 = LieAlgebra::su2();
  SampleRng rng(13);
  Vec xr = rng.vector(3, -1.0, 1.0), yr = rng.vector(3, -1.0, 1.0);
  CVec x = xr.cast<Complex>(), y = yr.cast<Complex>();
  CHECK(std::abs(su2.inner(x, y) - Complex(su2.inner(xr, yr))) < 1e-14);
  Complex a(0.3, -1.2);
  CHECK(std::abs(su2.inner(CVec(a * x), y) - std::conj(a) * su2.inner(x, y)) < 1e-14);
  CHECK(std::abs(su2.inner(x, CVec(a * y)) - a * su2.inner(x, y)) < 1e-14);
}

TEST_CASE("exponential: identity at zero and diagonal oracle") {
  LieAlgebra su2 = LieAlgebra::su2();
  CHECK((group_exp(su2, Vec(Vec::Zero(3))) - CMat::Identity(2, 2)).norm() < 1e-15);

  // exponent diag(i pi, -i pi) comes from the third basis direction
  // scaled by -pi sqrt(2); its exponential is minus the identity
  Vec x = -M_PI * kSqrt2 * basis_vec(3, 2);
  CMat expected = CMat::Zero(2, 2);
  expected(0, 0) = std::exp(Complex(0, M_PI));
  expected(1, 1) = std::exp(Complex(0, -M_PI));
  CMat got = group_exp(su2, x);
  CHECK((got - expected).norm() < 1e-13);
  CHECK((got + CMat::Identity(2, 2)).norm() < 1e-13);
}

TEST_CASE("exponential inverse and one-parameter property") {
  SampleRng rng(17);
  for (const auto& alg : {LieAlgebra::su2(), LieAlgebra::so3()}) {
    for (int it = 0; it < 20; ++it) {
      Vec x = rng.vector(3, -1.0, 1.0);
      CMat a = group_exp(alg, x);
      CMat b = group_exp(alg, Vec(-x));
      CHECK((a * b - alg.group_identity()).norm() < 1e-12);
      double s = rng.uniform(-1.0, 1.0), t = rng.uniform(-1.0, 1.0);
      CMat lhs = group_exp(alg, Vec((s + t) * x));
      CMat rhs = group_exp(alg, Vec(s * x)) * group_exp(alg, Vec(t * x));
      CHECK((lhs - rhs).norm() < 1e-12);
    }
  }
}

TEST_CASE("polar splitting: identity and pure Hermitian factors") {
  LieAlgebra su2 = LieAlgebra::su2();
  PolarFactors id = kp_decompose(su2, su2.group_identity());
  CHECK((id.k - CMat::Identity(2, 2)).norm() < 1e-12);
  CHECK(id.x.norm() < 1e-12);

  double t = 0.37;
  CMat g = expm(CMat(Complex(0, 1) * t * su2.matrix(basis_vec(3, 2))));
  PolarFactors pf = kp_decompose(su2, g);
  CHECK((pf.k - CMat::Identity(2, 2)).norm() < 1e-10);
  CHECK((pf.x - t * basis_vec(3, 2)).norm() < 1e-10);
}

TEST_CASE("polar splitting round trip for both rank-one groups") {
  SampleRng rng(23);
  for (const auto& alg : {LieAlgebra::su2(), LieAlgebra::so3()}) {
    for (int it = 0; it < 50; ++it) {
      Vec k0 = rng.vector(3, -1.5, 1.5);
      Vec x0 = rng.unit_vector(3) * rng.uniform(0.0, 2.0);
      CMat k = group_exp(alg, k0);
      CMat g = k * expm(CMat(Complex(0, 1) * alg.matrix(x0)));
      PolarFactors pf = kp_decompose(alg, g);
      CHECK((pf.k - k).norm() < 1e-10);
      CHECK((pf.x - x0).norm() < 1e-10);
    }
  }
}

TEST_CASE("polar splitting round trip for the torus") {
  LieAlgebra t2 = LieAlgebra::torus(2);
  SampleRng rng(29);
  Vec k0 = rng.vector(2, -2.0, 2.0), x0 = rng.vector(2, -1.0, 1.0);
  CMat g = group_exp(t2, k0) * expm(CMat(Complex(0, 1) * t2.matrix(x0)));
  PolarFactors pf = kp_decompose(t2, g);
  CHECK((pf.k - group_exp(t2, k0)).norm() < 1e-11);
  CHECK((pf.x - x0).norm() < 1e-11);
}

TEST_CASE("polar splitting rejects non-group input") {
  LieAlgebra su2 = LieAlgebra::su2();
  CMat bad = 2.0 * CMat::Identity(2, 2);  // det = 4
  CHECK_THROWS_AS(kp_decompose(su2, bad), MembershipError);
}

TEST_CASE("adjoint action: identity, isometry, rotation oracle") {
  SampleRng rng(31);
  LieAlgebra su2 = LieAlgebra::su2();
  Vec x = rng.vector(3, -1.0, 1.0);
  CHECK((ad_action(su2, su2.group_identity(), x) - x).norm() < 1e-14);

  for (int it = 0; it < 200; ++it) {
    CMat g = random_su2(rng);
    Vec a = rng.vector(3, -1.0, 1.0), b = rng.vector(3, -1.0, 1.0);
    CHECK(std::abs(su2.inner(ad_action(su2, g, a), ad_action(su2, g, b)) -
                   su2.inner(a, b)) < 1e-12);
  }

  // on rotations the adjoint action is the rotation itself through the
  // cross-product identification
  LieAlgebra so3 = LieAlgebra::so3();
  for (int it = 0; it < 100; ++it) {
    CMat r = random_so3(rng);
    Eigen::Vector3d v = rng.vector(3, -1.0, 1.0);
    Vec lhs = ad_action(so3, r, Vec(v));
    Eigen::Vector3d rv = r.real() * v;
    CHECK((lhs - Vec(rv)).norm() < 1e-12);
  }
}

TEST_CASE("adjoint action rejects elements outside the compact group") {
  LieAlgebra su2 = LieAlgebra::su2();
  CMat g = expm(CMat(Complex(0, 1) * su2.matrix(basis_vec(3, 0))));  // in G, not K
  CHECK_THROWS_AS(ad_action(su2, g, basis_vec(3, 1)), MembershipError);
}

TEST_CASE("cross-product map: algebra isomorphism, isometry, equivariance") {
  LieAlgebra so3 = LieAlgebra::so3();
  SampleRng rng(37);
  double worst_iso = 0.0, worst_equiv = 0.0, worst_product = 0.0;
  for (int it = 0; it < 1000; ++it) {
    Eigen::Vector3d x = rng.vector(3, -1.0, 1.0), y = rng.vector(3, -1.0, 1.0),
                    u = rng.vector(3, -1.0, 1.0);
    Mat commutator = hat(x) * hat(y) - hat(y) * hat(x);
    worst_iso = std::max(worst_iso, (commutator - hat(x.cross(y))).norm());
    CMat r = random_so3(rng);
    Mat lhs = hat(Eigen::Vector3d(r.real() * x));
    Mat rhs = r.real() * hat(x) * r.real().transpose();
    worst_equiv = std::max(worst_equiv, (lhs - rhs).norm());
    Eigen::Vector3d vp = (x.cross(y)).cross(u);
    Eigen::Vector3d expanded = u.dot(x) * y - u.dot(y) * x;
    worst_product = std::max(worst_product, (vp - expanded).norm());
  }
  CHECK(worst_iso < 1e-14);
  CHECK(worst_equiv < 1e-12);
  CHECK(worst_product < 1e-14);
  // half-trace metric makes the map an isometry
  Eigen::Vector3d e1 = Eigen::Vector3d::UnitX();
  CHECK(so3.inner(Vec(e1), Vec(e1)) == doctest::Approx(1.0));
  CHECK(-0.5 * (hat(e1) * hat(e1)).trace() == doctest::Approx(1.0));
}

TEST_CASE("vector-space axioms for elements hold under random sampling") {
  LieAlgebra su2 = LieAlgebra::su2();
  SampleRng rng(41);
  for (int it = 0; it < 100; ++it) {
    Vec x = rng.vector(3, -1.0, 1.0), y = rng.vector(3, -1.0, 1.0);
    double a = rng.uniform(-2.0, 2.0);
    CHECK((su2.bracket(Vec(a * x), y) - a * su2.bracket(x, y)).norm() < 1e-13);
    CHECK((su2.bracket(Vec(x + y), y) - su2.bracket(x, y)).norm() < 1e-13);
  }
}

TEST_CASE("dimension mismatches are rejected") {
  LieAlgebra su2 = LieAlgebra::su2();
  Vec bad = Vec::Zero(4);
  CHECK_THROWS_AS(su2.bracket(bad, bad), DimensionError);
  CHECK_THROWS_AS(su2.inner(bad, bad), DimensionError);
}

TEST_CASE("malformed algebras are rejected at construction") {
  // non-antisymmetric structure constants
  std::vector<Mat> c(1, Mat::Ones(1, 1));
  CHECK_THROWS_AS(LieAlgebra("bad", c, Mat::Identity(1, 1)), Error);
  // metric that is not ad-invariant for su2 structure constants
  LieAlgebra su2 = LieAlgebra::su2();
  std::vector<Mat> sc = {su2.structure(0), su2.structure(1), su2.structure(2)};
  // rebuild the rank-3 layout: structure(k)(i,j) = c[i][j][k]
  std::vector<Mat> by_k(3, Mat::Zero(3, 3));
  for (int k = 0; k < 3; ++k) by_k[k] = su2.structure(k);
  Mat bad_metric = Mat::Identity(3, 3);
  bad_metric(0, 0) = 2.0;
  CHECK_THROWS_AS(LieAlgebra("bad2", by_k, bad_metric), Error);
}

TEST_CASE("bracket extends complex-bilinearly and matches the commutator") {
  LieAlgebra su2 = LieAlgebra::su2();
  SampleRng rng(101);
  for (int it = 0; it < 50; ++it) {
    CVec x = rng.vector(3, -1, 1) + Complex(0, 1) * CVec(rng.vector(3, -1, 1));
    CVec y = rng.vector(3, -1, 1) + Complex(0, 1) * CVec(rng.vector(3, -1, 1));
    Complex a(rng.uniform(-1, 1), rng.uniform(-1, 1));
    CHECK((su2.bracket(CVec(a * x), y) - a * su2.bracket(x, y)).norm() < 1e-13);
    CHECK((su2.bracket(x, CVec(a * y)) - a * su2.bracket(x, y)).norm() < 1e-13);
    CMat comm = su2.matrix(x) * su2.matrix(y) - su2.matrix(y) * su2.matrix(x);
    CHECK((comm - su2.matrix(su2.bracket(x, y))).norm() < 1e-12);
  }
}
