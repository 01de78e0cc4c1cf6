// End-to-end checks of the command-line front door: exit codes, report
// shape, artifact files, and byte-level determinism under a fixed seed.
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "acpb/cli.hpp"

namespace fs = std::filesystem;
using acpb::Json;

namespace {

struct RunResult {
  int exit_code;
  Json report;
};

fs::path scenario(const std::string& name) {
  return fs::path(ACPB_SCENARIO_DIR) / name;
}

fs::path fresh_dir(const std::string& tag) {
  fs::path dir = fs::temp_directory_path() / ("acpb_cli_" + tag);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

RunResult run_cli(const std::string& command, const std::string& scenario_name,
                  const fs::path& out_dir, const std::string& extra = "") {
  std::ostringstream cmd;
  cmd << ACPB_CLI_PATH << " " << command << " --scenario "
      << scenario(scenario_name).string() << " --out " << out_dir.string() << " "
      << extra << " > " << (out_dir / "stdout.txt").string() << " 2> "
      << (out_dir / "stderr.txt").string();
  int status = std::system(cmd.str().c_str());
  RunResult r;
  r.exit_code = WEXITSTATUS(status);
  std::ifstream in(out_dir / "report.json");
  if (in) in >> r.report;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("verify: hyperbolic model passes, report fields present") {
  fs::path dir = fresh_dir("verify_hyp");
  RunResult r = run_cli("verify", "hyperbolic_verify.json", dir);
  CHECK(r.exit_code == 0);
  CHECK(r.report.at("verdict") == "integrable within tolerance");
  CHECK(r.report.at("points") == 100);
  CHECK(r.report.at("max_r1").get<double>() < 1e-8);
  CHECK(r.report.at("max_r2").get<double>() < 1e-8);
  CHECK(r.report.at("max_nijenhuis_closed").get<double>() < 1e-7);
  CHECK(r.report.at("max_nijenhuis_numeric").get<double>() < 1e-5);
}

TEST_CASE("verify: homogeneous sample is integrable") {
  fs::path dir = fresh_dir("verify_homog");
  RunResult r = run_cli("verify", "homog_su2_verify.json", dir);
  CHECK(r.exit_code == 0);
  CHECK(r.report.at("verdict") == "integrable within tolerance");
}

TEST_CASE("verify: curved abelian model fails with the curvature residual") {
  fs::path dir = fresh_dir("verify_abelian");
  RunResult r = run_cli("verify", "abelian_curved_verify.json", dir);
  CHECK(r.exit_code == 1);
  CHECK(r.report.at("verdict") == "non-integrable");
  CHECK(r.report.at("max_r2").get<double>() == doctest::Approx(0.8).epsilon(1e-10));
  CHECK(r.report.at("max_r1").get<double>() < 1e-12);
}

TEST_CASE("verify: inline polynomial chart document is accepted") {
  fs::path dir = fresh_dir("verify_inline");
  RunResult r = run_cli("verify", "inline_chart_verify.json", dir);
  // the perturbed chart is not integrable; the run itself must succeed
  CHECK(r.exit_code == 1);
  CHECK(r.report.at("algebra") == "custom_su2");
  CHECK(r.report.at("max_r2").get<double>() > 1e-4);
}

TEST_CASE("verify: reports are byte-identical under a fixed seed") {
  fs::path d1 = fresh_dir("det_a");
  fs::path d2 = fresh_dir("det_b");
  RunResult r1 = run_cli("verify", "homog_su2_verify.json", d1, "--seed 77");
  RunResult r2 = run_cli("verify", "homog_su2_verify.json", d2, "--seed 77");
  CHECK(r1.exit_code == 0);
  CHECK(slurp(d1 / "report.json") == slurp(d2 / "report.json"));
  RunResult r3 = run_cli("verify", "homog_su2_verify.json", d2, "--seed 78");
  CHECK(slurp(d1 / "report.json") != slurp(d2 / "report.json"));
}

TEST_CASE("schema violations exit with the usage code") {
  fs::path dir = fresh_dir("schema");
  RunResult r = run_cli("verify", "schema_violation.json", dir);
  CHECK(r.exit_code == 2);
  CHECK(r.report.contains("error"));
}

TEST_CASE("curvature: homogeneous su2 samples concentrate at minus two") {
  fs::path dir = fresh_dir("curv");
  RunResult r = run_cli("curvature", "su2_curvature.json", dir);
  CHECK(r.exit_code == 0);
  double lo = r.report.at("summary").at("min_K").get<double>();
  double hi = r.report.at("summary").at("max_K").get<double>();
  CHECK(lo == doctest::Approx(-2.0).epsilon(1e-9));
  CHECK(hi == doctest::Approx(-2.0).epsilon(1e-9));
  CHECK(fs::exists(dir / "sectional.csv"));
  // per-point records carry the metric and residuals
  const Json& rec = r.report.at("records").at(0);
  CHECK(rec.contains("x"));
  CHECK(rec.contains("g_matrix"));
  CHECK(rec.contains("sectional_samples"));
  CHECK(rec.at("residuals").at("r1").get<double>() < 1e-8);
}

TEST_CASE("geodesic: vertical line trace with small speed drift") {
  fs::path dir = fresh_dir("geo");
  RunResult r = run_cli("geodesic", "hyperbolic_geodesic.json", dir);
  CHECK(r.exit_code == 0);
  CHECK(r.report.at("status") == "completed");
  CHECK(r.report.at("speed_drift").get<double>() < 1e-7);
  Json end = r.report.at("end_point");
  CHECK(end.at(2).get<double>() == doctest::Approx(std::exp(1.0)).epsilon(1e-6));
  std::string csv = slurp(dir / "trajectory.csv");
  CHECK(csv.rfind("t,x0,x1,x2", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') > 500);
}

TEST_CASE("geodesic: zero velocity is a usage error") {
  fs::path dir = fresh_dir("geo_bad");
  RunResult r = run_cli("geodesic", "bad_geodesic.json", dir);
  CHECK(r.exit_code == 2);
}

TEST_CASE("curve: constructed torus stabiliser yields the elliptic verdict") {
  fs::path dir = fresh_dir("curve_torus");
  RunResult r = run_cli("curve", "torus_curve.json", dir);
  CHECK(r.exit_code == 0);
  CHECK(r.report.at("factorization").at("verdict") == "elliptic");
  const Json& basis = r.report.at("factorization").at("basis");
  // reduced basis of the lattice generated by 1 and i
  CHECK(basis.at(0).at(0).get<double>() == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(basis.at(0).at(1).get<double>() == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(basis.at(1).at(0).get<double>() == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(basis.at(1).at(1).get<double>() == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(r.report.at("lattice").at("satisfied") == "true");
  CHECK(r.report.at("develop").at("closed_form_error").get<double>() < 1e-8);
}

TEST_CASE("curve: diagonal counterexample is rejected with the witness period") {
  fs::path dir = fresh_dir("curve_diag");
  RunResult r = run_cli("curve", "diagonal_counterexample.json", dir);
  CHECK(r.exit_code == 1);
  CHECK(r.report.at("factorization").at("verdict") == "rejected");
  CHECK(r.report.at("lattice").at("satisfied") == "false");
  int failing = r.report.at("lattice").at("failing_period").get<int>();
  CHECK(failing == 1);
  const Json& witness = r.report.at("lattice").at("witnesses").at(failing);
  CHECK(witness.at("period").at(0).get<double>() == doctest::Approx(0.0));
  CHECK(witness.at("period").at(1).get<double>() == doctest::Approx(1.0));
  CHECK(witness.at("member") == "false");
}

TEST_CASE("curve: isotropic polynomial form has an exactly zero quadric") {
  fs::path dir = fresh_dir("curve_iso");
  RunResult r = run_cli("curve", "isotropic_curve.json", dir);
  CHECK(r.exit_code == 0);
  CHECK(r.report.at("quadric").at("max_abs_coefficient").get<double>() < 1e-14);
  CHECK(r.report.at("conformality").at("max_residual").get<double>() < 1e-12);
}

TEST_CASE("unknown commands are rejected by the parser") {
  fs::path dir = fresh_dir("unknown");
  std::ostringstream cmd;
  cmd << ACPB_CLI_PATH << " frobnicate --scenario x.json > /dev/null 2>&1";
  int status = std::system(cmd.str().c_str());
  CHECK(WEXITSTATUS(status) != 0);
}

TEST_CASE("numeric failures exit with the runtime code") {
  fs::path dir = fresh_dir("singular");
  RunResult r = run_cli("verify", "singular_chart.json", dir);
  CHECK(r.exit_code == 3);
  CHECK(r.report.at("kind") == "numeric");
}

TEST_CASE("document parsing: algebras, curve forms, malformed input") {
  using namespace acpb;
  // built-in by name and a hand-rolled structure-constant document
  CHECK(algebra_from_json(Json("so3")).dim() == 3);
  Json doc = Json::parse(R"({
    "name": "heis-like", "dim": 2,
    "structure_constants": [[[0,0],[0,0]],[[0,0],[0,0]]],
    "inner_product": [[1,0],[0,2]]})");
  LieAlgebra custom = algebra_from_json(doc);
  CHECK(custom.dim() == 2);
  CHECK(custom.metric()(1, 1) == 2.0);
  CHECK_FALSE(custom.has_representation());

  // a non-Jacobi / non-antisymmetric document is rejected
  Json bad = doc;
  bad["structure_constants"][0][0][0] = 1.0;  // c[0][0][0] != 0
  CHECK_THROWS_AS(algebra_from_json(bad), SchemaError);

  Json form = Json::parse(R"({
    "kind": "scalar", "Z": [[0,0],[0,0],[1,0]], "zeta": [[1,0],[0,1]],
    "surface": {"type": "torus", "tau": [0.5, 1.25]}})");
  CurveForm eta = curve_form_from_json(form);
  CHECK(eta.kind() == CurveForm::Kind::Scalar);
  CHECK(eta.surface().type == Surface::Type::Torus);
  CHECK(std::abs(eta.surface().tau - Complex(0.5, 1.25)) < 1e-15);
  CHECK(std::abs(eta.zeta().eval(Complex(2, 0)) - Complex(1, 2)) < 1e-15);

  CHECK_THROWS_AS(curve_form_from_json(Json::parse(R"({"kind": "nonsense"})")),
                  SchemaError);
  CHECK_THROWS_AS(curve_form_from_json(Json::parse(R"({"kind": "polynomial"})")),
                  SchemaError);
}

TEST_CASE("curvature: hyperbolic samples concentrate at minus one") {
  fs::path dir = fresh_dir("curv_hyp");
  RunResult r = run_cli("curvature", "hyperbolic_curvature.json", dir);
  CHECK(r.exit_code == 0);
  CHECK(r.report.at("summary").at("min_K").get<double>() ==
        doctest::Approx(-1.0).epsilon(1e-8));
  CHECK(r.report.at("summary").at("max_K").get<double>() ==
        doctest::Approx(-1.0).epsilon(1e-8));
}

TEST_CASE("builtin-model charts accept a domain override") {
  using namespace acpb;
  Json doc = Json::parse(R"({
    "fields": {"kind": "builtin-model", "name": "hyperbolic3"},
    "domain": {"min": [-1, -1, 0.5], "max": [1, 1, 2.0]}})");
  GaugeChart chart = chart_from_json(doc);
  CHECK(chart.lower()[2] == 0.5);
  CHECK(chart.upper()[2] == 2.0);
  Vec outside(3);
  outside << 0.0, 0.0, 3.0;  // inside the default box, outside the override
  CHECK_THROWS_AS(chart.require_inside(outside), ChartExit);
}

TEST_CASE("chart documents can force numeric field derivatives") {
  using namespace acpb;
  Json doc = Json::parse(R"({
    "algebra": "t2",
    "domain": {"min": [-1,-1], "max": [1,1]},
    "fields": {"kind": "polynomial",
                "connection": [[[{"c": 0.5, "p": [0,1]}], []], [[], []]],
                "soldering": [[[{"c": 1.0, "p": [0,0]}], []],
                               [[], [{"c": 1.0, "p": [0,0]}]]]},
    "derivatives": {"numeric": true, "step": 1e-4, "richardson": true}})");
  GaugeChart numeric = chart_from_json(doc);
  CHECK_FALSE(numeric.has_analytic_derivatives());
  Json doc2 = doc;
  doc2.erase("derivatives");
  GaugeChart analytic = chart_from_json(doc2);
  CHECK(analytic.has_analytic_derivatives());
  Vec x(2);
  x << 0.3, -0.2;
  AdTwoForm fn = curvature_form(numeric, x);
  AdTwoForm fa = curvature_form(analytic, x);
  CHECK((fn(0, 1) - fa(0, 1)).norm() < 1e-9);
}
