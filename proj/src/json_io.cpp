#include "acpb/json_io.hpp"

#include "acpb/models.hpp"

namespace acpb {

const Json& require_field(const Json& j, const std::string& key,
                          const std::string& where) {
  if (!j.is_object() || !j.contains(key))
    throw SchemaError(where + ": missing field '" + key + "'");
  return j.at(key);
}

Complex complex_from_json(const Json& j) {
  if (j.is_number()) return Complex(j.get<double>(), 0.0);
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return Complex(j[0].get<double>(), j[1].get<double>());
  throw SchemaError("expected a complex number as [re, im]");
}

CVec cvec_from_json(const Json& j) {
  if (!j.is_array()) throw SchemaError("expected an array of complex numbers");
  CVec v(j.size());
  for (size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = complex_from_json(j[i]);
  return v;
}

CMat cmat_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw SchemaError("expected a matrix (array of rows)");
  const size_t rows = j.size();
  const size_t cols = j[0].size();
  CMat m(rows, cols);
  for (size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols)
      throw SchemaError("expected a rectangular matrix");
    for (size_t c = 0; c < cols; ++c)
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          complex_from_json(j[r][c]);
  }
  return m;
}

Vec vec_from_json(const Json& j) {
  if (!j.is_array()) throw SchemaError("expected an array of numbers");
  Vec v(j.size());
  for (size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw SchemaError("expected an array of numbers");
    v[static_cast<Eigen::Index>(i)] = j[i].get<double>();
  }
  return v;
}

Json json_from_cmat(const CMat& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      row.push_back(Json::array({m(r, c).real(), m(r, c).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json json_from_vec(const Vec& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

LieAlgebra algebra_from_json(const Json& j) {
  if (j.is_string()) return LieAlgebra::builtin(j.get<std::string>());
  const Json& sc = require_field(j, "structure_constants", "algebra");
  const Json& ip = require_field(j, "inner_product", "algebra");
  std::string name = j.value("name", std::string("custom"));
  const int dim = static_cast<int>(sc.size());
  if (dim == 0) throw SchemaError("algebra: empty structure constants");
  std::vector<Mat> structure(dim, Mat::Zero(dim, dim));
  for (int i = 0; i < dim; ++i) {
    if (!sc[i].is_array() || static_cast<int>(sc[i].size()) != dim)
      throw SchemaError("algebra: structure_constants must be dim^3");
    for (int jj = 0; jj < dim; ++jj) {
      if (!sc[i][jj].is_array() || static_cast<int>(sc[i][jj].size()) != dim)
        throw SchemaError("algebra: structure_constants must be dim^3");
      for (int k = 0; k < dim; ++k)
        structure[k](i, jj) = sc[i][jj][k].get<double>();
    }
  }
  Mat metric(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int jj = 0; jj < dim; ++jj) metric(i, jj) = ip[i][jj].get<double>();
  try {
    return LieAlgebra(name, std::move(structure), std::move(metric));
  } catch (const Error& e) {
    throw SchemaError(std::string("algebra: ") + e.what());
  }
}

MultiPoly multipoly_from_json(const Json& j, int nvars) {
  if (!j.is_array()) throw SchemaError("polynomial: expected an array of terms");
  MultiPoly p(nvars);
  for (const Json& term : j) {
    double c = require_field(term, "c", "polynomial term").get<double>();
    const Json& pw = require_field(term, "p", "polynomial term");
    if (static_cast<int>(pw.size()) != nvars)
      throw SchemaError("polynomial term: exponent arity mismatch");
    Eigen::ArrayXi e(nvars);
    for (int d = 0; d < nvars; ++d) e[d] = pw[d].get<int>();
    p.add_term(c, e);
  }
  return p;
}

namespace {

PolyMatrix polyfield_from_json(const Json& j, int dim, const std::string& where) {
  // array over columns (base directions), each an array over components
  if (!j.is_array() || static_cast<int>(j.size()) != dim)
    throw SchemaError(where + ": expected one entry per base direction");
  PolyMatrix field(dim, dim, dim);
  for (int col = 0; col < dim; ++col) {
    if (!j[col].is_array() || static_cast<int>(j[col].size()) != dim)
      throw SchemaError(where + ": expected one polynomial per component");
    for (int row = 0; row < dim; ++row)
      field.at(row, col) = multipoly_from_json(j[col][row], dim);
  }
  return field;
}

}  // namespace

GaugeChart chart_from_json(const Json& j) {
  const Json& fields = require_field(j, "fields", "chart");
  std::string kind = require_field(fields, "kind", "chart.fields").get<std::string>();
  if (kind == "builtin-model") {
    std::string name = require_field(fields, "name", "chart.fields").get<std::string>();
    try {
      GaugeChart chart = model_by_name(name);
      if (j.contains("domain")) {
        const Json& dom = j.at("domain");
        Vec lo = vec_from_json(require_field(dom, "min", "chart.domain"));
        Vec hi = vec_from_json(require_field(dom, "max", "chart.domain"));
        return chart.restricted(std::move(lo), std::move(hi));
      }
      return chart;
    } catch (const SchemaError&) {
      throw;
    } catch (const Error& e) {
      throw SchemaError(std::string("chart: ") + e.what());
    }
  }
  if (kind != "polynomial")
    throw SchemaError("chart.fields: unknown kind '" + kind + "'");

  auto algebra = std::make_shared<const LieAlgebra>(
      algebra_from_json(require_field(j, "algebra", "chart")));
  const int dim = algebra->dim();
  const Json& dom = require_field(j, "domain", "chart");
  Vec lo = vec_from_json(require_field(dom, "min", "chart.domain"));
  Vec hi = vec_from_json(require_field(dom, "max", "chart.domain"));
  if (lo.size() != dim || hi.size() != dim)
    throw SchemaError("chart.domain: box dimension must match the algebra");

  auto connection = std::make_shared<PolyMatrix>(
      polyfield_from_json(require_field(fields, "connection", "chart.fields"), dim,
                          "chart.fields.connection"));
  auto soldering = std::make_shared<PolyMatrix>(
      polyfield_from_json(require_field(fields, "soldering", "chart.fields"), dim,
                          "chart.fields.soldering"));

  DerivConfig deriv;
  bool numeric = false;
  if (j.contains("derivatives")) {
    const Json& d = j.at("derivatives");
    numeric = d.value("numeric", false);
    deriv.step = d.value("step", deriv.step);
    deriv.richardson = d.value("richardson", deriv.richardson);
  }

  GaugeChart::FieldFn conn_fn = [connection](const Vec& x) { return connection->eval(x); };
  GaugeChart::FieldFn sold_fn = [soldering](const Vec& x) { return soldering->eval(x); };
  if (numeric)
    return GaugeChart(algebra, lo, hi, conn_fn, sold_fn, nullptr, nullptr, deriv);
  GaugeChart::JacobianFn conn_jac = [connection](const Vec& x) {
    return connection->jacobian(x);
  };
  GaugeChart::JacobianFn sold_jac = [soldering](const Vec& x) {
    return soldering->jacobian(x);
  };
  return GaugeChart(algebra, lo, hi, conn_fn, sold_fn, conn_jac, sold_jac, deriv);
}

CurveForm curve_form_from_json(const Json& j) {
  std::string kind = require_field(j, "kind", "curve form").get<std::string>();
  Surface surface;
  if (j.contains("surface")) {
    const Json& s = j.at("surface");
    std::string type = require_field(s, "type", "surface").get<std::string>();
    if (type == "torus") {
      surface.type = Surface::Type::Torus;
      surface.tau = complex_from_json(require_field(s, "tau", "surface"));
    } else if (type == "disc") {
      surface.type = Surface::Type::Disc;
    } else {
      throw SchemaError("surface: unknown type '" + type + "'");
    }
  }
  if (kind == "polynomial") {
    const Json& cf = require_field(j, "coeffs", "curve form");
    std::vector<CVec> coeffs;
    for (const Json& c : cf) coeffs.push_back(cvec_from_json(c));
    if (coeffs.empty()) throw SchemaError("curve form: empty coefficient list");
    return CurveForm::polynomial(std::move(coeffs), surface);
  }
  if (kind == "scalar") {
    CVec direction = cvec_from_json(require_field(j, "Z", "curve form"));
    ComplexPoly zeta(cvec_from_json(require_field(j, "zeta", "curve form")));
    return CurveForm::scalar(std::move(direction), std::move(zeta), surface);
  }
  throw SchemaError("curve form: unknown kind '" + kind + "'");
}

StabilizerGroup stabilizer_from_json(const Json& j) {
  StabilizerGroup gamma;
  const Json& gens = require_field(j, "generators", "gamma");
  for (const Json& g : gens) gamma.generators.push_back(cmat_from_json(g));
  gamma.closure_depth = j.value("closure_depth", gamma.closure_depth);
  gamma.tolerance = j.value("tolerance", gamma.tolerance);
  gamma.element_budget = j.value("element_budget", gamma.element_budget);
  return gamma;
}

}  // namespace acpb
