#include "acpb/polynomial.hpp"

#include <cmath>

namespace acpb {

MultiPoly& MultiPoly::add_term(double coeff, const Eigen::ArrayXi& exponents) {
  if (exponents.size() != nvars_)
    throw DimensionError("MultiPoly: exponent tuple has wrong arity");
  if ((exponents < 0).any()) throw Error("MultiPoly: negative exponent");
  if (coeff != 0.0) terms_.push_back({coeff, exponents});
  return *this;
}

double MultiPoly::eval(const Vec& x) const {
  if (x.size() != nvars_) throw DimensionError("MultiPoly: wrong point dimension");
  double out = 0.0;
  for (const Term& t : terms_) {
    double v = t.coeff;
    for (int d = 0; d < nvars_; ++d)
      for (int e = 0; e < t.exponents[d]; ++e) v *= x[d];
    out += v;
  }
  return out;
}

MultiPoly MultiPoly::derivative(int var) const {
  MultiPoly out(nvars_);
  for (const Term& t : terms_) {
    if (t.exponents[var] == 0) continue;
    Eigen::ArrayXi e = t.exponents;
    e[var] -= 1;
    out.add_term(t.coeff * t.exponents[var], e);
  }
  return out;
}

PolyMatrix::PolyMatrix(int rows, int cols, int nvars)
    : rows_(rows), cols_(cols), nvars_(nvars),
      entries_(rows * cols, MultiPoly(nvars)) {}

Mat PolyMatrix::eval(const Vec& x) const {
  Mat out(rows_, cols_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) out(r, c) = at(r, c).eval(x);
  return out;
}

std::vector<Mat> PolyMatrix::jacobian(const Vec& x) const {
  std::vector<Mat> out(nvars_, Mat(rows_, cols_));
  for (int d = 0; d < nvars_; ++d)
    for (int r = 0; r < rows_; ++r)
      for (int c = 0; c < cols_; ++c) out[d](r, c) = at(r, c).derivative(d).eval(x);
  return out;
}

ComplexPoly::ComplexPoly(CVec coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.size() == 0) coeffs_ = CVec::Zero(1);
}

Complex ComplexPoly::eval(Complex z) const {
  Complex out = 0.0;
  for (Eigen::Index i = coeffs_.size() - 1; i >= 0; --i) out = out * z + coeffs_[i];
  return out;
}

ComplexPoly ComplexPoly::derivative() const {
  if (coeffs_.size() <= 1) return ComplexPoly();
  CVec d(coeffs_.size() - 1);
  for (Eigen::Index i = 1; i < coeffs_.size(); ++i)
    d[i - 1] = coeffs_[i] * static_cast<double>(i);
  return ComplexPoly(d);
}

ComplexPoly ComplexPoly::antiderivative() const {
  CVec a(coeffs_.size() + 1);
  a[0] = 0.0;
  for (Eigen::Index i = 0; i < coeffs_.size(); ++i)
    a[i + 1] = coeffs_[i] / static_cast<double>(i + 1);
  return ComplexPoly(a);
}

ComplexPoly ComplexPoly::operator*(const ComplexPoly& other) const {
  CVec out = CVec::Zero(coeffs_.size() + other.coeffs_.size() - 1);
  for (Eigen::Index i = 0; i < coeffs_.size(); ++i)
    for (Eigen::Index j = 0; j < other.coeffs_.size(); ++j)
      out[i + j] += coeffs_[i] * other.coeffs_[j];
  return ComplexPoly(out);
}

ComplexPoly ComplexPoly::operator+(const ComplexPoly& other) const {
  CVec out = CVec::Zero(std::max(coeffs_.size(), other.coeffs_.size()));
  out.head(coeffs_.size()) = coeffs_;
  out.head(other.coeffs_.size()) += other.coeffs_;
  return ComplexPoly(out);
}

CVec ComplexPoly::taylor_at(Complex z0) const {
  // repeated synthetic division by (z - z0); after pass k the entry at
  // index k is the Taylor coefficient of order k
  CVec work = coeffs_;
  const Eigen::Index n = work.size();
  for (Eigen::Index k = 0; k < n; ++k)
    for (Eigen::Index i = n - 2; i >= k; --i) work[i] += z0 * work[i + 1];
  return work;
}

}  // namespace acpb
