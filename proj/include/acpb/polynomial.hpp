#ifndef ACPB_POLYNOMIAL_HPP
#define ACPB_POLYNOMIAL_HPP

#include <vector>

#include "acpb/types.hpp"

namespace acpb {

/// Sparse real polynomial in several variables: sum of c * prod x_d^e_d.
class MultiPoly {
 public:
  struct Term {
    double coeff;
    Eigen::ArrayXi exponents;
  };

  MultiPoly() = default;
  explicit MultiPoly(int nvars) : nvars_(nvars) {}

  int nvars() const { return nvars_; }
  const std::vector<Term>& terms() const { return terms_; }

  MultiPoly& add_term(double coeff, const Eigen::ArrayXi& exponents);

  double eval(const Vec& x) const;
  MultiPoly derivative(int var) const;

 private:
  int nvars_ = 0;
  std::vector<Term> terms_;
};

/// A matrix whose entries are multivariate polynomials; used for chart
/// fields with exact analytic derivatives.
class PolyMatrix {
 public:
  PolyMatrix() = default;
  PolyMatrix(int rows, int cols, int nvars);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  MultiPoly& at(int r, int c) { return entries_[r * cols_ + c]; }
  const MultiPoly& at(int r, int c) const { return entries_[r * cols_ + c]; }

  Mat eval(const Vec& x) const;
  /// Partial derivative matrices, one per variable.
  std::vector<Mat> jacobian(const Vec& x) const;

 private:
  int rows_ = 0, cols_ = 0, nvars_ = 0;
  std::vector<MultiPoly> entries_;
};

/// Dense univariate complex polynomial, coefficients in ascending degree.
class ComplexPoly {
 public:
  ComplexPoly() : coeffs_(CVec::Zero(1)) {}
  explicit ComplexPoly(CVec coeffs);

  const CVec& coeffs() const { return coeffs_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  double max_coeff_abs() const { return coeffs_.cwiseAbs().maxCoeff(); }

  Complex eval(Complex z) const;
  ComplexPoly derivative() const;
  /// Antiderivative with zero constant term.
  ComplexPoly antiderivative() const;
  ComplexPoly operator*(const ComplexPoly& other) const;
  ComplexPoly operator+(const ComplexPoly& other) const;

  /// Coefficients in powers of (z - z0) (a Taylor shift / repeated
  /// synthetic division).
  CVec taylor_at(Complex z0) const;

 private:
  CVec coeffs_;
};

}  // namespace acpb

#endif
