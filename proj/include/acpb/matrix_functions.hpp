#ifndef ACPB_MATRIX_FUNCTIONS_HPP
#define ACPB_MATRIX_FUNCTIONS_HPP

#include "acpb/types.hpp"

namespace acpb {

/// Matrix exponential by scaling-and-squaring with a diagonal Pade
/// approximant. Intended for the small dense matrices used throughout
/// (2x2 ... a few dozen rows); throws ConvergenceError if the result is
/// not finite.
CMat expm(const CMat& a);

/// Principal logarithm of a Hermitian positive-definite matrix, via a
/// self-adjoint eigendecomposition. Throws BranchCutError when an
/// eigenvalue is not strictly positive.
CMat logm_hermitian(const CMat& a, double positivity_tol = 1e-12);

/// Hermitian positive-definite square root.
CMat sqrtm_hermitian(const CMat& a, double positivity_tol = 1e-12);

/// Principal logarithm of a normal matrix (unitary, orthogonal, ...)
/// via a complex eigendecomposition. Throws BranchCutError when an
/// eigenvalue sits on the negative real axis within `branch_tol`.
CMat logm_normal(const CMat& a, double branch_tol = 1e-9);

/// Unitary factor of the polar decomposition a = u p (p Hermitian psd),
/// computed from the SVD. This is the nearest unitary in Frobenius norm.
CMat polar_unitary(const CMat& a);

/// Frobenius condition estimate sigma_max / sigma_min of a square matrix.
double condition_number(const Mat& a);

}  // namespace acpb

#endif
