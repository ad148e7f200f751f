#pragma once

#include <vector>

#include <Eigen/Dense>

#include "smoothcond/projective.hpp"

namespace smoothcond {

/// Full SVD a = u * diag(singular_values) * v^H.
struct SVDResult {
  ComplexMatrix u;
  Eigen::VectorXd singular_values;  // descending, length min(rows, cols)
  ComplexMatrix v;
};

/// Eigenvalues with paired unit right (x_i) and left (y_i) eigenvectors:
/// A x_i = lambda_i x_i and y_i^H A = lambda_i y_i^H.
struct EigenResult {
  ComplexVector eigenvalues;
  ComplexMatrix right_vectors;
  ComplexMatrix left_vectors;
  double min_gap = 0.0;  // min_{i<j} |lambda_i - lambda_j|; +inf for n = 1
};

/// Largest supported matrix dimension.
inline constexpr Eigen::Index kMaxDimension = 64;

/// Relative threshold below which a singular value counts as zero.
inline constexpr double kRankTolerance = 1e-12;

SVDResult svd(const ComplexMatrix& a);

/// sigma_min(a): distance (Frobenius and spectral) to the rank-deficient
/// matrices of the same shape. Requires rows >= cols.
double smallest_singular_value(const ComplexMatrix& a);

/// Spectral norm via the SVD.
double spectral_norm(const ComplexMatrix& a);

/// Moore-Penrose inverse of a full-column-rank matrix; throws IllPosedError
/// when sigma_min <= kRankTolerance * ||a||_F.
ComplexMatrix pseudo_inverse(const ComplexMatrix& a);

/// Complex Schur form (Hessenberg reduction + shifted QR), followed by
/// triangular back-substitution for right and left eigenvectors.
EigenResult eigen(const ComplexMatrix& a);

/// Roots of sum_k coeffs[k] X^k (ascending order) via the companion matrix,
/// each refined by Newton steps while the residual decreases.
std::vector<ComplexScalar> companion_roots(const std::vector<ComplexScalar>& coeffs);

/// Evaluate sum_k coeffs[k] x^k (Horner).
ComplexScalar evaluate_polynomial(const std::vector<ComplexScalar>& coeffs, ComplexScalar x);

/// Determinant of the Sylvester matrix of p and q (ascending coefficients):
/// res(p, q) = lc(p)^{deg q} * prod_i q(r_i) over the roots r_i of p.
ComplexScalar sylvester_resultant(const std::vector<ComplexScalar>& p,
                                  const std::vector<ComplexScalar>& q);

}  // namespace smoothcond
