#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "smoothcond/linalg.hpp"
#include "smoothcond/projective.hpp"

namespace smoothcond {

/// A condition number value; +infinity marks an ill-posed input.
struct ConditionValue {
  double value = 0.0;
  double log_value = 0.0;
  bool ill_posed = false;

  static ConditionValue finite(double v);
  static ConditionValue infinite();
};

/// Exponent tuple alpha = (alpha_0, ..., alpha_n) of the monomial X^alpha.
using Exponent = std::vector<int>;

/// Homogeneous system f = (f_1, ..., f_n) in the variables X_0..X_n.
///
/// Coefficients are in the plain monomial basis; Weyl weights are applied by
/// the functions below, never stored.
struct PolySystem {
  int n = 0;
  std::vector<int> degrees;
  std::vector<std::map<Exponent, ComplexScalar>> equations;

  /// Throws DomainError when exponents have the wrong length or total
  /// degree, or when an equation has no nonzero coefficient.
  void validate() const;

  /// N_i = binom(n + d_i, d_i), the number of monomials of equation i.
  std::int64_t monomial_count(int i) const;
  /// N = sum_i N_i - 1, so that systems live in P^N.
  std::int64_t projective_dimension() const;
  /// Bezout number D = prod_i d_i.
  std::int64_t bezout_number() const;

  ComplexVector evaluate(const ComplexVector& x) const;
  /// n x (n+1) Jacobian at x.
  ComplexMatrix jacobian(const ComplexVector& x) const;

  PolySystem scaled(ComplexScalar factor) const;
};

/// All exponent tuples of length n+1 summing to d, in lexicographically
/// decreasing order (X_0^d first).
std::vector<Exponent> monomials(int n, int d);

/// d! / (alpha_0! ... alpha_n!).
double multinomial(const Exponent& alpha);

std::int64_t binomial(int n, int k);

/// kappa_F(A) = ||A||_F ||A^{-1}||, square A.
ConditionValue kappa_f(const ComplexMatrix& a);

/// kappa_F^dagger(A) = ||A||_F ||A^dagger||, rows >= cols.
ConditionValue kappa_dagger_f(const ComplexMatrix& a);

/// Spectral projector P = (y^H x)^{-1} x y^H; throws IllPosedError when
/// |y^H x| <= 1e-12 ||x|| ||y||.
ComplexMatrix projection_matrix(const ComplexVector& x, const ComplexVector& y);

/// Relative eigenvalue gap (||A||_F = 1) at or below which a spectrum is
/// treated as having a multiple eigenvalue.
inline constexpr double kEigenGapTolerance = 1e-8;

/// max over eigenvalues of ||P_lambda||_2; +infinity for a multiple
/// eigenvalue.
ConditionValue kappa_eigen(const ComplexMatrix& a);

/// prod_{i<j} (lambda_i - lambda_j)^2 from the computed eigenvalues.
ComplexScalar char_poly_discriminant(const ComplexMatrix& a);

/// Characteristic polynomial det(X I - A), ascending coefficients, by the
/// Faddeev-LeVerrier recurrence (no eigenvalues involved).
std::vector<ComplexScalar> characteristic_polynomial(const ComplexMatrix& a);

/// (-1)^{n(n-1)/2} res(chi_A, chi_A'): the discriminant by the resultant route.
ComplexScalar char_poly_discriminant_resultant(const ComplexMatrix& a);

/// Weyl (Bombieri) Hermitian product, conjugate-linear in g.
ComplexScalar weyl_inner_product(const PolySystem& f, const PolySystem& g);
double weyl_norm(const PolySystem& f);

/// mu_norm(f, zeta) for a zero zeta of f. The tangent space zeta^perp is
/// spanned by an orthonormal completion of zeta; the result does not depend
/// on which one. Throws NotAZeroError if ||f(zeta)|| > 1e-8 ||f||.
ConditionValue mu_norm_at_zero(const PolySystem& f, const ProjectivePoint& zeta);

/// Same, with an explicit orthonormal basis of zeta^perp as the columns of
/// `tangent_basis` ((n+1) x n).
ConditionValue mu_norm_at_zero(const PolySystem& f, const ProjectivePoint& zeta,
                               const ComplexMatrix& tangent_basis);

/// Projective zeros of a binary form (n = 1), with multiplicity detection.
struct BinaryFormRoots {
  std::vector<ProjectivePoint> roots;
  bool multiple = false;
};

/// Projective distance under which two computed roots count as one.
inline constexpr double kRootCoincidence = 1e-6;

BinaryFormRoots binary_form_roots(const PolySystem& f);

/// max_zeta mu_norm(f, zeta) for a binary form; UnsupportedError for n >= 2.
ConditionValue mu_norm_system(const PolySystem& f);

struct DiscriminantDegree {
  std::int64_t exact;
  std::int64_t crude;
};

/// Degree of the discriminant hypersurface of H_d and the crude bound 2nD^2.
DiscriminantDegree discriminant_degree_bound(const std::vector<int>& degrees);

}  // namespace smoothcond
