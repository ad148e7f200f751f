#pragma once

#include <complex>

#include <Eigen/Dense>

#include "smoothcond/random_stream.hpp"

namespace smoothcond {

using ComplexScalar = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// A point of CP^p stored as a unit-norm representative in C^{p+1}.
///
/// The phase is not canonicalized; every operation below is invariant
/// under multiplying the representative by a unit complex number.
class ProjectivePoint {
 public:
  /// Normalizes `coords`; throws DomainError for fewer than two
  /// coordinates, a zero vector or non-finite entries.
  explicit ProjectivePoint(const ComplexVector& coords);

  /// Standard basis point e_k of CP^p.
  static ProjectivePoint basis(int p, int k);

  int dim() const { return static_cast<int>(coords_.size()) - 1; }
  const ComplexVector& coords() const { return coords_; }

  /// Equality up to global phase: |<x,y>| = 1 within 1e-10.
  friend bool operator==(const ProjectivePoint& x, const ProjectivePoint& y);

 private:
  ComplexVector coords_;
};

/// Open ball B(center, sigma) for the projective distance.
struct BallSpec {
  BallSpec(ProjectivePoint center, double sigma);

  ProjectivePoint center;
  double sigma;
};

/// Fubini-Study distance arccos |<x,y>|, in [0, pi/2].
double riemannian_distance(const ProjectivePoint& x, const ProjectivePoint& y);

/// sin of the Fubini-Study distance, in [0, 1].
double projective_distance(const ProjectivePoint& x, const ProjectivePoint& y);

/// Volume pi^p / p! of CP^p.
double projective_volume(int p);
double log_projective_volume(int p);

/// Draw from the unitarily invariant probability measure on CP^p.
ProjectivePoint sample_uniform_projective(int p, RandomStream& rng);

/// Exact draw from the normalized volume measure on B(center, sigma).
///
/// The radius u = d_P(z, center) has CDF (u/sigma)^{2p} (balls in CP^p have
/// volume v(P^p) u^{2p}), and given u the point is uniform on the sphere of
/// radius u, which is parametrized by unit vectors of center^perp.
ProjectivePoint sample_uniform_ball(const BallSpec& ball, RandomStream& rng);

/// Haar-distributed n x n unitary (QR of a complex Gaussian matrix with the
/// phases of diag(R) moved into Q).
ComplexMatrix random_unitary(int n, RandomStream& rng);

/// Projective distance from z to P(span(e_0, ..., e_k)): the norm of the
/// trailing coordinates k+1..p of the unit representative.
double distance_to_coordinate_subspace(const ProjectivePoint& z, int k);

/// v(T_eps(P^{p-m})) / v(P^p): relative volume of the eps-tube around a
/// linear subspace of codimension m in CP^p.
double tube_volume_linear_subspace_exact(int p, int m, double eps);

}  // namespace smoothcond
