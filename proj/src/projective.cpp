#include "smoothcond/projective.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "smoothcond/errors.hpp"

namespace smoothcond {

ProjectivePoint::ProjectivePoint(const ComplexVector& coords) : coords_(coords) {
  if (coords_.size() < 2) throw DomainError("projective point needs at least two coordinates");
  if (!coords_.allFinite()) throw DomainError("projective point has non-finite coordinates");
  const double norm = coords_.norm();
  if (norm == 0.0) throw DomainError("zero vector does not represent a projective point");
  coords_ /= norm;
}

ProjectivePoint ProjectivePoint::basis(int p, int k) {
  if (p < 1 || k < 0 || k > p) throw DomainError("basis index out of range");
  return ProjectivePoint(ComplexVector::Unit(p + 1, k));
}

bool operator==(const ProjectivePoint& x, const ProjectivePoint& y) {
  if (x.dim() != y.dim()) return false;
  return std::abs(1.0 - std::abs(x.coords_.dot(y.coords_))) <= 1e-10;
}

BallSpec::BallSpec(ProjectivePoint c, double s) : center(std::move(c)), sigma(s) {
  if (!(sigma > 0.0 && sigma <= 1.0)) throw DomainError("ball radius must lie in (0, 1]");
}

namespace {

void require_same_dim(const ProjectivePoint& x, const ProjectivePoint& y) {
  if (x.dim() != y.dim())
    throw DimensionMismatch("projective points of dimension " + std::to_string(x.dim()) +
                            " and " + std::to_string(y.dim()));
}

}  // namespace

double riemannian_distance(const ProjectivePoint& x, const ProjectivePoint& y) {
  require_same_dim(x, y);
  return std::acos(std::min(1.0, std::abs(x.coords().dot(y.coords()))));
}

double projective_distance(const ProjectivePoint& x, const ProjectivePoint& y) {
  require_same_dim(x, y);
  // sin(arccos c) = |y - <x,y> x| for unit x, y; stable for nearby points.
  const ComplexVector& a = x.coords();
  const ComplexVector& b = y.coords();
  const ComplexScalar c = a.dot(b);
  return std::min(1.0, (b - c * a).norm());
}

double log_projective_volume(int p) {
  if (p < 0) throw DomainError("projective dimension must be nonnegative");
  return p * std::log(M_PI) - std::lgamma(p + 1.0);
}

double projective_volume(int p) {
  if (p < 0) throw DomainError("projective dimension must be nonnegative");
  if (p > 150) return std::exp(log_projective_volume(p));
  double v = 1.0;
  for (int k = 1; k <= p; ++k) v *= M_PI / k;
  return v;
}

ProjectivePoint sample_uniform_projective(int p, RandomStream& rng) {
  if (p < 1) throw DomainError("projective dimension must be at least 1");
  return ProjectivePoint(rng.complex_normal_vector(p + 1));
}

ProjectivePoint sample_uniform_ball(const BallSpec& ball, RandomStream& rng) {
  const int p = ball.center.dim();
  const ComplexVector& a = ball.center.coords();
  const double u = ball.sigma * std::pow(rng.uniform(), 1.0 / (2.0 * p));

  // A Gaussian projected onto a^perp is Gaussian there, so its direction is
  // uniform on the unit sphere of a^perp.
  ComplexVector w = rng.complex_normal_vector(p + 1);
  w -= a.dot(w) * a;
  w.normalize();
  return ProjectivePoint(std::sqrt(1.0 - u * u) * a + u * w);
}

ComplexMatrix random_unitary(int n, RandomStream& rng) {
  if (n < 1) throw DomainError("unitary size must be at least 1");
  const ComplexMatrix z = rng.complex_normal_matrix(n, n);
  Eigen::HouseholderQR<ComplexMatrix> qr(z);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix& r = qr.matrixQR();
  for (int j = 0; j < n; ++j) {
    const ComplexScalar d = r(j, j);
    const double mag = std::abs(d);
    if (mag > 0.0) q.col(j) *= d / mag;
  }
  return q;
}

double distance_to_coordinate_subspace(const ProjectivePoint& z, int k) {
  const int p = z.dim();
  if (k < 0 || k >= p) throw DomainError("coordinate subspace index out of range");
  return std::min(1.0, z.coords().tail(p - k).norm());
}

double tube_volume_linear_subspace_exact(int p, int m, double eps) {
  if (m <= 0 || m > p) throw DomainError("tube codimension must satisfy 0 < m <= p");
  if (!(eps > 0.0 && eps <= 1.0)) throw DomainError("tube radius must lie in (0, 1]");

  // integral_0^eps (1-u^2)^{p-m} u^{2m-1} du by binomial expansion in u^2.
  const int q = p - m;
  double sum = 0.0;
  double binom = 1.0;
  for (int k = 0; k <= q; ++k) {
    const int e = 2 * m + 2 * k;
    const double term = binom * std::pow(eps, e) / e;
    sum += (k % 2 == 0) ? term : -term;
    binom = binom * (q - k) / (k + 1);
  }
  const double log_scale = std::log(2.0 * M_PI) + log_projective_volume(q) +
                           log_projective_volume(m - 1) - log_projective_volume(p);
  return std::clamp(std::exp(log_scale) * sum, 0.0, 1.0);
}

}  // namespace smoothcond
