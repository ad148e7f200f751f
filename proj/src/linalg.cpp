#include "smoothcond/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "smoothcond/errors.hpp"

namespace smoothcond {
namespace {

void require_valid(const ComplexMatrix& a) {
  if (a.rows() < 1 || a.cols() < 1) throw DomainError("matrix must be non-empty");
  if (a.rows() > kMaxDimension || a.cols() > kMaxDimension)
    throw DomainError("matrix dimension exceeds " + std::to_string(kMaxDimension));
  if (!a.allFinite()) throw DomainError("matrix has non-finite entries");
}

void require_tall(const ComplexMatrix& a) {
  if (a.rows() < a.cols())
    throw DimensionMismatch("expected rows >= cols, got " + std::to_string(a.rows()) + "x" +
                      std::to_string(a.cols()));
}

// Guard for the triangular solves: keep pivots away from zero the way
// LAPACK's xTREVC does, so nearly repeated eigenvalues give large but
// finite components instead of NaN.
ComplexScalar guarded(ComplexScalar d, double floor) {
  return std::abs(d) < floor ? ComplexScalar(floor, 0.0) : d;
}

}  // namespace

SVDResult svd(const ComplexMatrix& a) {
  require_valid(a);
  Eigen::JacobiSVD<ComplexMatrix> jsvd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return {jsvd.matrixU(), jsvd.singularValues(), jsvd.matrixV()};
}

double smallest_singular_value(const ComplexMatrix& a) {
  require_valid(a);
  require_tall(a);
  const Eigen::VectorXd s = Eigen::JacobiSVD<ComplexMatrix>(a).singularValues();
  return s(s.size() - 1);
}

double spectral_norm(const ComplexMatrix& a) {
  require_valid(a);
  return Eigen::JacobiSVD<ComplexMatrix>(a).singularValues()(0);
}

ComplexMatrix pseudo_inverse(const ComplexMatrix& a) {
  require_tall(a);
  const SVDResult d = svd(a);
  const Eigen::Index n = a.cols();
  if (d.singular_values(n - 1) <= kRankTolerance * a.norm())
    throw IllPosedError("pseudo-inverse of a rank-deficient matrix");
  const Eigen::VectorXd inv = d.singular_values.cwiseInverse();
  return d.v * inv.asDiagonal() * d.u.leftCols(n).adjoint();
}

EigenResult eigen(const ComplexMatrix& a) {
  require_valid(a);
  if (a.rows() != a.cols()) throw DimensionMismatch("eigen requires a square matrix");
  const Eigen::Index n = a.rows();

  Eigen::ComplexSchur<ComplexMatrix> schur(a);
  if (schur.info() != Eigen::Success)
    throw ConvergenceError("shifted QR iteration did not converge for " + std::to_string(n) +
                           "x" + std::to_string(n) + " matrix within " +
                           std::to_string(schur.getMaxIterations()) + " iterations");
  const ComplexMatrix& t = schur.matrixT();
  const ComplexMatrix& q = schur.matrixU();

  const double floor =
      std::max(std::numeric_limits<double>::epsilon() * t.norm(), std::numeric_limits<double>::min());

  EigenResult out;
  out.eigenvalues = t.diagonal();
  out.right_vectors.resize(n, n);
  out.left_vectors.resize(n, n);

  for (Eigen::Index k = 0; k < n; ++k) {
    const ComplexScalar lambda = t(k, k);

    // T v = lambda v: v_k = 1, back-substitute upwards.
    ComplexVector v = ComplexVector::Zero(n);
    v(k) = 1.0;
    for (Eigen::Index j = k - 1; j >= 0; --j) {
      const ComplexScalar rhs = (t.row(j).segment(j + 1, k - j) * v.segment(j + 1, k - j)).value();
      v(j) = -rhs / guarded(t(j, j) - lambda, floor);
    }

    // T^H w = conj(lambda) w: w_k = 1, forward-substitute downwards.
    ComplexVector w = ComplexVector::Zero(n);
    w(k) = 1.0;
    for (Eigen::Index j = k + 1; j < n; ++j) {
      const ComplexScalar rhs = t.col(j).segment(k, j - k).dot(w.segment(k, j - k));
      w(j) = rhs / guarded(std::conj(lambda - t(j, j)), floor);
    }

    out.right_vectors.col(k) = (q * v).normalized();
    out.left_vectors.col(k) = (q * w).normalized();
  }

  out.min_gap = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j)
      out.min_gap = std::min(out.min_gap, std::abs(out.eigenvalues(i) - out.eigenvalues(j)));
  return out;
}

ComplexScalar evaluate_polynomial(const std::vector<ComplexScalar>& coeffs, ComplexScalar x) {
  ComplexScalar acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::vector<ComplexScalar> companion_roots(const std::vector<ComplexScalar>& coeffs) {
  if (coeffs.size() < 2) throw DomainError("polynomial degree must be at least 1");
  for (const auto& c : coeffs)
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
      throw DomainError("polynomial has non-finite coefficients");
  const ComplexScalar lead = coeffs.back();
  if (lead == 0.0) throw DomainError("leading coefficient is zero");

  const auto degree = static_cast<Eigen::Index>(coeffs.size()) - 1;
  if (degree > kMaxDimension) throw DomainError("polynomial degree exceeds kMaxDimension");

  ComplexMatrix companion = ComplexMatrix::Zero(degree, degree);
  companion.diagonal(-1).setOnes();
  for (Eigen::Index k = 0; k < degree; ++k) companion(k, degree - 1) = -coeffs[k] / lead;

  Eigen::ComplexEigenSolver<ComplexMatrix> solver(companion, false);
  if (solver.info() != Eigen::Success)
    throw ConvergenceError("companion matrix eigenvalues did not converge");

  std::vector<ComplexScalar> derivative(coeffs.size() - 1);
  for (std::size_t k = 1; k < coeffs.size(); ++k) derivative[k - 1] = static_cast<double>(k) * coeffs[k];

  std::vector<ComplexScalar> roots(solver.eigenvalues().data(),
                                   solver.eigenvalues().data() + degree);
  for (auto& r : roots) {
    double residual = std::abs(evaluate_polynomial(coeffs, r));
    for (int step = 0; step < 3 && residual > 0.0; ++step) {
      const ComplexScalar slope = evaluate_polynomial(derivative, r);
      if (slope == 0.0) break;
      const ComplexScalar next = r - evaluate_polynomial(coeffs, r) / slope;
      const double next_residual = std::abs(evaluate_polynomial(coeffs, next));
      if (!(next_residual < residual)) break;
      r = next;
      residual = next_residual;
    }
  }
  return roots;
}

ComplexScalar sylvester_resultant(const std::vector<ComplexScalar>& p,
                                  const std::vector<ComplexScalar>& q) {
  if (p.size() < 2 || q.size() < 2) throw DomainError("resultant needs degrees >= 1");
  const auto n = static_cast<Eigen::Index>(p.size()) - 1;
  const auto m = static_cast<Eigen::Index>(q.size()) - 1;
  ComplexMatrix s = ComplexMatrix::Zero(n + m, n + m);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index k = 0; k <= n; ++k) s(i, i + k) = p[n - k];
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index k = 0; k <= m; ++k) s(m + i, i + k) = q[m - k];
  if (!s.allFinite()) throw DomainError("resultant input has non-finite coefficients");
  return s.fullPivLu().determinant();
}

}  // namespace smoothcond
