#include "smoothcond/condition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "smoothcond/errors.hpp"

namespace smoothcond {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) throw DomainError("integer overflow in exact arithmetic");
  return out;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_add_overflow(a, b, &out)) throw DomainError("integer overflow in exact arithmetic");
  return out;
}

ComplexScalar monomial_value(const Exponent& alpha, const ComplexVector& x) {
  ComplexScalar v = 1.0;
  for (std::size_t k = 0; k < alpha.size(); ++k)
    for (int e = 0; e < alpha[k]; ++e) v *= x(static_cast<Eigen::Index>(k));
  return v;
}

void monomials_rec(int remaining, std::size_t pos, Exponent& cur, std::vector<Exponent>& out) {
  if (pos + 1 == cur.size()) {
    cur[pos] = remaining;
    out.push_back(cur);
    return;
  }
  for (int e = remaining; e >= 0; --e) {
    cur[pos] = e;
    monomials_rec(remaining - e, pos + 1, cur, out);
  }
}

void require_same_shape(const PolySystem& f, const PolySystem& g) {
  if (f.n != g.n || f.degrees != g.degrees)
    throw DimensionMismatch("polynomial systems have different shapes");
}

// Columns 1..n of a unitary whose first column is zeta.
ComplexMatrix orthonormal_completion(const ComplexVector& zeta) {
  Eigen::HouseholderQR<ComplexMatrix> qr{ComplexMatrix(zeta)};
  const ComplexMatrix q = qr.householderQ();
  return q.rightCols(zeta.size() - 1);
}

}  // namespace

ConditionValue ConditionValue::finite(double v) {
  if (!std::isfinite(v)) return infinite();
  return {v, std::log(v), false};
}

ConditionValue ConditionValue::infinite() { return {kInf, kInf, true}; }

// ---------------------------------------------------------------------------
// PolySystem

std::int64_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::int64_t r = 1;
  for (int i = 1; i <= k; ++i) {
    // r * (n - k + i) is divisible by i after the multiplication.
    r = checked_mul(r, n - k + i) / i;
  }
  return r;
}

double multinomial(const Exponent& alpha) {
  int d = 0;
  double log_v = 0.0;
  for (int a : alpha) {
    d += a;
    log_v -= std::lgamma(a + 1.0);
  }
  log_v += std::lgamma(d + 1.0);
  return std::round(std::exp(log_v));
}

std::vector<Exponent> monomials(int n, int d) {
  if (n < 0 || d < 0) throw DomainError("monomials need n >= 0 and d >= 0");
  std::vector<Exponent> out;
  Exponent cur(static_cast<std::size_t>(n) + 1, 0);
  monomials_rec(d, 0, cur, out);
  return out;
}

void PolySystem::validate() const {
  if (n < 1) throw DomainError("polynomial system needs n >= 1");
  if (degrees.size() != static_cast<std::size_t>(n) || equations.size() != static_cast<std::size_t>(n))
    throw DomainError("polynomial system needs exactly n degrees and n equations");
  for (int i = 0; i < n; ++i) {
    if (degrees[i] < 1) throw DomainError("equation degrees must be positive");
    bool any_nonzero = false;
    for (const auto& [alpha, c] : equations[i]) {
      if (alpha.size() != static_cast<std::size_t>(n) + 1)
        throw DomainError("exponent tuple must have length n+1");
      if (std::any_of(alpha.begin(), alpha.end(), [](int a) { return a < 0; }))
        throw DomainError("negative exponent");
      if (std::accumulate(alpha.begin(), alpha.end(), 0) != degrees[i])
        throw DomainError("exponent tuple does not match equation degree " + std::to_string(degrees[i]));
      if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
        throw DomainError("non-finite coefficient");
      any_nonzero = any_nonzero || c != 0.0;
    }
    if (!any_nonzero) throw DomainError("equation " + std::to_string(i) + " is identically zero");
  }
}

std::int64_t PolySystem::monomial_count(int i) const { return binomial(n + degrees.at(i), degrees.at(i)); }

std::int64_t PolySystem::projective_dimension() const {
  std::int64_t total = 0;
  for (int i = 0; i < n; ++i) total = checked_add(total, monomial_count(i));
  return total - 1;
}

std::int64_t PolySystem::bezout_number() const {
  std::int64_t d = 1;
  for (int di : degrees) d = checked_mul(d, di);
  return d;
}

ComplexVector PolySystem::evaluate(const ComplexVector& x) const {
  if (x.size() != n + 1) throw DimensionMismatch("point has wrong number of coordinates");
  ComplexVector out = ComplexVector::Zero(n);
  for (int i = 0; i < n; ++i)
    for (const auto& [alpha, c] : equations[i]) out(i) += c * monomial_value(alpha, x);
  return out;
}

ComplexMatrix PolySystem::jacobian(const ComplexVector& x) const {
  if (x.size() != n + 1) throw DimensionMismatch("point has wrong number of coordinates");
  ComplexMatrix j = ComplexMatrix::Zero(n, n + 1);
  for (int i = 0; i < n; ++i) {
    for (const auto& [alpha, c] : equations[i]) {
      for (int k = 0; k <= n; ++k) {
        if (alpha[k] == 0) continue;
        Exponent reduced = alpha;
        --reduced[k];
        j(i, k) += c * static_cast<double>(alpha[k]) * monomial_value(reduced, x);
      }
    }
  }
  return j;
}

PolySystem PolySystem::scaled(ComplexScalar factor) const {
  PolySystem out = *this;
  for (auto& eq : out.equations)
    for (auto& [alpha, c] : eq) c *= factor;
  return out;
}

// ---------------------------------------------------------------------------
// Matrix condition numbers

ConditionValue kappa_f(const ComplexMatrix& a) {
  if (a.rows() != a.cols()) throw DimensionMismatch("kappa_f requires a square matrix");
  return kappa_dagger_f(a);
}

ConditionValue kappa_dagger_f(const ComplexMatrix& a) {
  const double fro = a.norm();
  if (fro == 0.0) return ConditionValue::infinite();
  // On the unit Frobenius sphere kappa = 1 / sigma_min; normalizing first
  // makes the value exactly invariant under complex scaling.
  const double smin = smallest_singular_value(a / fro);
  if (smin <= kRankTolerance) return ConditionValue::infinite();
  return ConditionValue::finite(1.0 / smin);
}

ComplexMatrix projection_matrix(const ComplexVector& x, const ComplexVector& y) {
  if (x.size() != y.size()) throw DimensionMismatch("eigenvector lengths differ");
  const ComplexScalar yx = y.dot(x);
  if (std::abs(yx) <= 1e-12 * x.norm() * y.norm())
    throw IllPosedError("y^H x vanishes: eigenvalue is effectively not simple");
  return x * y.adjoint() / yx;
}

ConditionValue kappa_eigen(const ComplexMatrix& a) {
  const double fro = a.norm();
  if (fro == 0.0) return ConditionValue::infinite();
  const ComplexMatrix normalized = a / fro;
  const EigenResult e = eigen(normalized);
  if (e.min_gap <= kEigenGapTolerance) return ConditionValue::infinite();
  double worst = 0.0;
  for (Eigen::Index k = 0; k < normalized.rows(); ++k) {
    ComplexMatrix p;
    try {
      p = projection_matrix(e.right_vectors.col(k), e.left_vectors.col(k));
    } catch (const IllPosedError&) {
      return ConditionValue::infinite();
    }
    worst = std::max(worst, spectral_norm(p));
  }
  return ConditionValue::finite(worst);
}

ComplexScalar char_poly_discriminant(const ComplexMatrix& a) {
  const ComplexVector lambda = eigen(a).eigenvalues;
  ComplexScalar disc = 1.0;
  for (Eigen::Index i = 0; i < lambda.size(); ++i)
    for (Eigen::Index j = i + 1; j < lambda.size(); ++j) {
      const ComplexScalar d = lambda(i) - lambda(j);
      disc *= d * d;
    }
  return disc;
}

std::vector<ComplexScalar> characteristic_polynomial(const ComplexMatrix& a) {
  if (a.rows() != a.cols()) throw DimensionMismatch("characteristic polynomial requires a square matrix");
  const Eigen::Index n = a.rows();
  std::vector<ComplexScalar> c(static_cast<std::size_t>(n) + 1);
  c[n] = 1.0;
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  for (Eigen::Index k = 1; k <= n; ++k) {
    m = a * m;
    m.diagonal().array() += c[n - k + 1];
    c[n - k] = -(a * m).trace() / static_cast<double>(k);
  }
  return c;
}

ComplexScalar char_poly_discriminant_resultant(const ComplexMatrix& a) {
  const std::vector<ComplexScalar> chi = characteristic_polynomial(a);
  const auto n = static_cast<std::int64_t>(chi.size()) - 1;
  if (n < 2) return 1.0;
  std::vector<ComplexScalar> dchi(chi.size() - 1);
  for (std::size_t k = 1; k < chi.size(); ++k) dchi[k - 1] = static_cast<double>(k) * chi[k];
  const double sign = ((n * (n - 1) / 2) % 2 == 0) ? 1.0 : -1.0;
  return sign * sylvester_resultant(chi, dchi);
}

// ---------------------------------------------------------------------------
// Polynomial systems

ComplexScalar weyl_inner_product(const PolySystem& f, const PolySystem& g) {
  require_same_shape(f, g);
  ComplexScalar acc = 0.0;
  for (int i = 0; i < f.n; ++i) {
    for (const auto& [alpha, a] : f.equations[i]) {
      auto it = g.equations[i].find(alpha);
      if (it == g.equations[i].end()) continue;
      acc += a * std::conj(it->second) / multinomial(alpha);
    }
  }
  return acc;
}

double weyl_norm(const PolySystem& f) { return std::sqrt(std::max(0.0, weyl_inner_product(f, f).real())); }

ConditionValue mu_norm_at_zero(const PolySystem& f, const ProjectivePoint& zeta) {
  return mu_norm_at_zero(f, zeta, orthonormal_completion(zeta.coords()));
}

ConditionValue mu_norm_at_zero(const PolySystem& f, const ProjectivePoint& zeta,
                               const ComplexMatrix& tangent_basis) {
  f.validate();
  if (zeta.dim() != f.n) throw DimensionMismatch("zero lives in the wrong projective space");
  if (tangent_basis.rows() != f.n + 1 || tangent_basis.cols() != f.n)
    throw DimensionMismatch("tangent basis must be (n+1) x n");

  const PolySystem unit = f.scaled(1.0 / weyl_norm(f));
  const ComplexVector& z = zeta.coords();
  const double residual = unit.evaluate(z).norm();
  if (residual > 1e-8)
    throw NotAZeroError("point is not a zero of the system (relative residual " +
                        std::to_string(residual) + ")");

  const ComplexMatrix restricted = unit.jacobian(z) * tangent_basis;
  const SVDResult d = svd(restricted);
  const double smin = d.singular_values(d.singular_values.size() - 1);
  if (smin <= kRankTolerance * std::max(1.0, restricted.norm())) return ConditionValue::infinite();

  Eigen::VectorXd weights(f.n);
  for (int i = 0; i < f.n; ++i) weights(i) = std::sqrt(static_cast<double>(f.degrees[i]));
  const ComplexMatrix inverse = d.v * d.singular_values.cwiseInverse().asDiagonal() * d.u.adjoint();
  return ConditionValue::finite(spectral_norm(inverse * weights.asDiagonal()));
}

BinaryFormRoots binary_form_roots(const PolySystem& f) {
  f.validate();
  if (f.n != 1) throw UnsupportedError("binary_form_roots requires n = 1");
  const int d = f.degrees[0];

  // c[k] multiplies X_0^k X_1^{d-k}; in the chart X_1 = 1 this is the
  // ascending coefficient list of f(x, 1).
  std::vector<ComplexScalar> c(static_cast<std::size_t>(d) + 1, 0.0);
  double scale = 0.0;
  for (const auto& [alpha, coef] : f.equations[0]) {
    c[alpha[0]] = coef;
    scale = std::max(scale, std::abs(coef));
  }

  // Vanishing top coefficients are roots at (1:0).
  int at_infinity = 0;
  while (at_infinity < d && std::abs(c[d - at_infinity]) <= 1e-14 * scale) ++at_infinity;

  BinaryFormRoots out;
  if (at_infinity >= 2) out.multiple = true;
  for (int k = 0; k < at_infinity; ++k) out.roots.emplace_back(ProjectivePoint::basis(1, 0));

  c.resize(static_cast<std::size_t>(d - at_infinity) + 1);
  if (c.size() >= 2) {
    for (const ComplexScalar& x : companion_roots(c)) {
      ComplexVector v(2);
      v << x, 1.0;
      out.roots.emplace_back(v);
    }
  }

  for (std::size_t i = 0; i < out.roots.size() && !out.multiple; ++i)
    for (std::size_t j = i + 1; j < out.roots.size(); ++j)
      if (projective_distance(out.roots[i], out.roots[j]) <= kRootCoincidence) {
        out.multiple = true;
        break;
      }
  return out;
}

ConditionValue mu_norm_system(const PolySystem& f) {
  if (f.n != 1)
    throw UnsupportedError("mu_norm_system supports binary forms only (n = 1); use mu_norm_at_zero "
                           "with a known zero for n >= 2");
  const BinaryFormRoots r = binary_form_roots(f);
  if (r.multiple) return ConditionValue::infinite();
  double worst = 0.0;
  for (const auto& zeta : r.roots) {
    const ConditionValue mu = mu_norm_at_zero(f, zeta);
    if (mu.ill_posed) return mu;
    worst = std::max(worst, mu.value);
  }
  return ConditionValue::finite(worst);
}

DiscriminantDegree discriminant_degree_bound(const std::vector<int>& degrees) {
  if (degrees.empty()) throw DomainError("need at least one degree");
  const auto n = static_cast<std::int64_t>(degrees.size());
  std::int64_t bezout = 1;
  std::int64_t sum_d = 0;
  for (int d : degrees) {
    if (d < 1) throw DomainError("degrees must be positive");
    bezout = checked_mul(bezout, d);
    sum_d += d;
  }
  // (1 + deg(g) * sum 1/d_i) * D = D + deg(g) * sum D/d_i, all integers.
  const std::int64_t deg_g = 1 - n + sum_d;
  std::int64_t sum_quot = 0;
  for (int d : degrees) sum_quot = checked_add(sum_quot, bezout / d);
  const std::int64_t exact = checked_add(bezout, checked_mul(deg_g, sum_quot));
  const std::int64_t crude = checked_mul(checked_mul(2 * n, bezout), bezout);
  return {exact, crude};
}

}  // namespace smoothcond
