#include "smoothcond/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

#include "smoothcond/condition.hpp"
#include "smoothcond/errors.hpp"

namespace smoothcond {
namespace {

void require_sigma(double sigma) {
  if (!(sigma > 0.0 && sigma <= 1.0)) throw DomainError("sigma must lie in (0, 1]");
}

void require_positive(double x, const char* what) {
  if (!(x > 0.0)) throw DomainError(std::string(what) + " must be positive");
}

// x ln x with 0 ln 0 = 0.
double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

struct PolyShape {
  double n_proj;  // N
  double bezout;  // D
};

PolyShape poly_shape(int n, const std::vector<int>& degrees) {
  if (n < 1 || degrees.size() != static_cast<std::size_t>(n))
    throw DomainError("need n >= 1 and exactly n degrees");
  std::int64_t total = 0;
  std::int64_t bezout = 1;
  for (int d : degrees) {
    if (d < 1) throw DomainError("degrees must be positive");
    total += binomial(n + d, d);
    if (__builtin_mul_overflow(bezout, static_cast<std::int64_t>(d), &bezout))
      throw DomainError("Bezout number overflows");
  }
  return {static_cast<double>(total - 1), static_cast<double>(bezout)};
}

}  // namespace

BoundInput::BoundInput(int p_, int m_, double deg, double s, double t_)
    : p(p_), m(m_), deg_sigma(deg), sigma(s), t(t_) {
  if (!(0 < m && m < p)) throw DomainError("need 0 < m < p");
  if (!(deg_sigma >= 1.0)) throw DomainError("degree of Sigma must be >= 1");
  require_sigma(sigma);
  require_positive(t, "threshold t");
}

BoundValue BoundValue::from_log(double log_value, bool valid) {
  return {log_value, std::clamp(std::exp(log_value), 0.0, 1.0), valid};
}

double log_K(int p, int m) {
  if (!(0 < m && m < p)) throw DomainError("log_K needs 0 < m < p");
  return std::log(2.0) + 3.0 * (xlogx(p) - xlogx(m) - xlogx(p - m));
}

BoundValue tail_bound_theorem1(const BoundInput& in) {
  const int codim = in.p - in.m;
  const double inv_ts = 1.0 / (in.t * in.sigma);
  const double log_v = log_K(in.p, in.m) + std::log(in.deg_sigma) + 2.0 * codim * std::log(inv_ts) +
                       2.0 * in.m * std::log1p(static_cast<double>(in.p) / codim * inv_ts);
  const bool valid = in.t >= in.p * std::sqrt(2.0) / codim;
  return BoundValue::from_log(log_v, valid);
}

double expectation_bound_theorem1(int p, int m, double deg_sigma, double sigma) {
  const BoundInput check(p, m, deg_sigma, sigma, 1.0);
  const int codim = p - m;
  return (log_K(p, m) + std::log(deg_sigma) + 3.0) / (2.0 * codim) +
         std::log(static_cast<double>(p) * m / codim) + 2.0 * std::log(1.0 / sigma);
}

BoundValue tail_bound_hypersurface(int p, double d, double sigma, double t) {
  if (p < 2) throw DomainError("hypersurface bound needs p >= 2");
  if (!(d >= 1.0)) throw DomainError("hypersurface degree must be >= 1");
  require_sigma(sigma);
  require_positive(t, "threshold t");
  const double inv_ts = 1.0 / (t * sigma);
  const double log_v = std::log(2.0) + 3.0 * std::log(static_cast<double>(p)) + 3.0 + std::log(d) +
                       2.0 * std::log(inv_ts) + 2.0 * (p - 1) * std::log1p(p * inv_ts);
  return BoundValue::from_log(log_v, t >= p * std::sqrt(2.0));
}

double expectation_bound_hypersurface(int p, double d, double sigma) {
  if (p < 1) throw DomainError("hypersurface bound needs p >= 1");
  if (!(d >= 1.0)) throw DomainError("hypersurface degree must be >= 1");
  require_sigma(sigma);
  return 3.5 * std::log(static_cast<double>(p)) + 0.5 * std::log(d) + 4.0 + 2.0 * std::log(1.0 / sigma);
}

double expectation_from_tail_general(double alpha, double t0, double k) {
  require_positive(alpha, "alpha");
  require_positive(t0, "t0");
  require_positive(k, "k");
  return std::log(t0) + (std::log(k) + 1.0) / alpha;
}

double expectation_from_tail(double alpha, double t0, double k) {
  const double general = expectation_from_tail_general(alpha, t0, k);
  if (std::log(t0) <= std::log(k) / alpha) return std::min(general, (std::log(k) + 1.0) / alpha);
  return general;
}

double bound_prop_square(int n, double sigma) {
  if (n < 1) throw DomainError("n must be >= 1");
  require_sigma(sigma);
  return 7.5 * std::log(static_cast<double>(n)) + 2.0 * std::log(1.0 / sigma) + 4.0;
}

double bound_prop_moore_penrose(int n, double sigma) {
  if (n < 1) throw DomainError("n must be >= 1");
  require_sigma(sigma);
  const double ln_n = std::log(static_cast<double>(n));
  return (n + 1.5) * ln_n + n * std::log(2.0) + 2.0 + (n + 1) * std::log(1.0 / sigma);
}

double bound_mp_remark(int l, int n, double sigma) {
  if (n < 1 || l < n) throw DomainError("need l >= n >= 1");
  require_sigma(sigma);
  return 3.5 * std::log(static_cast<double>(l)) + 4.0 * std::log(static_cast<double>(n)) + 4.0 +
         2.0 * std::log(1.0 / sigma);
}

double bound_prop_eigen(int n, double sigma) {
  if (n < 1) throw DomainError("n must be >= 1");
  require_sigma(sigma);
  return 8.0 * std::log(static_cast<double>(n)) + 2.0 * std::log(1.0 / sigma) + 5.0;
}

PolySysBound bound_polysys(int n, const std::vector<int>& degrees, double sigma, double t) {
  require_sigma(sigma);
  require_positive(t, "threshold t");
  const PolyShape s = poly_shape(n, degrees);
  const double big_n = s.n_proj;
  const double inv_ts = 1.0 / (t * sigma);
  const double log_tail = std::log(4.0) + 3.0 * std::log(big_n) + 3.0 + std::log(static_cast<double>(n)) +
                          2.0 * std::log(s.bezout) + 2.0 * std::log(inv_ts) +
                          2.0 * (big_n - 1.0) * std::log1p(big_n * inv_ts);
  const double expectation = 3.5 * std::log(big_n) + std::log(s.bezout) +
                             0.5 * std::log(static_cast<double>(n)) + 5.0 + 2.0 * std::log(1.0 / sigma);
  return {BoundValue::from_log(log_tail, t >= big_n * std::sqrt(2.0)), expectation};
}

double shub_smale_tail(int n, const std::vector<int>& degrees, double eps) {
  if (n <= 1) throw DomainError("the average-case bound is stated for n > 1");
  if (eps < 0.0) throw DomainError("eps must be nonnegative");
  const PolyShape s = poly_shape(n, degrees);
  const double nd = n;
  return std::pow(eps, 4) * nd * nd * nd * (nd + 1.0) * s.n_proj * (s.n_proj - 1.0) * s.bezout;
}

double binomial_entropy(double z) {
  if (!(z >= 0.0 && z <= 1.0)) throw DomainError("entropy argument must lie in [0, 1]");
  return -xlogx(z) - xlogx(1.0 - z);
}

}  // namespace smoothcond
