#pragma once

// Test-only reference implementations, kept independent of the library.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using cd = std::complex<double>;

// One-sample Kolmogorov-Smirnov statistic.
inline double ks_statistic(std::vector<double> xs, const std::function<double(double)>& cdf) {
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = cdf(xs[i]);
    d = std::max({d, (i + 1) / n - f, f - i / n});
  }
  return d;
}

// Two-sample KS statistic.
inline double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(double(i) / a.size() - double(j) / b.size()));
  }
  return d;
}

inline double simpson(const std::function<double(double)>& f, double a, double b, int n = 2000) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

// det(xI - A), ascending coefficients, from trace power sums via Newton's
// identities.
inline std::vector<cd> char_poly_newton(const Eigen::MatrixXcd& a) {
  const int n = static_cast<int>(a.rows());
  std::vector<cd> power_sums(n + 1);
  Eigen::MatrixXcd ak = Eigen::MatrixXcd::Identity(n, n);
  for (int k = 1; k <= n; ++k) {
    ak = ak * a;
    power_sums[k] = ak.trace();
  }
  // e_k elementary symmetric functions
  std::vector<cd> e(n + 1);
  e[0] = 1.0;
  for (int k = 1; k <= n; ++k) {
    cd s = 0.0;
    for (int i = 1; i <= k; ++i) s += (i % 2 ? 1.0 : -1.0) * e[k - i] * power_sums[i];
    e[k] = s / double(k);
  }
  std::vector<cd> c(n + 1);
  for (int k = 0; k <= n; ++k) c[n - k] = (k % 2 ? -1.0 : 1.0) * e[k];
  return c;
}

// Durand-Kerner on a monic-normalized polynomial (ascending coefficients).
inline std::vector<cd> durand_kerner(std::vector<cd> c, int iterations = 2000) {
  const int n = static_cast<int>(c.size()) - 1;
  const cd lead = c[n];
  for (auto& x : c) x /= lead;
  double radius = 0.0;
  for (int k = 0; k < n; ++k) radius = std::max(radius, std::abs(c[k]));
  radius += 1.0;
  std::vector<cd> z(n);
  for (int k = 0; k < n; ++k) z[k] = radius * std::polar(1.0, 2.0 * M_PI * k / n + 0.4);
  auto eval = [&](cd x) {
    cd v = c[n];
    for (int k = n - 1; k >= 0; --k) v = v * x + c[k];
    return v;
  };
  for (int it = 0; it < iterations; ++it) {
    double change = 0.0;
    for (int i = 0; i < n; ++i) {
      cd denom = 1.0;
      for (int j = 0; j < n; ++j)
        if (j != i) denom *= z[i] - z[j];
      const cd step = eval(z[i]) / denom;
      z[i] -= step;
      change = std::max(change, std::abs(step));
    }
    if (change < 1e-15 * radius) break;
  }
  return z;
}

// Central differences of a holomorphic map C^k -> C^m, columnwise.
inline Eigen::MatrixXcd finite_difference_jacobian(
    const std::function<Eigen::VectorXcd(const Eigen::VectorXcd&)>& f, const Eigen::VectorXcd& x,
    double h = 1e-6) {
  const Eigen::VectorXcd fx = f(x);
  Eigen::MatrixXcd j(fx.size(), x.size());
  for (Eigen::Index k = 0; k < x.size(); ++k) {
    Eigen::VectorXcd xp = x, xm = x;
    xp(k) += h;
    xm(k) -= h;
    j.col(k) = (f(xp) - f(xm)) / (2.0 * h);
  }
  return j;
}

}  // namespace oracle
