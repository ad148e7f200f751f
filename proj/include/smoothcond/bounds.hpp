#pragma once

#include <vector>

namespace smoothcond {

/// Parameters shared by the smoothed tail bounds.
///
/// Sigma is a pure-dimensional ill-posed set of dimension m and degree
/// deg_sigma inside CP^p; probabilities are over the ball of radius sigma
/// and the event is C(z) >= t.
struct BoundInput {
  BoundInput(int p, int m, double deg_sigma, double sigma, double t);

  int p;
  int m;
  double deg_sigma;
  double sigma;
  double t;
};

/// A probability bound. `value` is exp(log_value) clamped to [0, 1];
/// `valid` records whether t meets the threshold under which the bound is
/// proved (evaluated either way so sweeps can show the invalid region).
struct BoundValue {
  double log_value = 0.0;
  double value = 0.0;
  bool valid = false;

  static BoundValue from_log(double log_value, bool valid);
};

/// ln K(p, m) with K(p, m) = 2 p^{3p} / (m^{3m} (p-m)^{3(p-m)}).
double log_K(int p, int m);

/// Smoothed tail bound for a conic condition number with ill-posed set of
/// dimension m and degree deg. Valid for t >= p sqrt(2) / (p - m).
BoundValue tail_bound_theorem1(const BoundInput& in);

/// Bound on E ln C over B(a, sigma) matching tail_bound_theorem1.
double expectation_bound_theorem1(int p, int m, double deg_sigma, double sigma);

/// Tail bound when Sigma is contained in a degree-d hypersurface of CP^p.
/// Valid for t >= p sqrt(2).
BoundValue tail_bound_hypersurface(int p, double d, double sigma, double t);
double expectation_bound_hypersurface(int p, double d, double sigma);

/// E ln X <= ln t0 + (ln k + 1) / alpha whenever Prob{X >= t} <= k t^{-alpha}
/// for t >= t0.
double expectation_from_tail_general(double alpha, double t0, double k);

/// As above, but when t0 <= k^{1/alpha} the bound (ln k + 1) / alpha also
/// holds and the smaller of the two is returned.
double expectation_from_tail(double alpha, double t0, double k);

/// E ln kappa_F for n x n matrices.
double bound_prop_square(int n, double sigma);

/// limsup over l -> infinity of E ln kappa_F^dagger for l x n matrices.
double bound_prop_moore_penrose(int n, double sigma);

/// E ln kappa^dagger for l x n matrices via the hypersurface det(top n rows).
double bound_mp_remark(int l, int n, double sigma);

/// E ln kappa_eigen for n x n matrices.
double bound_prop_eigen(int n, double sigma);

struct PolySysBound {
  BoundValue tail;
  double expectation;
};

/// Smoothed bounds for mu_norm on H_d with degrees d_1..d_n; the tail part
/// is valid for t >= N sqrt(2).
PolySysBound bound_polysys(int n, const std::vector<int>& degrees, double sigma, double t);

/// Average-case tail eps^4 n^3 (n+1) N (N-1) D for Prob{mu_norm > 1/eps}.
double shub_smale_tail(int n, const std::vector<int>& degrees, double eps);

/// -z ln z - (1-z) ln(1-z), extended by 0 at z = 0 and z = 1.
double binomial_entropy(double z);

}  // namespace smoothcond
