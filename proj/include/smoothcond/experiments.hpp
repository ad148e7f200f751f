#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "smoothcond/bounds.hpp"
#include "smoothcond/condition.hpp"
#include "smoothcond/projective.hpp"

namespace smoothcond {

enum class FamilyKind { square, moore_penrose, eigen, binary_form };

/// A problem family together with the geometry of its ill-posed set in the
/// ambient projective space of (normalized) inputs.
struct ProblemFamily {
  FamilyKind kind = FamilyKind::square;
  int n = 0;  // matrix columns (square, moore_penrose, eigen)
  int l = 0;  // matrix rows (moore_penrose)
  int d = 0;  // degree (binary_form)

  static ProblemFamily square(int n);
  static ProblemFamily moore_penrose(int l, int n);
  static ProblemFamily eigen(int n);
  static ProblemFamily binary_form(int d);

  /// p: inputs are points of CP^p.
  int ambient_dim() const;
  /// m = dim Sigma.
  int sigma_dim() const;
  /// Degree of Sigma (or of a hypersurface containing it) used for bounds.
  double sigma_degree() const;
  bool is_hypersurface() const { return sigma_dim() == ambient_dim() - 1; }
  /// c with C(z) <= c / d_P(z, Sigma). Wilkinson's bound gives sqrt(2) for
  /// the eigenvalue family; the other condition numbers are conic (c = 1)
  /// or bounded by a conic one with c = 1.
  double condition_scale() const;
  /// Bound on E ln C over B(a, sigma) for this family.
  double expectation_bound(double sigma) const;

  std::string name() const;
};

enum class CenterKind { identity, near_singular, random, file };

struct CenterSpec {
  CenterKind kind = CenterKind::identity;
  std::string path;          // CenterKind::file
  std::uint64_t seed = 0;    // CenterKind::random
  double delta = 1e-3;       // CenterKind::near_singular
};

ProjectivePoint make_center(const ProblemFamily& family, const CenterSpec& center);

/// ball: uniform on B(center, sigma). projective: uniform on CP^p, ignoring
/// the center (only meaningful with sigma = 1).
enum class Sampler { ball, projective };

struct ExperimentConfig {
  ProblemFamily family;
  CenterSpec center;
  double sigma = 1.0;
  std::vector<double> t_grid;
  std::int64_t trials = 100000;
  std::uint64_t seed = 42;
  double confidence = 0.99;
  double stderr_multiplier = 3.0;
  Sampler sampler = Sampler::ball;
  /// Worker threads; 0 resolves from CONDNUM_THREADS or the hardware.
  /// Results never depend on this value.
  unsigned threads = 0;

  void validate(bool needs_t_grid) const;
};

using Instance = std::variant<ComplexMatrix, PolySystem>;

/// Interpret the coordinates of z as an input of the family: row-major
/// matrix entries, or Weyl-orthonormal coefficients of a binary form
/// (coefficient of X^alpha is z_alpha sqrt(binom(d, alpha)), so ||f|| = 1).
Instance decode(const ProjectivePoint& z, const ProblemFamily& family);

/// Inverse of decode on coordinates (not normalized).
ComplexVector encode(const Instance& instance, const ProblemFamily& family);

ConditionValue evaluate_condition(const Instance& instance, const ProblemFamily& family);

struct Interval {
  double lower;
  double upper;
};

/// Standard normal quantile.
double normal_quantile(double prob);

/// Wilson score interval for a binomial proportion.
Interval wilson_interval(std::int64_t successes, std::int64_t trials, double confidence);

struct TailPoint {
  double t = 0.0;
  std::int64_t count = 0;
  double empirical_prob = 0.0;
  double wilson_lower = 0.0;
  double wilson_upper = 0.0;
  BoundValue bound;                              // general smoothed tail bound
  std::optional<BoundValue> hypersurface_bound;  // hypersurface families only
  bool judged = false;  // bound valid and < 1
  bool pass = true;
};

struct ExpectationSummary {
  double mean_log_cond = 0.0;
  double std_error = 0.0;
  std::int64_t finite_count = 0;
  std::int64_t infinite_count = 0;
  double bound_value = 0.0;
  bool pass = false;
};

struct ExperimentReport {
  ExperimentConfig config;
  std::string seed_derivation;
  std::vector<TailPoint> tail;
  std::optional<ExpectationSummary> expectation;
  bool pass = true;
  double runtime_seconds = 0.0;  // not part of the serialized report
};

/// Raw per-trial ln C values (+inf for ill-posed draws), in trial order.
std::vector<double> sample_log_conditions(const ExperimentConfig& cfg);

ExperimentReport run_tail_experiment(const ExperimentConfig& cfg);
ExperimentReport run_expectation_experiment(const ExperimentConfig& cfg);

/// Tail summary of an existing sample; used by run_tail_experiment.
std::vector<TailPoint> summarize_tail(const std::vector<double>& log_conditions,
                                      const ExperimentConfig& cfg);

ExpectationSummary summarize_expectation(const std::vector<double>& log_conditions,
                                         const ExperimentConfig& cfg);

struct PatchVolumeReport {
  double eps = 0.0;
  std::int64_t trials = 0;
  std::uint64_t seed = 0;
  double confidence = 0.99;
  double estimate = 0.0;  // estimates v(V cap B(y, eps)) / v(P^2)
  double ci_lower = 0.0;
  double ci_upper = 0.0;
  double floor = 0.0;    // (1/2) eps^4
  double ceiling = 0.0;  // deg(V) binom(3, 2) eps^4 = 6 eps^4
  std::int64_t intersections = 0;
  std::int64_t redraws = 0;
  bool pass = false;
};

/// Integral-geometry estimate of the volume of the patch of
/// V = {det = 0} (2x2 matrices, a quadric in CP^3) inside B(y, eps): the mean
/// number of points of V cap B(y, eps) on a Haar-random projective line.
PatchVolumeReport patch_volume_via_lines(const ProjectivePoint& y, double eps, std::int64_t trials,
                                         std::uint64_t seed, double confidence = 0.99,
                                         unsigned threads = 0);

/// Worker count: `requested` if nonzero, else CONDNUM_THREADS, else the
/// hardware concurrency.
unsigned resolve_threads(unsigned requested);

}  // namespace smoothcond
