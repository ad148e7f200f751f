#include "smoothcond/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <string>
#include <thread>

#include "smoothcond/errors.hpp"
#include "smoothcond/json_io.hpp"

namespace smoothcond {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Runs body(i) for i in [0, count) on `threads` workers. Each index is
// handled exactly once; callers write results into slot i, so the outcome
// does not depend on scheduling.
template <typename Body>
void parallel_for(std::int64_t count, unsigned threads, Body&& body) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::int64_t>(1, count))));
  if (threads == 1) {
    for (std::int64_t i = 0; i < count; ++i) body(i);
    return;
  }
  constexpr std::int64_t kChunk = 256;
  std::atomic<std::int64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned w = 0; w < threads; ++w) {
    pool.emplace_back([&] {
      try {
        for (;;) {
          const std::int64_t begin = next.fetch_add(kChunk);
          if (begin >= count) break;
          const std::int64_t end = std::min(count, begin + kChunk);
          for (std::int64_t i = begin; i < end; ++i) body(i);
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(count);
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

ComplexMatrix reshape_row_major(const ComplexVector& coords, int rows, int cols) {
  ComplexMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = coords(i * cols + j);
  return m;
}

int matrix_rows(const ProblemFamily& f) { return f.kind == FamilyKind::moore_penrose ? f.l : f.n; }

ComplexMatrix padded_diagonal(const ProblemFamily& f, double last) {
  ComplexMatrix m = ComplexMatrix::Zero(matrix_rows(f), f.n);
  for (int i = 0; i < f.n; ++i) m(i, i) = 1.0;
  m(f.n - 1, f.n - 1) = last;
  return m;
}

const char* kind_name(FamilyKind k) {
  switch (k) {
    case FamilyKind::square: return "square";
    case FamilyKind::moore_penrose: return "mp";
    case FamilyKind::eigen: return "eigen";
    case FamilyKind::binary_form: return "binary";
  }
  return "?";
}

}  // namespace

// ---------------------------------------------------------------------------
// Problem families

ProblemFamily ProblemFamily::square(int n) {
  if (n < 2) throw DomainError("square family needs n >= 2");
  return {FamilyKind::square, n, n, 0};
}

ProblemFamily ProblemFamily::moore_penrose(int l, int n) {
  if (n < 2 || l < n) throw DomainError("Moore-Penrose family needs l >= n >= 2");
  return {FamilyKind::moore_penrose, n, l, 0};
}

ProblemFamily ProblemFamily::eigen(int n) {
  if (n < 2) throw DomainError("eigen family needs n >= 2");
  return {FamilyKind::eigen, n, n, 0};
}

ProblemFamily ProblemFamily::binary_form(int d) {
  if (d < 2) throw DomainError("binary form family needs d >= 2");
  return {FamilyKind::binary_form, 1, 0, d};
}

int ProblemFamily::ambient_dim() const {
  switch (kind) {
    case FamilyKind::square:
    case FamilyKind::eigen: return n * n - 1;
    case FamilyKind::moore_penrose: return l * n - 1;
    case FamilyKind::binary_form: return d;
  }
  return 0;
}

int ProblemFamily::sigma_dim() const {
  switch (kind) {
    case FamilyKind::moore_penrose: return l * n - l + n - 2;
    default: return ambient_dim() - 1;
  }
}

double ProblemFamily::sigma_degree() const {
  switch (kind) {
    case FamilyKind::square: return n;
    case FamilyKind::moore_penrose: return static_cast<double>(binomial(l, n - 1));
    case FamilyKind::eigen: return static_cast<double>(n) * n - n;
    case FamilyKind::binary_form: return 2.0 * d;
  }
  return 0.0;
}

double ProblemFamily::condition_scale() const { return kind == FamilyKind::eigen ? std::sqrt(2.0) : 1.0; }

double ProblemFamily::expectation_bound(double sigma) const {
  switch (kind) {
    case FamilyKind::square: return bound_prop_square(n, sigma);
    case FamilyKind::moore_penrose:
      return expectation_bound_theorem1(ambient_dim(), sigma_dim(), sigma_degree(), sigma);
    case FamilyKind::eigen: return bound_prop_eigen(n, sigma);
    case FamilyKind::binary_form: return bound_polysys(1, {d}, sigma, 1.0).expectation;
  }
  return kInf;
}

std::string ProblemFamily::name() const {
  switch (kind) {
    case FamilyKind::moore_penrose: return "mp:" + std::to_string(l) + "x" + std::to_string(n);
    case FamilyKind::binary_form: return "binary:" + std::to_string(d);
    default: return std::string(kind_name(kind)) + ":" + std::to_string(n);
  }
}

ProjectivePoint make_center(const ProblemFamily& family, const CenterSpec& center) {
  const int p = family.ambient_dim();
  switch (center.kind) {
    case CenterKind::identity:
      if (family.kind == FamilyKind::binary_form) {
        ComplexVector v = ComplexVector::Zero(p + 1);
        v(0) = 1.0;
        v(p) = 1.0;
        return ProjectivePoint(v);
      }
      return ProjectivePoint(encode(padded_diagonal(family, 1.0), family));
    case CenterKind::near_singular:
      if (family.kind != FamilyKind::square && family.kind != FamilyKind::moore_penrose)
        throw UnsupportedError("near-singular center is defined for square and mp families only");
      if (!(center.delta > 0.0)) throw DomainError("near-singular delta must be positive");
      return ProjectivePoint(encode(padded_diagonal(family, center.delta), family));
    case CenterKind::random: {
      RandomStream rng(center.seed);
      return sample_uniform_projective(p, rng);
    }
    case CenterKind::file: {
      ComplexVector coords = load_center_coords(center.path, family);
      if (coords.size() != p + 1)
        throw DimensionMismatch("center file has " + std::to_string(coords.size()) +
                                " coordinates, family needs " + std::to_string(p + 1));
      return ProjectivePoint(coords);
    }
  }
  throw DomainError("unknown center kind");
}

void ExperimentConfig::validate(bool needs_t_grid) const {
  if (trials < 100) throw DomainError("experiments need at least 100 trials");
  if (!(sigma > 0.0 && sigma <= 1.0)) throw DomainError("sigma must lie in (0, 1]");
  if (!(confidence > 0.0 && confidence < 1.0)) throw DomainError("confidence must lie in (0, 1)");
  if (!(stderr_multiplier > 0.0)) throw DomainError("stderr multiplier must be positive");
  if (needs_t_grid && t_grid.empty()) throw DomainError("tail experiments need a nonempty t grid");
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    if (!(t_grid[i] > 0.0)) throw DomainError("thresholds must be positive");
    if (i > 0 && !(t_grid[i] > t_grid[i - 1])) throw DomainError("t grid must be strictly ascending");
  }
  if (sampler == Sampler::projective && sigma != 1.0)
    throw UnsupportedError("the projective sampler only reproduces the ball with sigma = 1");
}

// ---------------------------------------------------------------------------
// Decoding

Instance decode(const ProjectivePoint& z, const ProblemFamily& family) {
  if (z.dim() != family.ambient_dim())
    throw DimensionMismatch("point in CP^" + std::to_string(z.dim()) + " does not decode to family " +
                            family.name());
  const ComplexVector& c = z.coords();
  if (family.kind != FamilyKind::binary_form) return reshape_row_major(c, matrix_rows(family), family.n);

  PolySystem f;
  f.n = 1;
  f.degrees = {family.d};
  f.equations.resize(1);
  const auto basis = monomials(1, family.d);
  for (std::size_t k = 0; k < basis.size(); ++k)
    f.equations[0][basis[k]] = c(static_cast<Eigen::Index>(k)) * std::sqrt(multinomial(basis[k]));
  return f;
}

ComplexVector encode(const Instance& instance, const ProblemFamily& family) {
  const int p = family.ambient_dim();
  ComplexVector out(p + 1);
  if (const auto* m = std::get_if<ComplexMatrix>(&instance)) {
    if (family.kind == FamilyKind::binary_form || m->rows() != matrix_rows(family) || m->cols() != family.n)
      throw DimensionMismatch("matrix shape does not match family " + family.name());
    for (Eigen::Index i = 0; i < m->rows(); ++i)
      for (Eigen::Index j = 0; j < m->cols(); ++j) out(i * m->cols() + j) = (*m)(i, j);
    return out;
  }
  const auto& f = std::get<PolySystem>(instance);
  if (family.kind != FamilyKind::binary_form || f.n != 1 || f.degrees != std::vector<int>{family.d})
    throw DimensionMismatch("polynomial shape does not match family " + family.name());
  const auto basis = monomials(1, family.d);
  for (std::size_t k = 0; k < basis.size(); ++k) {
    auto it = f.equations[0].find(basis[k]);
    const ComplexScalar c = it == f.equations[0].end() ? ComplexScalar(0.0) : it->second;
    out(static_cast<Eigen::Index>(k)) = c / std::sqrt(multinomial(basis[k]));
  }
  return out;
}

ConditionValue evaluate_condition(const Instance& instance, const ProblemFamily& family) {
  switch (family.kind) {
    case FamilyKind::square: return kappa_f(std::get<ComplexMatrix>(instance));
    case FamilyKind::moore_penrose: return kappa_dagger_f(std::get<ComplexMatrix>(instance));
    case FamilyKind::eigen: return kappa_eigen(std::get<ComplexMatrix>(instance));
    case FamilyKind::binary_form: return mu_norm_system(std::get<PolySystem>(instance));
  }
  throw DomainError("unknown family");
}

// ---------------------------------------------------------------------------
// Statistics

double normal_quantile(double prob) {
  if (!(prob > 0.0 && prob < 1.0)) throw DomainError("quantile level must lie in (0, 1)");
  // Bisection on the CDF 0.5 erfc(-z / sqrt 2); converges to double precision.
  double lo = -40.0;
  double hi = 40.0;
  for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (0.5 * std::erfc(-mid * M_SQRT1_2) < prob)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

Interval wilson_interval(std::int64_t successes, std::int64_t trials, double confidence) {
  if (trials <= 0 || successes < 0 || successes > trials) throw DomainError("invalid binomial counts");
  if (!(confidence > 0.0 && confidence < 1.0)) throw DomainError("confidence must lie in (0, 1)");
  const double z = normal_quantile(1.0 - (1.0 - confidence) / 2.0);
  const double n = static_cast<double>(trials);
  const double phat = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (phat + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n)) / denom;
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

// ---------------------------------------------------------------------------
// Experiments

unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("CONDNUM_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<double> sample_log_conditions(const ExperimentConfig& cfg) {
  cfg.validate(false);
  const ProblemFamily& family = cfg.family;
  const int p = family.ambient_dim();
  const BallSpec ball(make_center(family, cfg.center), cfg.sigma);
  if (ball.center.dim() != p) throw DimensionMismatch("center does not match family");

  std::vector<double> out(static_cast<std::size_t>(cfg.trials));
  parallel_for(cfg.trials, resolve_threads(cfg.threads), [&](std::int64_t i) {
    RandomStream rng = RandomStream::derive(cfg.seed, static_cast<std::uint64_t>(i));
    const ProjectivePoint z =
        cfg.sampler == Sampler::ball ? sample_uniform_ball(ball, rng) : sample_uniform_projective(p, rng);
    out[static_cast<std::size_t>(i)] = evaluate_condition(decode(z, family), family).log_value;
  });
  return out;
}

std::vector<TailPoint> summarize_tail(const std::vector<double>& log_conditions, const ExperimentConfig& cfg) {
  const ProblemFamily& family = cfg.family;
  const auto trials = static_cast<std::int64_t>(log_conditions.size());
  std::vector<TailPoint> out;
  out.reserve(cfg.t_grid.size());
  for (double t : cfg.t_grid) {
    TailPoint pt;
    pt.t = t;
    const double log_t = std::log(t);
    pt.count = std::count_if(log_conditions.begin(), log_conditions.end(),
                             [log_t](double v) { return v >= log_t; });
    pt.empirical_prob = static_cast<double>(pt.count) / static_cast<double>(trials);
    const Interval ci = wilson_interval(pt.count, trials, cfg.confidence);
    pt.wilson_lower = ci.lower;
    pt.wilson_upper = ci.upper;

    // C >= t implies the conic bound 1/d_P >= t / scale.
    const double t_conic = t / family.condition_scale();
    pt.bound = tail_bound_theorem1(
        BoundInput(family.ambient_dim(), family.sigma_dim(), family.sigma_degree(), cfg.sigma, t_conic));
    pt.judged = pt.bound.valid && pt.bound.value < 1.0;
    pt.pass = !pt.judged || pt.wilson_upper <= pt.bound.value;

    if (family.is_hypersurface()) {
      const BoundValue h = tail_bound_hypersurface(family.ambient_dim(), family.sigma_degree(), cfg.sigma, t_conic);
      pt.hypersurface_bound = h;
      if (h.valid && h.value < 1.0) {
        pt.judged = true;
        pt.pass = pt.pass && pt.wilson_upper <= h.value;
      }
    }
    out.push_back(pt);
  }
  return out;
}

ExpectationSummary summarize_expectation(const std::vector<double>& log_conditions,
                                         const ExperimentConfig& cfg) {
  ExpectationSummary s;
  double sum = 0.0;
  for (double v : log_conditions) {
    if (std::isfinite(v)) {
      sum += v;
      ++s.finite_count;
    } else {
      ++s.infinite_count;
    }
  }
  s.bound_value = cfg.family.expectation_bound(cfg.sigma);
  if (s.finite_count == 0) {
    s.mean_log_cond = kInf;
    s.std_error = kInf;
    return s;
  }
  s.mean_log_cond = sum / static_cast<double>(s.finite_count);
  double ss = 0.0;
  for (double v : log_conditions)
    if (std::isfinite(v)) ss += (v - s.mean_log_cond) * (v - s.mean_log_cond);
  const double nf = static_cast<double>(s.finite_count);
  s.std_error = s.finite_count > 1 ? std::sqrt(ss / (nf - 1.0) / nf) : kInf;
  s.pass = s.infinite_count == 0 && s.mean_log_cond + cfg.stderr_multiplier * s.std_error <= s.bound_value;
  return s;
}

namespace {

ExperimentReport run_experiment(const ExperimentConfig& cfg, bool tail) {
  cfg.validate(tail);
  const auto start = std::chrono::steady_clock::now();
  ExperimentReport r;
  r.config = cfg;
  r.seed_derivation = "splitmix64: trial i uses RandomStream(seed).split(i)";
  const std::vector<double> logs = sample_log_conditions(cfg);
  if (tail) {
    r.tail = summarize_tail(logs, cfg);
    r.pass = std::all_of(r.tail.begin(), r.tail.end(), [](const TailPoint& p) { return p.pass; });
  }
  r.expectation = summarize_expectation(logs, cfg);
  if (!tail) r.pass = r.expectation->pass;
  r.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace

ExperimentReport run_tail_experiment(const ExperimentConfig& cfg) { return run_experiment(cfg, true); }

ExperimentReport run_expectation_experiment(const ExperimentConfig& cfg) { return run_experiment(cfg, false); }

// ---------------------------------------------------------------------------
// Patch volume

PatchVolumeReport patch_volume_via_lines(const ProjectivePoint& y, double eps, std::int64_t trials,
                                         std::uint64_t seed, double confidence, unsigned threads) {
  if (y.dim() != 3) throw DimensionMismatch("patch volume needs a point of CP^3 (a 2x2 matrix)");
  const ComplexVector& yc = y.coords();
  if (std::abs(yc(0) * yc(3) - yc(1) * yc(2)) > 1e-12)
    throw DomainError("center of the patch must be a singular 2x2 matrix");
  if (!(eps >= 0.0 && eps <= M_SQRT1_2)) throw DomainError("eps must lie in [0, 1/sqrt(2)]");
  if (trials < 2) throw DomainError("need at least two lines");
  if (!(confidence > 0.0 && confidence < 1.0)) throw DomainError("confidence must lie in (0, 1)");

  std::vector<int> counts(static_cast<std::size_t>(trials));
  std::vector<int> redraws(static_cast<std::size_t>(trials));
  parallel_for(trials, resolve_threads(threads), [&](std::int64_t i) {
    RandomStream rng = RandomStream::derive(seed, static_cast<std::uint64_t>(i));
    for (;;) {
      // The line P(span(U e_0, U e_1)); points s a + t b.
      const ComplexMatrix u = random_unitary(4, rng);
      const ComplexVector a = u.col(0);
      const ComplexVector b = u.col(1);
      const ComplexScalar ca = a(0) * a(3) - a(1) * a(2);
      const ComplexScalar cb = b(0) * b(3) - b(1) * b(2);
      const ComplexScalar cab = a(0) * b(3) + b(0) * a(3) - a(1) * b(2) - b(1) * a(2);
      if (std::max({std::abs(ca), std::abs(cb), std::abs(cab)}) <= 1e-12) {
        ++redraws[static_cast<std::size_t>(i)];
        continue;
      }
      // det restricted to the line as a binary quadratic in (s, t).
      PolySystem q;
      q.n = 1;
      q.degrees = {2};
      q.equations = {{{{2, 0}, ca}, {{1, 1}, cab}, {{0, 2}, cb}}};
      int hits = 0;
      for (const ProjectivePoint& root : binary_form_roots(q).roots) {
        const ComplexScalar s = root.coords()(0);
        const ComplexScalar t = root.coords()(1);
        if (projective_distance(ProjectivePoint(s * a + t * b), y) < eps) ++hits;
      }
      counts[static_cast<std::size_t>(i)] = hits;
      return;
    }
  });

  PatchVolumeReport r;
  r.eps = eps;
  r.trials = trials;
  r.seed = seed;
  r.confidence = confidence;
  double sum = 0.0;
  double sumsq = 0.0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    sum += counts[i];
    sumsq += static_cast<double>(counts[i]) * counts[i];
    r.redraws += redraws[i];
  }
  r.intersections = static_cast<std::int64_t>(sum);
  const double n = static_cast<double>(trials);
  r.estimate = sum / n;
  const double var = std::max(0.0, (sumsq - n * r.estimate * r.estimate) / (n - 1.0));
  const double half = normal_quantile(1.0 - (1.0 - confidence) / 2.0) * std::sqrt(var / n);
  r.ci_lower = std::max(0.0, r.estimate - half);
  r.ci_upper = r.estimate + half;
  const double eps4 = eps * eps * eps * eps;
  r.floor = 0.5 * eps4;
  r.ceiling = 6.0 * eps4;
  r.pass = r.estimate >= r.floor && r.estimate <= r.ceiling && r.ci_upper >= r.floor && r.ci_lower <= r.ceiling;
  return r;
}

}  // namespace smoothcond
