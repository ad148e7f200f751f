// smoothcond: condition numbers, smoothed-analysis bounds and Monte Carlo
// experiments from the command line.
//
// Exit codes: 0 success (all checks passed), 1 a bound-compliance check
// failed, 2 input or usage error.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "smoothcond/bounds.hpp"
#include "smoothcond/condition.hpp"
#include "smoothcond/errors.hpp"
#include "smoothcond/experiments.hpp"
#include "smoothcond/json_io.hpp"

namespace sc = smoothcond;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

void emit(const sc::Json& j, const std::string& out_path) {
  if (!out_path.empty()) sc::write_json_file(out_path, j);
  std::cout << j.dump(2) << '\n';
}

// Expectation bounds are bounds on E ln C; report them as log_value with
// value = exp(log_value), the matching bound on the geometric mean of C.
sc::Json expectation_json(double log_bound) {
  return {{"value", std::exp(log_bound)}, {"log_value", log_bound}, {"valid", true}};
}

struct CondnumArgs {
  std::string kind;
  std::string input;
  std::string zero;
};

int run_condnum(const CondnumArgs& a) {
  const sc::Json in = sc::read_json_file(a.input);
  sc::ConditionValue c;
  if (a.kind == "polysys") {
    const sc::PolySystem f = sc::polysys_from_json(in);
    if (!a.zero.empty())
      c = sc::mu_norm_at_zero(f, sc::point_from_json(sc::read_json_file(a.zero)));
    else
      c = sc::mu_norm_system(f);
  } else {
    const sc::ComplexMatrix m = sc::matrix_from_json(in);
    if (a.kind == "square")
      c = sc::kappa_f(m);
    else if (a.kind == "mp")
      c = sc::kappa_dagger_f(m);
    else
      c = sc::kappa_eigen(m);
  }
  emit(sc::condition_to_json(c), "");
  return kExitOk;
}

struct BoundArgs {
  std::string which;
  int p = 0, m = 0, n = 0, l = 0;
  double deg = 1.0;
  std::vector<int> d;
  double sigma = 1.0;
  double t = 0.0;
  double eps = 0.0;
};

void require(bool ok, const std::string& what) {
  if (!ok) throw sc::DomainError(what);
}

int run_bound(const BoundArgs& a) {
  sc::Json out;
  const auto need_t = [&] { require(a.t > 0.0, "--t is required and must be positive"); };
  if (a.which == "theorem1") {
    need_t();
    out = sc::bound_to_json(sc::tail_bound_theorem1(sc::BoundInput(a.p, a.m, a.deg, a.sigma, a.t)));
    out["expectation"] = sc::expectation_bound_theorem1(a.p, a.m, a.deg, a.sigma);
  } else if (a.which == "hypersurface") {
    need_t();
    require(a.d.size() == 1, "--d takes one degree for the hypersurface bound");
    out = sc::bound_to_json(sc::tail_bound_hypersurface(a.p, a.d[0], a.sigma, a.t));
    out["expectation"] = sc::expectation_bound_hypersurface(a.p, a.d[0], a.sigma);
  } else if (a.which == "prop-square") {
    out = expectation_json(sc::bound_prop_square(a.n, a.sigma));
  } else if (a.which == "prop-mp") {
    out = expectation_json(sc::bound_prop_moore_penrose(a.n, a.sigma));
  } else if (a.which == "mp-remark") {
    out = expectation_json(sc::bound_mp_remark(a.l, a.n, a.sigma));
  } else if (a.which == "prop-eigen") {
    out = expectation_json(sc::bound_prop_eigen(a.n, a.sigma));
  } else if (a.which == "polysys") {
    need_t();
    const sc::PolySysBound b = sc::bound_polysys(a.n, a.d, a.sigma, a.t);
    out = sc::bound_to_json(b.tail);
    out["expectation"] = b.expectation;
  } else {  // shub-smale
    const double v = sc::shub_smale_tail(a.n, a.d, a.eps);
    out = sc::bound_to_json(sc::BoundValue::from_log(std::log(v), true));
  }
  emit(out, "");
  return kExitOk;
}

struct ExperimentArgs {
  std::string family = "square";
  int n = 2, l = 0, d = 2;
  double sigma = 1.0;
  std::vector<double> t_grid;
  std::int64_t trials = 100000;
  std::uint64_t seed = 42;
  std::string center = "identity";
  std::uint64_t center_seed = 0;
  double delta = 1e-3;
  double confidence = 0.99;
  double stderr_mult = 3.0;
  std::string sampler = "ball";
  std::string out;
  std::string csv;
};

sc::ExperimentConfig make_config(const ExperimentArgs& a) {
  sc::ExperimentConfig cfg;
  if (a.family == "square")
    cfg.family = sc::ProblemFamily::square(a.n);
  else if (a.family == "mp")
    cfg.family = sc::ProblemFamily::moore_penrose(a.l, a.n);
  else if (a.family == "eigen")
    cfg.family = sc::ProblemFamily::eigen(a.n);
  else
    cfg.family = sc::ProblemFamily::binary_form(a.d);

  if (a.center == "identity") {
    cfg.center.kind = sc::CenterKind::identity;
  } else if (a.center == "near-singular") {
    cfg.center.kind = sc::CenterKind::near_singular;
    cfg.center.delta = a.delta;
  } else if (a.center == "random") {
    cfg.center.kind = sc::CenterKind::random;
    cfg.center.seed = a.center_seed;
  } else {
    cfg.center.kind = sc::CenterKind::file;
    cfg.center.path = a.center;
  }
  cfg.sigma = a.sigma;
  cfg.t_grid = a.t_grid;
  cfg.trials = a.trials;
  cfg.seed = a.seed;
  cfg.confidence = a.confidence;
  cfg.stderr_multiplier = a.stderr_mult;
  cfg.sampler = a.sampler == "projective" ? sc::Sampler::projective : sc::Sampler::ball;
  return cfg;
}

int run_experiment(const ExperimentArgs& a, bool tail) {
  const sc::ExperimentConfig cfg = make_config(a);
  const sc::ExperimentReport r = tail ? sc::run_tail_experiment(cfg) : sc::run_expectation_experiment(cfg);
  std::cerr << "runtime: " << r.runtime_seconds << " s\n";
  if (!a.csv.empty()) {
    std::ofstream csv(a.csv);
    if (!csv) throw sc::DomainError("cannot write " + a.csv);
    sc::write_tail_csv(csv, r);
  }
  emit(sc::report_to_json(r), a.out);
  return r.pass ? kExitOk : kExitCheckFailed;
}

struct PatchArgs {
  double eps = 0.3;
  std::int64_t trials = 200000;
  std::uint64_t seed = 7;
  double confidence = 0.99;
  std::string y;
  std::string out;
};

int run_patch(const PatchArgs& a) {
  sc::ComplexVector diag = sc::ComplexVector::Zero(4);
  diag(0) = 1.0;
  const sc::ProjectivePoint y = a.y.empty() ? sc::ProjectivePoint(diag)
                                            : sc::ProjectivePoint(sc::load_center_coords(
                                                  a.y, sc::ProblemFamily::square(2)));
  const sc::PatchVolumeReport r = sc::patch_volume_via_lines(y, a.eps, a.trials, a.seed, a.confidence);
  emit(sc::patch_report_to_json(r), a.out);
  return r.pass ? kExitOk : kExitCheckFailed;
}

void add_experiment_flags(CLI::App* cmd, ExperimentArgs& a) {
  cmd->add_option("--family", a.family, "Problem family")
      ->check(CLI::IsMember({"square", "mp", "eigen", "binary"}));
  cmd->add_option("--n", a.n, "Matrix columns (square, mp, eigen)");
  cmd->add_option("--l", a.l, "Matrix rows (mp)");
  cmd->add_option("--d", a.d, "Binary form degree (binary)");
  cmd->add_option("--sigma", a.sigma, "Ball radius in (0, 1]");
  cmd->add_option("--t-grid", a.t_grid, "Ascending thresholds, comma separated")->delimiter(',');
  cmd->add_option("--trials", a.trials, "Number of trials (>= 100)");
  cmd->add_option("--seed", a.seed, "Master seed");
  cmd->add_option("--center", a.center, "identity | near-singular | random | path to a JSON file");
  cmd->add_option("--center-seed", a.center_seed, "Seed for --center random");
  cmd->add_option("--delta", a.delta, "Last diagonal entry of the near-singular center");
  cmd->add_option("--confidence", a.confidence, "Confidence level of the intervals");
  cmd->add_option("--stderr-mult", a.stderr_mult, "Standard errors added to the mean before comparing");
  cmd->add_option("--sampler", a.sampler, "ball | projective")->check(CLI::IsMember({"ball", "projective"}));
  cmd->add_option("--out", a.out, "Write the JSON report here");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Condition numbers, smoothed-analysis bounds and Monte Carlo experiments"};
  app.require_subcommand(1);

  CondnumArgs cn;
  auto* condnum = app.add_subcommand("condnum", "Evaluate a condition number");
  condnum->add_option("--kind", cn.kind, "square | mp | eigen | polysys")
      ->required()
      ->check(CLI::IsMember({"square", "mp", "eigen", "polysys"}));
  condnum->add_option("--input", cn.input, "Matrix or polynomial system JSON")->required();
  condnum->add_option("--zero", cn.zero, "Projective point JSON (polysys only)");

  BoundArgs ba;
  auto* bound = app.add_subcommand("bound", "Evaluate a closed-form bound");
  bound->add_option("--which", ba.which)
      ->required()
      ->check(CLI::IsMember({"theorem1", "hypersurface", "prop-square", "prop-mp", "mp-remark", "prop-eigen",
                             "polysys", "shub-smale"}));
  bound->add_option("--p", ba.p, "Ambient projective dimension");
  bound->add_option("--m", ba.m, "Dimension of the ill-posed set");
  bound->add_option("--deg", ba.deg, "Degree of the ill-posed set");
  bound->add_option("--n", ba.n);
  bound->add_option("--l", ba.l);
  bound->add_option("--d", ba.d, "Degree(s), comma separated")->delimiter(',');
  bound->add_option("--sigma", ba.sigma);
  bound->add_option("--t", ba.t);
  bound->add_option("--eps", ba.eps);

  auto* experiment = app.add_subcommand("experiment", "Run a Monte Carlo experiment");
  experiment->require_subcommand(1);
  ExperimentArgs ta;
  auto* tail = experiment->add_subcommand("tail", "Empirical tail probabilities against the tail bounds");
  add_experiment_flags(tail, ta);
  tail->add_option("--csv", ta.csv, "Write the tail curve as CSV");
  ExperimentArgs ea;
  auto* expectation = experiment->add_subcommand("expectation", "Mean log-condition against the expectation bound");
  add_experiment_flags(expectation, ea);
  PatchArgs pa;
  auto* patch = experiment->add_subcommand("patch-volume", "Patch volume of {det = 0} via random lines");
  patch->add_option("--eps", pa.eps);
  patch->add_option("--trials", pa.trials);
  patch->add_option("--seed", pa.seed);
  patch->add_option("--confidence", pa.confidence);
  patch->add_option("--y", pa.y, "Singular 2x2 matrix or point JSON (default diag(1, 0))");
  patch->add_option("--out", pa.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*condnum) return run_condnum(cn);
    if (*bound) return run_bound(ba);
    if (*tail) return run_experiment(ta, true);
    if (*expectation) return run_experiment(ea, false);
    if (*patch) return run_patch(pa);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
