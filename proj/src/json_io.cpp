#include "smoothcond/json_io.hpp"

#include <cmath>
#include <fstream>
#include <ostream>

#include "smoothcond/errors.hpp"

namespace smoothcond {
namespace {

Json complex_to_json(ComplexScalar c) { return Json::array({c.real(), c.imag()}); }

ComplexScalar complex_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw DomainError("complex entries must be [re, im] pairs");
  return {j[0].get<double>(), j[1].get<double>()};
}

// JSON has no infinities; map them to null.
Json number_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

const char* center_name(CenterKind k) {
  switch (k) {
    case CenterKind::identity: return "identity";
    case CenterKind::near_singular: return "near-singular";
    case CenterKind::random: return "random";
    case CenterKind::file: return "file";
  }
  return "?";
}

template <typename F>
auto wrap_json_errors(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Json::exception& e) {
    throw DomainError(std::string("malformed JSON input: ") + e.what());
  }
}

}  // namespace

Json point_to_json(const ProjectivePoint& z) {
  Json coords = Json::array();
  for (Eigen::Index i = 0; i < z.coords().size(); ++i) coords.push_back(complex_to_json(z.coords()(i)));
  return {{"coords", coords}};
}

ProjectivePoint point_from_json(const Json& j) {
  return wrap_json_errors([&] {
    const Json& coords = j.at("coords");
    ComplexVector v(static_cast<Eigen::Index>(coords.size()));
    for (std::size_t i = 0; i < coords.size(); ++i) v(static_cast<Eigen::Index>(i)) = complex_from_json(coords[i]);
    return ProjectivePoint(v);
  });
}

Json matrix_to_json(const ComplexMatrix& a) {
  Json entries = Json::array();
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) entries.push_back(complex_to_json(a(i, j)));
  return {{"rows", a.rows()}, {"cols", a.cols()}, {"entries", entries}};
}

ComplexMatrix matrix_from_json(const Json& j) {
  return wrap_json_errors([&] {
    const auto rows = j.at("rows").get<Eigen::Index>();
    const auto cols = j.at("cols").get<Eigen::Index>();
    const Json& entries = j.at("entries");
    if (rows < 1 || cols < 1 || entries.size() != static_cast<std::size_t>(rows * cols))
      throw DomainError("matrix JSON: entries length must equal rows * cols");
    ComplexMatrix a(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
      for (Eigen::Index k = 0; k < cols; ++k)
        a(i, k) = complex_from_json(entries[static_cast<std::size_t>(i * cols + k)]);
    return a;
  });
}

Json polysys_to_json(const PolySystem& f) {
  Json eqs = Json::array();
  for (const auto& eq : f.equations) {
    Json terms = Json::array();
    for (const auto& [alpha, c] : eq) terms.push_back({{"alpha", alpha}, {"re", c.real()}, {"im", c.imag()}});
    eqs.push_back(terms);
  }
  return {{"n", f.n}, {"degrees", f.degrees}, {"equations", eqs}};
}

PolySystem polysys_from_json(const Json& j) {
  return wrap_json_errors([&] {
    PolySystem f;
    f.n = j.at("n").get<int>();
    f.degrees = j.at("degrees").get<std::vector<int>>();
    for (const Json& eq : j.at("equations")) {
      std::map<Exponent, ComplexScalar> terms;
      for (const Json& term : eq) {
        const auto alpha = term.at("alpha").get<Exponent>();
        const double im = term.contains("im") ? term.at("im").get<double>() : 0.0;
        terms[alpha] += ComplexScalar(term.at("re").get<double>(), im);
      }
      f.equations.push_back(std::move(terms));
    }
    f.validate();
    return f;
  });
}

Json condition_to_json(const ConditionValue& c) {
  return {{"value", number_or_null(c.value)}, {"log_value", number_or_null(c.log_value)}, {"ill_posed", c.ill_posed}};
}

Json bound_to_json(const BoundValue& b) {
  return {{"value", b.value}, {"log_value", number_or_null(b.log_value)}, {"valid", b.valid}};
}

Json report_to_json(const ExperimentReport& r) {
  const ExperimentConfig& c = r.config;
  Json center = {{"kind", center_name(c.center.kind)}};
  if (c.center.kind == CenterKind::file) center["path"] = c.center.path;
  if (c.center.kind == CenterKind::random) center["seed"] = c.center.seed;
  if (c.center.kind == CenterKind::near_singular) center["delta"] = c.center.delta;

  const ProblemFamily& f = c.family;
  Json family = {{"name", f.name()},
                 {"ambient_dim", f.ambient_dim()},
                 {"sigma_dim", f.sigma_dim()},
                 {"sigma_degree", f.sigma_degree()},
                 {"condition_scale", f.condition_scale()}};

  Json out;
  out["config"] = {{"family", family},
                   {"center", center},
                   {"sigma", c.sigma},
                   {"t_grid", c.t_grid},
                   {"trials", c.trials},
                   {"seed", c.seed},
                   {"confidence", c.confidence},
                   {"stderr_multiplier", c.stderr_multiplier},
                   {"sampler", c.sampler == Sampler::ball ? "ball" : "projective"}};
  out["seed_derivation"] = r.seed_derivation;

  Json tail = Json::array();
  for (const TailPoint& p : r.tail) {
    Json row = {{"t", p.t},
                {"count", p.count},
                {"empirical_prob", p.empirical_prob},
                {"wilson_lower", p.wilson_lower},
                {"wilson_upper", p.wilson_upper},
                {"bound_value", p.bound.value},
                {"bound_log_value", p.bound.log_value},
                {"bound_valid", p.bound.valid},
                {"judged", p.judged},
                {"pass", p.pass}};
    if (p.hypersurface_bound) {
      row["hypersurface_bound_value"] = p.hypersurface_bound->value;
      row["hypersurface_bound_log_value"] = p.hypersurface_bound->log_value;
      row["hypersurface_bound_valid"] = p.hypersurface_bound->valid;
    }
    tail.push_back(row);
  }
  if (!r.tail.empty()) out["tail"] = tail;

  if (r.expectation) {
    const ExpectationSummary& e = *r.expectation;
    out["expectation"] = {{"mean_log_cond", number_or_null(e.mean_log_cond)},
                          {"std_error", number_or_null(e.std_error)},
                          {"finite_count", e.finite_count},
                          {"infinite_count", e.infinite_count},
                          {"bound_value", e.bound_value},
                          {"pass", e.pass}};
  }
  out["pass"] = r.pass;
  return out;
}

Json patch_report_to_json(const PatchVolumeReport& r) {
  return {{"eps", r.eps},
          {"trials", r.trials},
          {"seed", r.seed},
          {"confidence", r.confidence},
          {"estimate", r.estimate},
          {"ci_lower", r.ci_lower},
          {"ci_upper", r.ci_upper},
          {"floor", r.floor},
          {"ceiling", r.ceiling},
          {"intersections", r.intersections},
          {"redraws", r.redraws},
          {"pass", r.pass}};
}

void write_tail_csv(std::ostream& out, const ExperimentReport& r) {
  out << "t,count,empirical_prob,wilson_lower,wilson_upper,bound_value,bound_valid,"
         "hypersurface_bound_value,pass\n";
  out.precision(17);
  for (const TailPoint& p : r.tail) {
    out << p.t << ',' << p.count << ',' << p.empirical_prob << ',' << p.wilson_lower << ','
        << p.wilson_upper << ',' << p.bound.value << ',' << (p.bound.valid ? 1 : 0) << ',';
    if (p.hypersurface_bound) out << p.hypersurface_bound->value;
    out << ',' << (p.pass ? 1 : 0) << '\n';
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open " + path);
  return wrap_json_errors([&] { return Json::parse(in); });
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw DomainError("cannot write " + path);
  out << j.dump(2) << '\n';
}

ComplexVector load_center_coords(const std::string& path, const ProblemFamily& family) {
  const Json j = read_json_file(path);
  if (j.contains("coords")) return point_from_json(j).coords();
  if (j.contains("entries")) return encode(matrix_from_json(j), family);
  if (j.contains("equations")) return encode(polysys_from_json(j), family);
  throw DomainError(path + ": expected a point, matrix or polynomial system");
}

}  // namespace smoothcond
