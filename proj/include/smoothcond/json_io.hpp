#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "smoothcond/bounds.hpp"
#include "smoothcond/condition.hpp"
#include "smoothcond/experiments.hpp"
#include "smoothcond/projective.hpp"

namespace smoothcond {

using Json = nlohmann::json;

// {"coords": [[re, im], ...]}
Json point_to_json(const ProjectivePoint& z);
ProjectivePoint point_from_json(const Json& j);

// {"rows": R, "cols": C, "entries": [[re, im], ...]} (row-major)
Json matrix_to_json(const ComplexMatrix& a);
ComplexMatrix matrix_from_json(const Json& j);

// {"n": n, "degrees": [...], "equations": [[{"alpha": [...], "re": x, "im": y}, ...], ...]}
Json polysys_to_json(const PolySystem& f);
PolySystem polysys_from_json(const Json& j);

/// {"value", "log_value", "ill_posed"}; infinite values serialize as null.
Json condition_to_json(const ConditionValue& c);
/// {"value", "log_value", "valid"}
Json bound_to_json(const BoundValue& b);

Json report_to_json(const ExperimentReport& r);
Json patch_report_to_json(const PatchVolumeReport& r);

/// One row per threshold: t,count,empirical_prob,wilson_lower,wilson_upper,
/// bound_value,bound_valid,hypersurface_bound_value,pass
void write_tail_csv(std::ostream& out, const ExperimentReport& r);

Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

/// Coordinates of a center read from a file holding a point, a matrix or a
/// binary form (encoded for `family`).
ComplexVector load_center_coords(const std::string& path, const ProblemFamily& family);

}  // namespace smoothcond
