#pragma once
// JSON/CSV serialization.  Floats are always written with 17 significant digits
// and objects keep insertion order, so identical runs give identical bytes.

#include <iosfwd>
#include <json.hpp>
#include <string>

#include "gsqg/diagnostics.hpp"
#include "gsqg/solver.hpp"
#include "gsqg/spectral.hpp"

namespace gsqg::io {

using Json = nlohmann::ordered_json;

/// Pretty-printed JSON, 2-space indent, "%.17g" numbers, NaN/inf as null.
std::string dump(const Json& j);

Json to_json(const spectral::FourierCosSeries& f);  // [a_2, ..., a_J]
Json to_json(const spectral::FourierSinSeries& g);  // [b_1, ..., b_J]
spectral::FourierCosSeries cos_series_from_json(const Json& j);
spectral::FourierSinSeries sin_series_from_json(const Json& j);

Json to_json(const solver::BranchRecord& r);
solver::BranchRecord record_from_json(const Json& j);

/// Columns patch_id, theta, x, y.
void write_boundary_csv(std::ostream& os, const diagnostics::PatchFamily& patches);

}  // namespace gsqg::io
