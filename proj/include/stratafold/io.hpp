#pragma once

// JSON ingestion. Every reader throws InvalidSpec with the offending key on
// malformed input.
//
//   Lie algebra   {"dim": n, "c": [[i, j, k, value], ...]}   0-based indices
//   metric        {"dim": n, "g": [[...], ...]}
//   Lindblad      {"dim": n, "H": M, "V": [M, ...]}          H, V optional
//   state         {"coords": [...]} or {"rho": M}
//   probability   [p_1, ..., p_N]
//
// A complex matrix M is a list of rows whose entries are either [re, im]
// pairs or plain reals.

#include <filesystem>
#include <string>

#include "json.hpp"
#include "stratafold/clifford.hpp"
#include "stratafold/exterior.hpp"
#include "stratafold/qgeom.hpp"
#include "stratafold/statgeom.hpp"

namespace stratafold::io {

using Json = nlohmann::json;

Json load_json(const std::filesystem::path& path);
Json parse_json(const std::string& text);

exterior::LieAlgebra lie_algebra_from_json(const Json& j);
Json to_json(const exterior::LieAlgebra& alg);

clifford::MetricSpec metric_from_json(const Json& j);

qgeom::Matrix complex_matrix_from_json(const Json& j, int n);
Json complex_matrix_to_json(const qgeom::Matrix& m);

qgeom::LindbladSpec lindblad_from_json(const Json& j);
Json to_json(const qgeom::LindbladSpec& spec);

qgeom::DensityState state_from_json(const Json& j, int n);

statgeom::ProbabilityVector probability_from_json(const Json& j);

}  // namespace stratafold::io
