#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "orbitlab/census.hpp"
#include "orbitlab/classify.hpp"
#include "orbitlab/degenerate.hpp"
#include "orbitlab/eliminate.hpp"
#include "orbitlab/genericity.hpp"
#include "orbitlab/polymap.hpp"
#include "orbitlab/solver.hpp"
#include "orbitlab/sparse_poly.hpp"

namespace orbitlab {

using nlohmann::ordered_json;

// {"n", "degree", "field", "coeffs": [{"alpha", "value": [[re, im], ...]}]}
PolyMap map_from_json(const ordered_json& j);
ordered_json map_to_json(const PolyMap& map);
PolyMap load_map(const std::string& path);

std::uint64_t fnv1a64(const std::string& bytes);
std::string hex64(std::uint64_t v);
// FNV-1a of the canonical map JSON.
std::string map_hash(const PolyMap& map);

ordered_json to_json(Scalar z);  // [re, im]
ordered_json to_json(const Point& p);
ordered_json to_json(const SolveConfig& c);
ordered_json to_json(const SolveReport& r, const PolyMap& map, const std::vector<OrbitRecord>& orbits);
ordered_json to_json(const OrbitRecord& r);
ordered_json to_json(const CensusTable& t);
ordered_json to_json(const ZetaTruncation& z);
ordered_json to_json(const GrowthStats& g);
ordered_json to_json(const SampleConfig& c);
ordered_json to_json(const GenericityReport& r);
ordered_json to_json(const ScalingFit& f);
ordered_json to_json(const DegeneracyResult& d);
ordered_json to_json(const SplitPlan& p);
ordered_json to_json(const SparsePoly& p);
ordered_json to_json(const NonzeroCertificate& c);
ordered_json to_json(const EliminationResult& r);
ordered_json to_json(const LambdaSlice& s);

// Doubles that may be infinite serialize as null.
ordered_json finite_or_null(double v);

}  // namespace orbitlab
