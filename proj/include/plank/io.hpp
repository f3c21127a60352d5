#pragma once

#include "plank/convex_body.hpp"
#include "plank/cuts.hpp"
#include "plank/inradius.hpp"
#include "plank/planks.hpp"
#include "plank/search.hpp"

#include "json.hpp"

#include <string>

namespace plank {

using Json = nlohmann::json;

// Every parse failure raises ParseError naming the offending field.

Json toJson(const Vector& v);
Vector vectorFromJson(const Json& j);
Json toJson(const Matrix& m);  ///< array of rows
Matrix matrixFromJson(const Json& j);

/// {"type":"hpoly","normals":[[..]],"offsets":[..]} |
/// {"type":"vpoly","vertices":[[..]]} | {"type":"ball","center":[..],"radius":r}
Json toJson(const ConvexBody& body);
ConvexBody bodyFromJson(const Json& j);

Json toJson(const Hyperplane& h);  ///< {"normal":[..],"offset":r}
Hyperplane hyperplaneFromJson(const Json& j);
Json toJson(const Plank& p);       ///< {"normal":[..],"low":r,"high":r}
Plank plankFromJson(const Json& j);
Json toJson(const PlankFamily& planks);
/// Accepts a bare array or {"planks":[..]}.
PlankFamily planksFromJson(const Json& j);
std::vector<Hyperplane> hyperplanesFromJson(const Json& j);

/// "leaf" | {"cut":{..},"below":..,"above":..}
Json toJson(const CutTree& tree);
CutTree cutTreeFromJson(const Json& j);

/// {"provenance":"voronoi","cells":[..],"host":{..},"dropped":[..]}
Json toJson(const PartitionFamily& p);
PartitionFamily partitionFromJson(const Json& j);

Json toJson(const WidthResult& w);
Json toJson(const CInradius& r);
Json toJson(const SuccessiveInradiusResult& r);
Json toJson(const HalfspaceSet& s);
Json toJson(const LinearPacking& p);
Json toJson(const std::vector<SequenceTerm>& terms);
Json toJson(const OptimalCuts& c);
Json toJson(const GreatestPiece& g);
Json toJson(const PartitionReport& r);
Json toJson(const ConwayReport& r);
Json toJson(const CoverageVerdict& v);
Json toJson(const AffineDeficit& a);
Json toJson(const TwoPlankReport& r);

Json toJson(const ProbeConfig& c);
ProbeConfig probeConfigFromJson(const Json& j);
Json toJson(const Instance& i);
Instance instanceFromJson(const Json& j);
Json toJson(const ProbeReport& r);

/// One row per trial: trial,seed,deficit,digest.
std::string probeCsv(const ProbeReport& r);

/// Reads and parses a JSON file (ParseError on failure).
Json readJsonFile(const std::string& path);
/// Pretty-printed with a trailing newline.
std::string dumpJson(const Json& j);

}  // namespace plank
