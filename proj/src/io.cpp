#include "plank/io.hpp"

#include "plank/errors.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace plank {

using Index = Eigen::Index;

namespace {

[[noreturn]] void parseFail(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) parseFail(std::string("missing field '") + key + "'");
  return j.at(key);
}

double number(const Json& j, const char* what) {
  if (!j.is_number()) parseFail(std::string("'") + what + "' must be a number");
  return j.get<double>();
}

int integer(const Json& j, const char* what) {
  if (!j.is_number_integer()) parseFail(std::string("'") + what + "' must be an integer");
  return j.get<int>();
}

std::uint64_t unsignedInteger(const Json& j, const char* what) {
  if (!j.is_number_integer() || (j.is_number_integer() && !j.is_number_unsigned() && j.get<long long>() < 0))
    parseFail(std::string("'") + what + "' must be a non-negative integer");
  return j.get<std::uint64_t>();
}

// Unknown enum names in a file are format errors, not bad arguments.
template <class F>
auto asParseError(F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.code() != ErrorCode::InvalidArgument) throw;
    parseFail(std::string(e.what()).substr(e.name().size() + 2));
  }
}

ProbeTarget targetField(const Json& j) {
  const Json& target = field(j, "target");
  if (!target.is_string()) parseFail("'target' must be a string");
  return asParseError([&] { return parseTarget(target.get<std::string>()); });
}

template <class T>
T optionalField(const Json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  const Json& v = j.at(key);
  if constexpr (std::is_same_v<T, bool>) {
    if (!v.is_boolean()) parseFail(std::string("'") + key + "' must be a boolean");
    return v.get<bool>();
  } else if constexpr (std::is_same_v<T, std::uint64_t>) {
    return unsignedInteger(v, key);
  } else if constexpr (std::is_integral_v<T>) {
    return integer(v, key);
  } else {
    return number(v, key);
  }
}

Json doubles(const std::vector<double>& v) { return Json(v); }

}  // namespace

Json toJson(const Vector& v) {
  Json out = Json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

Vector vectorFromJson(const Json& j) {
  if (!j.is_array()) parseFail("expected an array of numbers");
  Vector v(static_cast<Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Index>(i)] = number(j[i], "vector entry");
  return v;
}

Json toJson(const Matrix& m) {
  Json out = Json::array();
  for (Index r = 0; r < m.rows(); ++r) out.push_back(toJson(Vector(m.row(r).transpose())));
  return out;
}

Matrix matrixFromJson(const Json& j) {
  if (!j.is_array() || j.empty()) parseFail("expected a non-empty array of rows");
  const Vector first = vectorFromJson(j[0]);
  Matrix m(static_cast<Index>(j.size()), first.size());
  for (std::size_t r = 0; r < j.size(); ++r) {
    const Vector row = vectorFromJson(j[r]);
    if (row.size() != first.size()) parseFail("rows have different lengths");
    m.row(static_cast<Index>(r)) = row.transpose();
  }
  return m;
}

Json toJson(const ConvexBody& body) {
  switch (body.kind()) {
    case ConvexBody::Kind::Ball:
      return {{"type", "ball"}, {"center", toJson(body.center())}, {"radius", body.radius()}};
    case ConvexBody::Kind::Vertices:
      return {{"type", "vpoly"}, {"vertices", toJson(body.vertexMatrix())}};
    case ConvexBody::Kind::Halfspaces:
      break;
  }
  return {{"type", "hpoly"}, {"normals", toJson(body.normals())}, {"offsets", toJson(body.offsets())}};
}

ConvexBody bodyFromJson(const Json& j) {
  if (!j.is_object()) parseFail("body must be an object with a 'type' field");
  const Json& type = field(j, "type");
  if (!type.is_string()) parseFail("'type' must be a string");
  const std::string t = type.get<std::string>();
  if (t == "hpoly") {
    const Matrix A = matrixFromJson(field(j, "normals"));
    const Vector b = vectorFromJson(field(j, "offsets"));
    if (b.size() != A.rows()) parseFail("'normals' and 'offsets' differ in length");
    return ConvexBody::halfspaces(A, b);
  }
  if (t == "vpoly") return ConvexBody::vertices(matrixFromJson(field(j, "vertices")));
  if (t == "ball") return ConvexBody::ball(vectorFromJson(field(j, "center")), number(field(j, "radius"), "radius"));
  parseFail("unknown body type '" + t + "' (expected hpoly, vpoly or ball)");
}

Json toJson(const Hyperplane& h) { return {{"normal", toJson(h.normal.vector())}, {"offset", h.offset}}; }

Hyperplane hyperplaneFromJson(const Json& j) {
  const Vector n = vectorFromJson(field(j, "normal"));
  const double norm = n.norm();
  if (!(norm > 0)) parseFail("hyperplane normal is zero");
  return {Direction(n / norm), number(field(j, "offset"), "offset") / norm};
}

Json toJson(const Plank& p) {
  return {{"normal", toJson(p.normal().vector())}, {"low", p.low()}, {"high", p.high()}};
}

Plank plankFromJson(const Json& j) {
  const Vector n = vectorFromJson(field(j, "normal"));
  const double norm = n.norm();
  if (!(norm > 0)) parseFail("plank normal is zero");
  return Plank(Direction(n / norm), number(field(j, "low"), "low") / norm, number(field(j, "high"), "high") / norm);
}

Json toJson(const PlankFamily& planks) {
  Json out = Json::array();
  for (const Plank& p : planks) out.push_back(toJson(p));
  return {{"planks", out}};
}

PlankFamily planksFromJson(const Json& j) {
  const Json& list = j.is_array() ? j : field(j, "planks");
  if (!list.is_array()) parseFail("'planks' must be an array");
  PlankFamily out;
  for (const Json& p : list) out.push_back(plankFromJson(p));
  return out;
}

std::vector<Hyperplane> hyperplanesFromJson(const Json& j) {
  const Json& list = j.is_array() ? j : field(j, "hyperplanes");
  if (!list.is_array()) parseFail("'hyperplanes' must be an array");
  std::vector<Hyperplane> out;
  for (const Json& h : list) out.push_back(hyperplaneFromJson(h));
  return out;
}

Json toJson(const CutTree& tree) {
  if (tree.isLeaf()) return "leaf";
  return {{"cut", toJson(*tree.cut)}, {"below", toJson(tree.below())}, {"above", toJson(tree.above())}};
}

CutTree cutTreeFromJson(const Json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() != "leaf") parseFail("cut tree node must be \"leaf\" or an object");
    return CutTree::leaf();
  }
  if (j.is_object() && j.contains("tree")) return cutTreeFromJson(j.at("tree"));
  return CutTree::node(hyperplaneFromJson(field(j, "cut")), cutTreeFromJson(field(j, "below")),
                       cutTreeFromJson(field(j, "above")));
}

Json toJson(const PartitionFamily& p) {
  Json cells = Json::array();
  for (const ConvexBody& c : p.cells) cells.push_back(toJson(c));
  Json out = {{"provenance", std::string(provenanceName(p.provenance))}, {"cells", cells}, {"dropped", p.dropped}};
  if (p.host) out["host"] = toJson(*p.host);
  return out;
}

PartitionFamily partitionFromJson(const Json& j) {
  PartitionFamily out;
  const Json& cells = j.is_array() ? j : field(j, "cells");
  if (!cells.is_array()) parseFail("'cells' must be an array of bodies");
  for (const Json& c : cells) out.cells.push_back(bodyFromJson(c));
  if (j.is_object()) {
    if (j.contains("provenance")) {
      if (!j.at("provenance").is_string()) parseFail("'provenance' must be a string");
      out.provenance = asParseError([&] { return parseProvenance(j.at("provenance").get<std::string>()); });
    }
    if (j.contains("host")) out.host = bodyFromJson(j.at("host"));
    if (j.contains("dropped")) {
      for (const Json& d : j.at("dropped")) out.dropped.push_back(d.is_string() ? d.get<std::string>() : d.dump());
    }
  }
  return out;
}

Json toJson(const WidthResult& w) {
  return {{"value", w.value}, {"direction", toJson(w.direction.vector())}, {"achievedTolerance", w.achievedTolerance}};
}

Json toJson(const CInradius& r) { return {{"scale", r.scale}, {"translation", toJson(r.translation)}}; }

Json toJson(const SuccessiveInradiusResult& r) {
  return {{"rho", r.rho},           {"m", r.m},
          {"residual", r.residual}, {"iterations", r.iterations},
          {"bracket", {r.bracketLow, r.bracketHigh}}, {"method", r.method}};
}

Json toJson(const HalfspaceSet& s) {
  const char* status = s.status == SetStatus::FullDimensional  ? "full-dimensional"
                       : s.status == SetStatus::LowerDimensional ? "lower-dimensional"
                                                                 : "empty";
  Json out = {{"status", status}, {"normals", toJson(s.normals)}, {"offsets", toJson(s.offsets)}};
  if (s.body) {
    out["body"] = toJson(*s.body);
    if (s.body->dim() == 2 && s.body->hasVertices()) out["vertices"] = toJson(s.body->vertexMatrix());
  }
  return out;
}

Json toJson(const LinearPacking& p) {
  Json centers = Json::array();
  for (const Vector& c : p.centers()) centers.push_back(toJson(c));
  return {{"base", toJson(p.base)},
          {"directionVector", toJson(p.directionVector)},
          {"shifts", doubles(p.shifts)},
          {"scale", p.scale},
          {"separatingDirection", toJson(p.separatingDirection)},
          {"centers", centers}};
}

Json toJson(const std::vector<SequenceTerm>& terms) {
  Json out = Json::array();
  for (const SequenceTerm& t : terms) out.push_back({{"m", t.m}, {"rho", t.rho}, {"scaled", t.scaled}});
  return out;
}

Json toJson(const OptimalCuts& c) {
  return {{"tree", toJson(c.tree)},
          {"rho", c.rho},
          {"direction", toJson(c.direction)},
          {"offsets", doubles(c.offsets)},
          {"interval", {c.intervalLow, c.intervalHigh}}};
}

Json toJson(const GreatestPiece& g) {
  return {{"value", g.value}, {"argPiece", g.argPiece}, {"perPiece", doubles(g.perPiece)}};
}

Json toJson(const PartitionReport& r) {
  return {{"m", r.m},
          {"cellIndex", r.cellIndex},
          {"cellInradius", doubles(r.cellInradius)},
          {"cellWidth", doubles(r.cellWidth)},
          {"droppedCells", r.droppedCells},
          {"inradiusSum", r.inradiusSum},
          {"bodyInradius", r.bodyInradius},
          {"deficit", r.deficit},
          {"widthSum", r.widthSum},
          {"bodyWidth", r.bodyWidth},
          {"widthDeficit", r.widthDeficit},
          {"tolerance", r.tolerance},
          {"certified", r.certified},
          {"hypothesis", r.hypothesis},
          {"violation", r.violation}};
}

Json toJson(const ConwayReport& r) {
  Json trials = Json::array();
  for (const ConwayTrial& t : r.trials)
    trials.push_back({{"seed", t.seed}, {"greatest", t.greatest}, {"margin", t.margin}});
  Json out = {{"n", r.n},
              {"m", r.m},
              {"bound", r.bound},
              {"optimalGreatest", r.optimalGreatest},
              {"attainmentGap", r.attainmentGap},
              {"attainmentViolated", r.attainmentViolated},
              {"optimal", toJson(r.optimal)},
              {"trials", trials},
              {"worstMargin", r.worstMargin},
              {"worstTrial", r.worstTrial},
              {"violations", r.violations},
              {"tolerance", r.tolerance}};
  if (r.worstTrial >= 0) out["worstTree"] = toJson(r.trials[static_cast<std::size_t>(r.worstTrial)].tree);
  Json witnesses = Json::array();
  for (int i : r.violations) witnesses.push_back(toJson(r.trials[static_cast<std::size_t>(i)].tree));
  out["violationTrees"] = witnesses;
  return out;
}

Json toJson(const CoverageVerdict& v) {
  Json out = {{"covered", v.covered},
              {"method", std::string(coverageMethodName(v.method))},
              {"cellsChecked", v.cellsChecked},
              {"certified", v.certified}};
  out["witness"] = v.witness ? toJson(*v.witness) : Json(nullptr);
  return out;
}

Json toJson(const AffineDeficit& a) {
  Json out = {{"plankSum", a.plankSum}, {"bodyWidth", a.bodyWidth}, {"deficit", a.deficit}};
  if (a.m >= 1) {
    out["m"] = a.m;
    out["scaledInradius"] = a.scaledInradius;
    out["successiveDeficit"] = a.successiveDeficit;
  }
  return out;
}

Json toJson(const TwoPlankReport& r) {
  return {{"width1", r.width1},
          {"width2", r.width2},
          {"bodyWidth", r.bodyWidth},
          {"margin", r.margin},
          {"violation", r.violation}};
}

Json toJson(const ProbeConfig& c) {
  return {{"target", std::string(targetName(c.target))},
          {"dimension", c.dimension},
          {"trials", c.trials},
          {"masterSeed", c.masterSeed},
          {"m", c.m},
          {"n", c.n},
          {"tolerance", c.tolerance},
          {"bodyPoints", c.bodyPoints},
          {"gaugePoints", c.gaugePoints},
          {"planks", c.planks},
          {"sitesMin", c.sitesMin},
          {"sitesMax", c.sitesMax}};
}

ProbeConfig probeConfigFromJson(const Json& j) {
  if (!j.is_object()) parseFail("probe config must be an object");
  ProbeConfig c;
  c.target = targetField(j);
  c.dimension = optionalField(j, "dimension", c.dimension);
  c.trials = optionalField(j, "trials", c.trials);
  c.masterSeed = optionalField(j, "masterSeed", c.masterSeed);
  c.m = optionalField(j, "m", c.m);
  c.n = optionalField(j, "n", c.n);
  c.tolerance = optionalField(j, "tolerance", c.tolerance);
  c.bodyPoints = optionalField(j, "bodyPoints", c.bodyPoints);
  c.gaugePoints = optionalField(j, "gaugePoints", c.gaugePoints);
  c.planks = optionalField(j, "planks", c.planks);
  c.sitesMin = optionalField(j, "sitesMin", c.sitesMin);
  c.sitesMax = optionalField(j, "sitesMax", c.sitesMax);
  c.threads = optionalField(j, "threads", c.threads);
  c.timing = optionalField(j, "timing", c.timing);
  c.validate();
  return c;
}

Json toJson(const Instance& i) {
  Json out = {{"target", std::string(targetName(i.target))},
              {"seed", i.seed},
              {"m", i.m},
              {"n", i.n},
              {"K", toJson(i.K)},
              {"C", toJson(i.C)}};
  if (!i.planks.empty()) out["planks"] = toJson(i.planks)["planks"];
  if (!i.hyperplanes.empty()) {
    Json hs = Json::array();
    for (const Hyperplane& h : i.hyperplanes) hs.push_back(toJson(h));
    out["hyperplanes"] = hs;
  }
  if (i.tree) out["tree"] = toJson(*i.tree);
  if (i.partition) out["partition"] = toJson(*i.partition);
  return out;
}

Instance instanceFromJson(const Json& j) {
  if (!j.is_object()) parseFail("instance must be an object");
  Instance out(targetField(j), bodyFromJson(field(j, "K")), bodyFromJson(field(j, "C")));
  out.seed = optionalField<std::uint64_t>(j, "seed", 0);
  out.m = optionalField(j, "m", 1);
  out.n = optionalField(j, "n", 1);
  if (j.contains("planks")) out.planks = planksFromJson(j.at("planks"));
  if (j.contains("hyperplanes")) out.hyperplanes = hyperplanesFromJson(j.at("hyperplanes"));
  if (j.contains("tree")) out.tree = cutTreeFromJson(j.at("tree"));
  if (j.contains("partition")) out.partition = partitionFromJson(j.at("partition"));
  return out;
}

Json toJson(const ProbeReport& r) {
  Json trials = Json::array();
  for (std::size_t i = 0; i < r.perTrial.size(); ++i) {
    const TrialRecord& t = r.perTrial[i];
    trials.push_back({{"trial", i}, {"seed", t.seed}, {"deficit", t.deficit}, {"digest", t.digest}});
  }
  Json violations = Json::array();
  for (const Violation& v : r.violations) {
    violations.push_back({{"trial", v.trial},
                          {"deficit", v.deficit},
                          {"recheckedDeficit", v.recheckedDeficit},
                          {"instance", toJson(v.instance)}});
  }
  Json out = {{"config", toJson(r.config)},
              {"statement", isProvedStatement(r.config.target) ? "proved" : "open"},
              {"perTrial", trials},
              {"runningMin", doubles(r.runningMin)},
              {"minDeficit", r.minDeficit},
              {"argMin", r.argMin},
              {"violations", violations},
              {"verdict", r.verdict}};
  out["argMinInstance"] = r.argMinInstance ? toJson(*r.argMinInstance) : Json(nullptr);
  if (r.wallTime) out["wallTime"] = *r.wallTime;
  return out;
}

std::string probeCsv(const ProbeReport& r) {
  std::string out = "trial,seed,deficit,digest\n";
  char line[160];
  for (std::size_t i = 0; i < r.perTrial.size(); ++i) {
    const TrialRecord& t = r.perTrial[i];
    std::snprintf(line, sizeof line, "%zu,%llu,%.17g,%s\n", i, static_cast<unsigned long long>(t.seed), t.deficit,
                  t.digest.c_str());
    out += line;
  }
  return out;
}

Json readJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) parseFail("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    parseFail("'" + path + "': " + e.what());
  }
}

std::string dumpJson(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace plank
