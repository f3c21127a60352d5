// plank: command-line front end for the convex-geometry library.
//
// Exit status: 0 success / no violation, 2 violation found, 1 usage or data
// error. Errors are printed as "error: <ErrorName>: <message>".

#include "plank/cuts.hpp"
#include "plank/errors.hpp"
#include "plank/geometry.hpp"
#include "plank/inradius.hpp"
#include "plank/io.hpp"
#include "plank/planks.hpp"
#include "plank/parallel.hpp"
#include "plank/random.hpp"
#include "plank/search.hpp"
#include "plank/svg.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <optional>

using namespace plank;

namespace {

constexpr const char* kSchemaHint =
    "body JSON: {\"type\":\"hpoly\",\"normals\":[[..]],\"offsets\":[..]}"
    " | {\"type\":\"vpoly\",\"vertices\":[[..]]} | {\"type\":\"ball\",\"center\":[..],\"radius\":r}\n"
    "planks JSON: {\"planks\":[{\"normal\":[..],\"low\":r,\"high\":r}, ..]}\n"
    "cut tree JSON: \"leaf\" | {\"cut\":{\"normal\":[..],\"offset\":r},\"below\":..,\"above\":..}\n"
    "partition JSON: {\"provenance\":\"voronoi\",\"cells\":[<body>, ..]}\n"
    "sites JSON: [[x, y], ..]\n";

struct Common {
  std::string body;
  std::string gauge;
  std::string out;
  double tol = 1e-7;
  std::uint64_t seed = 1;
  int threads = 0;
};

struct Outcome {
  Json json;
  bool violation = false;
};

void writeOutput(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::InvalidArgument, "cannot write '" + path + "'");
  f << text;
}

ConvexBody loadBody(const std::string& path, const char* flag) {
  if (path.empty()) throw Error(ErrorCode::InvalidArgument, std::string(flag) + " is required");
  return bodyFromJson(readJsonFile(path));
}

std::optional<ConvexBody> maybeBody(const std::string& path) {
  if (path.empty()) return std::nullopt;
  return bodyFromJson(readJsonFile(path));
}

// Central symmetry of a polytope: its vertex set is invariant under
// reflection in the vertex centroid.
bool centrallySymmetric(const ConvexBody& C) {
  if (C.isBall()) return true;
  if (!C.hasVertices()) return false;
  const Matrix& v = C.vertexMatrix();
  const Vector c = v.colwise().mean().transpose();
  const double eps = 1e-9 * std::max(1.0, C.scale());
  for (Eigen::Index i = 0; i < v.rows(); ++i) {
    const Vector mirror = 2.0 * c - v.row(i).transpose();
    if ((v.rowwise() - mirror.transpose()).rowwise().norm().minCoeff() > eps) return false;
  }
  return true;
}

Json probeSummary(const ProbeReport& r) {
  return {{"target", std::string(targetName(r.config.target))},
          {"trials", r.config.trials},
          {"minDeficit", r.minDeficit},
          {"violations", r.violations.size()},
          {"verdict", r.verdict}};
}

// Random Voronoi partitions of a fixed body.
Outcome voronoiSuite(const ConvexBody& K, const ConvexBody& C, int m, int trials, int sitesMin, int sitesMax,
                     const Common& o, bool width) {
  Json rows = Json::array();
  double worst = std::numeric_limits<double>::infinity();
  bool violation = false;
  const Matrix& v = K.vertexMatrix();
  const Vector lo = v.colwise().minCoeff().transpose().array() - 1.0;
  const Vector hi = v.colwise().maxCoeff().transpose().array() + 1.0;
  const ConvexBody box = ConvexBody::box(lo, hi);
  std::vector<Json> results(static_cast<std::size_t>(trials));
  std::vector<double> deficits(static_cast<std::size_t>(trials));
  std::vector<char> flags(static_cast<std::size_t>(trials));
  parallelFor(trials, o.threads, [&](int t) {
    const std::uint64_t s = trialSeed(o.seed, static_cast<std::uint64_t>(t));
    Rng rng(s);
    const int count = sitesMin + rng.index(sitesMax - sitesMin + 1);
    Matrix sites(count, K.dim());
    for (int i = 0; i < count; ++i) sites.row(i) = randomInteriorPoint(K, rng.next()).transpose();
    const PartitionReport r = verifyPartitionInequality(K, C, voronoiPartition(sites, box), m, std::min(o.tol, 1e-9));
    const double d = width ? r.widthDeficit : r.deficit;
    deficits[static_cast<std::size_t>(t)] = d;
    flags[static_cast<std::size_t>(t)] = d < -o.tol;
    results[static_cast<std::size_t>(t)] = {{"seed", s}, {"sites", toJson(sites)}, {"deficit", d}};
  });
  for (int t = 0; t < trials; ++t) {
    rows.push_back(results[static_cast<std::size_t>(t)]);
    worst = std::min(worst, deficits[static_cast<std::size_t>(t)]);
    violation = violation || flags[static_cast<std::size_t>(t)];
  }
  return {{{"trials", rows}, {"minDeficit", worst}, {"tolerance", o.tol}, {"violation", violation}}, violation};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Plank problems, C-widths and successive C-inradii of convex bodies"};
  app.require_subcommand(1);
  Common o;

  const auto common = [&](CLI::App* sub, bool gauge) {
    sub->add_option("--body", o.body, "convex body K (JSON)");
    if (gauge) sub->add_option("--gauge", o.gauge, "gauge body C (JSON)");
    sub->add_option("--out", o.out, "write the result here instead of stdout");
    sub->add_option("--tol", o.tol, "tolerance")->capture_default_str();
  };

  // width
  auto* width = app.add_subcommand("width", "minimal (C-)width, or the width along --direction");
  common(width, true);
  std::vector<double> direction;
  width->add_option("--direction", direction, "direction components");

  auto* inradius = app.add_subcommand("inradius", "C-inradius r_C(K, 1) by linear programming");
  common(inradius, true);

  auto* successive = app.add_subcommand("successive-inradius", "m-th successive C-inradius");
  common(successive, true);
  int m = 1;
  int n = 2;
  std::string method = "fixed-point";
  int sequence = 0;
  successive->add_option("--m", m, "order m")->capture_default_str();
  successive->add_option("--method", method, "fixed-point | packing | both")->capture_default_str();
  successive->add_option("--sequence", sequence, "also list m r_C(K, m) for m = 1..N");

  auto* erodeCmd = app.add_subcommand("erode", "inner parallel body K_{-rho C}");
  common(erodeCmd, true);
  double rho = 0.0;
  erodeCmd->add_option("--rho", rho, "erosion radius")->required();

  auto* cuts = app.add_subcommand("optimal-cuts", "optimal successive cuts into n pieces");
  common(cuts, true);
  cuts->add_option("--n", n, "pieces")->capture_default_str();
  cuts->add_option("--m", m, "order m")->capture_default_str();

  auto* verify = app.add_subcommand("verify", "check a proved statement");
  verify->require_subcommand(1);
  int trials = 50;
  std::string planksPath;
  std::string partitionPath;
  std::string sitesPath;
  int sitesMin = 2;
  int sitesMax = 6;
  int dimension = 2;
  bool allowUncertified = false;
  const char* suites[] = {"bang", "ball", "two-plank", "conway", "akopyan-karasev", "corollary-width"};
  for (const char* name : suites) {
    auto* s = verify->add_subcommand(name, std::string("suite ") + name +
                                               " (fixed input with --body, random instances otherwise)");
    common(s, true);
    s->add_option("--planks", planksPath, "plank family (JSON)");
    s->add_option("--partition", partitionPath, "partition (JSON)");
    s->add_option("--sites", sitesPath, "Voronoi sites (JSON array of points)");
    s->add_option("--trials", trials, "random trials")->capture_default_str();
    s->add_option("--seed", o.seed, "master seed")->capture_default_str();
    s->add_option("--threads", o.threads, "worker threads (0 = all cores)");
    s->add_option("--m", m, "order m")->capture_default_str();
    s->add_option("--n", n, "pieces")->capture_default_str();
    s->add_option("--sites-min", sitesMin, "fewest random sites")->capture_default_str();
    s->add_option("--sites-max", sitesMax, "most random sites")->capture_default_str();
    s->add_option("--dimension", dimension, "dimension of random instances")->capture_default_str();
    s->add_flag("--allow-uncertified", allowUncertified,
                "check a partition whose provenance is not certified inductive");
  }

  auto* cover = app.add_subcommand("cover-check", "do the planks cover K?");
  common(cover, false);
  std::string mode = "auto";
  int samples = 20000;
  cover->add_option("--planks", planksPath, "plank family (JSON)")->required();
  cover->add_option("--mode", mode, "auto | exact | sampling")->capture_default_str();
  cover->add_option("--samples", samples, "sample count in sampling mode")->capture_default_str();

  auto* probeCmd = app.add_subcommand("probe", "randomized search over an open or proved statement");
  std::string configPath;
  std::string target;
  std::string csvPath;
  bool timing = false;
  ProbeConfig pc;
  probeCmd->add_option("--config", configPath, "probe config (JSON)");
  probeCmd->add_option("--target", target, "affine-plank | successive-plank | cut-conjecture | partition-problem | "
                                           "covering-problem | bang | ball | two-plank | conway | akopyan-karasev | "
                                           "corollary-width");
  probeCmd->add_option("--trials", pc.trials)->capture_default_str();
  probeCmd->add_option("--seed", pc.masterSeed)->capture_default_str();
  probeCmd->add_option("--dimension", pc.dimension)->capture_default_str();
  probeCmd->add_option("--m", pc.m)->capture_default_str();
  probeCmd->add_option("--n", pc.n)->capture_default_str();
  probeCmd->add_option("--planks", pc.planks)->capture_default_str();
  probeCmd->add_option("--tol", pc.tolerance)->capture_default_str();
  probeCmd->add_option("--threads", pc.threads, "worker threads (0 = all cores)");
  probeCmd->add_option("--out", o.out, "report path (default stdout)");
  probeCmd->add_option("--csv", csvPath, "per-trial CSV summary");
  probeCmd->add_flag("--timing", timing, "include wall time in the report");

  auto* plot = app.add_subcommand("plot", "SVG figure of a planar body with optional layers");
  common(plot, true);
  std::string treePath;
  int plotSize = 480;
  plot->add_option("--rho", rho, "draw K_{-rho C} (needs --gauge)");
  plot->add_option("--tree", treePath, "cut tree (JSON): draws its pieces");
  plot->add_option("--optimal-cuts", n, "draw optimal cuts into N pieces (needs --gauge)");
  plot->add_option("--m", m, "order m for --optimal-cuts")->capture_default_str();
  plot->add_option("--planks", planksPath, "plank family (JSON)");
  plot->add_option("--partition", partitionPath, "partition (JSON): draws cells clipped to K");
  plot->add_option("--sites", sitesPath, "Voronoi sites (JSON): draws their cells clipped to K");
  plot->add_option("--size", plotSize, "canvas size in pixels")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    Outcome result;
    if (*width) {
      const ConvexBody K = loadBody(o.body, "--body");
      const auto C = maybeBody(o.gauge);
      if (!direction.empty()) {
        const Direction u = Direction::normalized(Eigen::Map<Vector>(direction.data(), static_cast<Eigen::Index>(direction.size())));
        result.json = {{"width", widthParallel(K, u)}, {"direction", toJson(u.vector())}};
        if (C) result.json["relativeWidth"] = relativeWidthParallel(K, *C, u);
      } else {
        result.json = C ? toJson(minimalRelativeWidth(K, *C)) : toJson(minimalWidth(K));
        result.json["kind"] = C ? "relative" : "euclidean";
      }
    } else if (*inradius) {
      const ConvexBody K = loadBody(o.body, "--body");
      result.json = toJson(cInradius(K, loadBody(o.gauge, "--gauge")));
    } else if (*successive) {
      const ConvexBody K = loadBody(o.body, "--body");
      const ConvexBody C = loadBody(o.gauge, "--gauge");
      if (method != "fixed-point" && method != "packing" && method != "both")
        throw Error(ErrorCode::InvalidArgument, "--method must be fixed-point, packing or both");
      if (method != "packing") result.json = toJson(successiveInradius(K, C, m, o.tol));
      if (method != "fixed-point") {
        const Json p = toJson(successiveInradiusViaPacking(K, C, m, o.tol));
        if (method == "packing") {
          result.json = p;
        } else {
          result.json["packing"] = p;
        }
      }
      if (sequence > 0) result.json["sequence"] = toJson(inradiusSequence(K, C, sequence, o.tol));
    } else if (*erodeCmd) {
      const ConvexBody K = loadBody(o.body, "--body");
      result.json = toJson(erode(K, loadBody(o.gauge, "--gauge"), rho));
    } else if (*cuts) {
      const ConvexBody K = loadBody(o.body, "--body");
      const ConvexBody C = loadBody(o.gauge, "--gauge");
      const double inner = std::min(o.tol, 1e-9);
      const OptimalCuts oc = optimalConwayCuts(K, C, n, m, inner);
      const PartitionFamily pieces = applyCutTree(K, oc.tree);
      result.json = toJson(oc);
      result.json["pieces"] = toJson(pieces);
      result.json["greatest"] = toJson(greatestPieceInradius(pieces, centeredGauge(C), m, inner));
    } else if (*verify) {
      CLI::App* suite = verify->get_subcommands().front();
      const ProbeTarget t = parseTarget(suite->get_name());
      const auto K = maybeBody(o.body);
      if (!K) {
        // Random instances through the probe harness.
        ProbeConfig c;
        c.target = t;
        c.trials = trials;
        c.masterSeed = o.seed;
        c.m = m;
        c.n = n;
        c.dimension = dimension;
        c.tolerance = o.tol;
        c.sitesMin = sitesMin;
        c.sitesMax = sitesMax;
        c.threads = o.threads;
        const ProbeReport r = probe(c);
        result.json = toJson(r);
        result.violation = r.violationFound();
      } else {
        const ConvexBody C = t == ProbeTarget::Ball || (t == ProbeTarget::Bang) ? *K : loadBody(o.gauge, "--gauge");
        switch (t) {
          case ProbeTarget::Bang: {
            const PlankFamily planks = planksFromJson(readJsonFile(planksPath));
            const double d = bangDeficit(*K, planks);
            result.json = {{"deficit", d}, {"violation", d < -1e-9}};
            result.violation = d < -1e-9;
            break;
          }
          case ProbeTarget::Ball: {
            if (!centrallySymmetric(*K))
              throw Error(ErrorCode::InvalidArgument, "the ball suite needs a centrally symmetric --body");
            const AffineDeficit a = affineDeficit(*K, *K, planksFromJson(readJsonFile(planksPath)));
            result.json = toJson(a);
            result.violation = a.deficit < -o.tol;
            result.json["violation"] = result.violation;
            break;
          }
          case ProbeTarget::TwoPlank: {
            const PlankFamily planks = planksFromJson(readJsonFile(planksPath));
            if (planks.size() != 2) throw Error(ErrorCode::InvalidArgument, "two-plank needs exactly two planks");
            const TwoPlankReport r = twoPlankCheck(*K, C, planks[0], planks[1]);
            result.json = toJson(r);
            result.violation = r.violation;
            break;
          }
          case ProbeTarget::Conway: {
            const ConwayReport r = verifyConwayTheorem(*K, C, n, m, trials, o.seed, std::max(o.tol, 1e-9), o.threads);
            result.json = toJson(r);
            result.violation = !r.ok();
            break;
          }
          default: {
            const bool widthSuite = t == ProbeTarget::CorollaryWidth;
            if (!partitionPath.empty() || !sitesPath.empty()) {
              PartitionFamily p;
              if (!partitionPath.empty()) {
                p = partitionFromJson(readJsonFile(partitionPath));
              } else {
                const Matrix& v = K->vertexMatrix();
                const ConvexBody box = ConvexBody::box(v.colwise().minCoeff().transpose().array() - 1.0,
                                                       v.colwise().maxCoeff().transpose().array() + 1.0);
                p = voronoiPartition(matrixFromJson(readJsonFile(sitesPath)), box);
              }
              const PartitionReport r = verifyPartitionInequality(*K, C, p, m, std::min(o.tol, 1e-9), allowUncertified);
              const double d = widthSuite ? r.widthDeficit : r.deficit;
              result.json = toJson(r);
              result.violation = d < -o.tol;
            } else {
              result = voronoiSuite(*K, C, m, trials, sitesMin, sitesMax, o, widthSuite);
            }
            break;
          }
        }
      }
      result.json["suite"] = suite->get_name();
    } else if (*cover) {
      const ConvexBody K = loadBody(o.body, "--body");
      CoverageOptions co;
      if (mode == "exact") {
        co.mode = CoverageOptions::Mode::Exact;
      } else if (mode == "sampling") {
        co.mode = CoverageOptions::Mode::Sampling;
      } else if (mode != "auto") {
        throw Error(ErrorCode::InvalidArgument, "--mode must be auto, exact or sampling");
      }
      co.samples = samples;
      result.json = toJson(coversBody(K, planksFromJson(readJsonFile(planksPath)), co));
    } else if (*probeCmd) {
      ProbeConfig c = pc;
      if (!configPath.empty()) {
        c = probeConfigFromJson(readJsonFile(configPath));
        // Flags given explicitly override the file.
        if (probeCmd->count("--trials")) c.trials = pc.trials;
        if (probeCmd->count("--seed")) c.masterSeed = pc.masterSeed;
        if (probeCmd->count("--dimension")) c.dimension = pc.dimension;
        if (probeCmd->count("--m")) c.m = pc.m;
        if (probeCmd->count("--n")) c.n = pc.n;
        if (probeCmd->count("--planks")) c.planks = pc.planks;
        if (probeCmd->count("--tol")) c.tolerance = pc.tolerance;
        if (probeCmd->count("--threads")) c.threads = pc.threads;
        if (!target.empty()) c.target = parseTarget(target);
      } else {
        if (target.empty()) throw Error(ErrorCode::InvalidArgument, "--target or --config is required");
        c.target = parseTarget(target);
      }
      c.timing = c.timing || timing;
      const ProbeReport r = probe(c);
      result.json = toJson(r);
      result.violation = r.violationFound();
      if (!csvPath.empty()) writeOutput(csvPath, probeCsv(r));
      std::cerr << probeSummary(r).dump() << "\n";
    } else if (*plot) {
      const ConvexBody K = loadBody(o.body, "--body");
      SvgScene scene(K);
      const auto C = maybeBody(o.gauge);
      if (plot->count("--rho")) {
        if (!C) throw Error(ErrorCode::InvalidArgument, "--rho needs --gauge");
        const HalfspaceSet e = erode(K, centeredGauge(*C), rho);
        if (e.body) scene.erosion = e.body->vertexMatrix();
      }
      const auto addPieces = [&](const PartitionFamily& p) {
        for (const ConvexBody& c : p.cells) scene.cells.push_back(c.vertexMatrix());
      };
      if (!treePath.empty()) addPieces(applyCutTree(K, cutTreeFromJson(readJsonFile(treePath))));
      if (plot->count("--optimal-cuts")) {
        if (!C) throw Error(ErrorCode::InvalidArgument, "--optimal-cuts needs --gauge");
        const OptimalCuts oc = optimalConwayCuts(K, *C, n, m, 1e-9);
        for (double c : oc.offsets) scene.cuts.push_back({Direction(oc.direction), c});
      }
      if (!planksPath.empty()) scene.planks = planksFromJson(readJsonFile(planksPath));
      if (!partitionPath.empty() || !sitesPath.empty()) {
        PartitionFamily p;
        if (!partitionPath.empty()) {
          p = partitionFromJson(readJsonFile(partitionPath));
        } else {
          const Matrix sites = matrixFromJson(readJsonFile(sitesPath));
          const Matrix& v = K.vertexMatrix();
          p = voronoiPartition(sites, ConvexBody::box(v.colwise().minCoeff().transpose().array() - 1.0,
                                                      v.colwise().maxCoeff().transpose().array() + 1.0));
          for (Eigen::Index i = 0; i < sites.rows(); ++i) scene.points.push_back(sites.row(i).transpose());
        }
        for (const ConvexBody& cell : p.cells) {
          Matrix rows(K.normals().rows() + cell.normals().rows(), 2);
          Vector rhs(rows.rows());
          rows << K.normals(), cell.normals();
          rhs << K.offsets(), cell.offsets();
          const HalfspaceSet piece = intersectHalfspaces(rows, rhs, &K.vertexMatrix());
          if (piece.body) scene.cells.push_back(piece.body->vertexMatrix());
        }
      }
      SvgOptions so;
      so.size = plotSize;
      writeOutput(o.out, renderSvg(scene, so));
      return 0;
    }
    writeOutput(o.out, dumpJson(result.json));
    return result.violation ? 2 : 0;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    if (e.code() == ErrorCode::ParseError) std::cerr << kSchemaHint;
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: InvalidArgument: " << e.what() << "\n";
    return 1;
  }
}
