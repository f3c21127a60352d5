#include "plank/io.hpp"

#include "doctest.h"

#include <sys/wait.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

using namespace plank;

namespace {

struct Run {
  int status = -1;
  std::string out;
};

const std::string kCli = PLANK_CLI;
const std::string kData = PLANK_DATA;

std::string data(const char* name) { return kData + "/" + name; }

// Runs the CLI through the shell; stderr is merged when `mergeErr` is set.
Run run(const std::string& args, bool mergeErr = false) {
  const std::string cmd = "'" + kCli + "' " + args + (mergeErr ? " 2>&1" : " 2>/dev/null");
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

class TempDir {
 public:
  TempDir() : path_(std::filesystem::temp_directory_path() / ("plank_cli_" + std::to_string(::getpid()))) {
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }
  std::string file(const std::string& name) const { return (path_ / name).string(); }
  std::string write(const std::string& name, const Json& j) const {
    std::ofstream(file(name)) << j.dump();
    return file(name);
  }

 private:
  std::filesystem::path path_;
};

}  // namespace

TEST_CASE("width of the unit square") {
  const Run r = run("width --body " + data("square.json"));
  REQUIRE(r.status == 0);
  const Json j = Json::parse(r.out);
  CHECK(j["value"].get<double>() == doctest::Approx(1.0));
  CHECK(j["kind"] == "euclidean");
}

TEST_CASE("successive inradius of the cube for m = 3") {
  const Run r = run("successive-inradius --body " + data("cube.json") + " --gauge " + data("cube.json") +
                    " --m 3 --tol 1e-7");
  REQUIRE(r.status == 0);
  CHECK(std::abs(Json::parse(r.out)["rho"].get<double>() - 1.0 / 3) <= 2e-7);
}

TEST_CASE("both inradius methods agree on the triangle") {
  const Run r = run("successive-inradius --body " + data("tri.json") + " --gauge " + data("disk.json") +
                    " --m 2 --method both --sequence 3");
  REQUIRE(r.status == 0);
  const Json j = Json::parse(r.out);
  const double exact = std::sqrt(3.0) / 5;
  CHECK(std::abs(j["rho"].get<double>() - exact) <= 1e-6);
  CHECK(std::abs(j["packing"]["rho"].get<double>() - exact) <= 1e-6);
  CHECK(j["sequence"].size() == 3);
}

TEST_CASE("eroded bodies feed back into width") {
  TempDir tmp;
  const Run e = run("erode --body " + data("square.json") + " --gauge " + data("centered_square.json") + " --rho 0.4");
  REQUIRE(e.status == 0);
  const std::string body = tmp.write("eroded.json", Json::parse(e.out)["body"]);
  const Run w = run("width --body " + body);
  REQUIRE(w.status == 0);
  CHECK(Json::parse(w.out)["value"].get<double>() == doctest::Approx(0.6));
}

TEST_CASE("optimal pieces feed back into the partition verifier and the plotter") {
  TempDir tmp;
  const Run c = run("optimal-cuts --body " + data("tri.json") + " --gauge " + data("disk.json") + " --n 2");
  REQUIRE(c.status == 0);
  const Json j = Json::parse(c.out);
  CHECK(j["greatest"]["value"].get<double>() == doctest::Approx(std::sqrt(3.0) / 5).epsilon(1e-7));

  const std::string pieces = tmp.write("pieces.json", j["pieces"]);
  const Run v = run("verify akopyan-karasev --body " + data("tri.json") + " --gauge " + data("disk.json") +
                    " --partition " + pieces);
  CHECK(v.status == 0);
  CHECK_FALSE(Json::parse(v.out)["violation"].get<bool>());

  Json user = j["pieces"];
  user["provenance"] = "user";
  const std::string userPieces = tmp.write("user.json", user);
  const std::string base = "verify akopyan-karasev --body " + data("tri.json") + " --gauge " + data("disk.json");
  const Run refused = run(base + " --partition " + userPieces, true);
  CHECK(refused.status == 1);
  CHECK(refused.out.find("UncertifiedPartition") != std::string::npos);
  const Run allowed = run(base + " --allow-uncertified --partition " + userPieces);
  CHECK(allowed.status == 0);
  CHECK(Json::parse(allowed.out)["hypothesis"] == "hypothesis unverified");

  const std::string tree = tmp.write("tree.json", j["tree"]);
  const Run p = run("plot --body " + data("tri.json") + " --tree " + tree + " --out " + tmp.file("t.svg"));
  CHECK(p.status == 0);
  std::ifstream svg(tmp.file("t.svg"));
  const std::string text((std::istreambuf_iterator<char>(svg)), std::istreambuf_iterator<char>());
  CHECK(text.find("id=\"cells\"") != std::string::npos);
}

TEST_CASE("Conway verification on the triangle") {
  const Run r = run("verify conway --body " + data("tri.json") + " --gauge " + data("disk.json") + " --n 2 --trials 20");
  CHECK(r.status == 0);
  CHECK(Json::parse(r.out)["bound"].get<double>() == doctest::Approx(0.346410161).epsilon(1e-8));
}

TEST_CASE("coverage check reports an uncovered point without failing") {
  const Run gap = run("cover-check --body " + data("square.json") + " --planks " + data("gap_planks.json"));
  CHECK(gap.status == 0);
  const Json j = Json::parse(gap.out);
  CHECK_FALSE(j["covered"].get<bool>());
  CHECK(j["witness"][0].get<double>() > 0.4);
  const Run half = run("cover-check --body " + data("square.json") + " --planks " + data("half_planks.json"));
  CHECK(Json::parse(half.out)["covered"].get<bool>());
}

TEST_CASE("Bang verification rejects a non-covering family") {
  const Run r = run("verify bang --body " + data("square.json") + " --planks " + data("gap_planks.json"), true);
  CHECK(r.status == 1);
  CHECK(r.out.find("error: NotACovering") != std::string::npos);
  const Run ok = run("verify bang --body " + data("hexagon.json") + " --planks " + data("hexagon_planks.json"));
  CHECK(ok.status == 0);
}

TEST_CASE("error codes and messages") {
  const Run missing = run("width --body /nonexistent.json", true);
  CHECK(missing.status == 1);
  CHECK(missing.out.find("error: ParseError") != std::string::npos);
  CHECK(run("no-such-verb").status != 0);
  CHECK(run("--help").status == 0);
  const Run rho = run("erode --body " + data("square.json") + " --gauge " + data("square.json") + " --rho 0.1", true);
  CHECK(rho.status == 1);
  CHECK(rho.out.find("OriginNotInterior") != std::string::npos);
}

TEST_CASE("probe output is reproducible and reloadable") {
  TempDir tmp;
  const std::string args = "probe --config " + data("probe_affine.json") + " --trials 20";
  const Run a = run(args + " --threads 1");
  const Run b = run(args + " --threads 3");
  REQUIRE(a.status == 0);
  CHECK(a.out == b.out);
  const Json report = Json::parse(a.out);
  CHECK(report["config"]["trials"] == 20);
  const Instance inst = instanceFromJson(report["argMinInstance"]);
  CHECK(std::abs(evaluateInstance(inst) - report["minDeficit"].get<double>()) <= 1e-9);

  const Run csv = run(args + " --csv " + tmp.file("p.csv") + " --out " + tmp.file("p.json"));
  CHECK(csv.status == 0);
  std::ifstream in(tmp.file("p.csv"));
  std::string header;
  std::getline(in, header);
  CHECK(header == "trial,seed,deficit,digest");
}

TEST_CASE("probe of a proved statement exits cleanly") {
  const Run r = run("probe --target conway --trials 10 --seed 4");
  CHECK(r.status == 0);
  CHECK(Json::parse(r.out)["statement"] == "proved");
}

TEST_CASE("plots are byte-identical across runs") {
  const std::string args = "plot --body " + data("hexagon.json") + " --planks " + data("hexagon_planks.json") +
                           " --gauge " + data("disk.json") + " --rho 0.2";
  const Run a = run(args);
  const Run b = run(args);
  REQUIRE(a.status == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.find("id=\"erosion\"") != std::string::npos);
  CHECK(a.out.find("id=\"planks\"") != std::string::npos);
}
