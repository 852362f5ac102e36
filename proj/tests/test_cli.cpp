#include "fanikit/io.hpp"

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

using namespace fanikit;

namespace {

struct Run {
  int status = -1;
  std::string out;
  std::string err;
};

std::filesystem::path scratch() {
  const auto dir = std::filesystem::temp_directory_path() / "fanikit-cli-test";
  std::filesystem::create_directories(dir);
  return dir;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Run run(const std::string& args) {
  const auto err = scratch() / "stderr.txt";
  const std::string cmd = std::string(FANIKIT_CLI) + " " + args + " 2>" + err.string();
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  r.err = slurp(err);
  return r;
}

std::string data(const std::string& name) { return std::string(FANIKIT_DATA_DIR) + "/" + name; }

std::string write_scratch(const std::string& name, const std::string& text) {
  const auto p = scratch() / name;
  std::ofstream(p, std::ios::binary) << text;
  return p.string();
}

}  // namespace

TEST_SUITE("fanikit-cli") {
  TEST_CASE("validate the square fanifold") {
    const auto r = run("validate " + data("square.fanifold.json"));
    CHECK(r.status == 0);
    const Json j = parse_json(r.out);
    CHECK(j.at("valid") == true);
    CHECK(j.at("closed") == true);
  }

  TEST_CASE("quotient of the plane by a ray is the line") {
    const auto r = run("quotient " + data("a2.fan.json") + " --cone 1");
    REQUIRE(r.status == 0);
    const Json j = parse_json(r.out);
    const Fan a2 = fan_from_json(read_json_file(data("a2.fan.json")));
    CHECK(fan_from_json(j) == quotient_fan(a2, 1).fan);
    CHECK(fan_from_json(j).rank() == 1);
    CHECK(fan_from_json(j).size() == 2);
  }

  TEST_CASE("dual of the square puts F at (1/2, 1/2)") {
    const auto r = run("dual " + data("square.fanifold.json") + " --polytopes " + data("squareQ.json"));
    REQUIRE(r.status == 0);
    const Json j = parse_json(r.out);
    CHECK(j.at("condition_vi").at("pass") == true);
    const DualComplex psi = dual_complex_from_json(j.at("psi"));
    const auto phi = square_fanifold();
    const auto f = *phi.find_stratum("F");
    bool found = false;
    for (const auto& c : psi.cells)
      if (c.stratum == f) {
        found = true;
        CHECK(c.dim == 0);
        CHECK(c.shape.vertices == std::vector<RatVector>{{Rational(1, 2), Rational(1, 2)}});
      }
    CHECK(found);
  }

  TEST_CASE("exit codes") {
    CHECK(run("validate " + data("a3-minus-rays.fanifold.json")).status == 0);
    const std::string broken = write_scratch("broken.fan.json", R"({"schema": "fanikit/1", "kind": "fan", "rank": 2,
 "rays": [[1, 0], [0, 1]], "cones": [[], [0, 1]]})");
    CHECK(run("validate " + broken).status == 2);
    CHECK(run("validate " + scratch().string() + "/missing.json").status == 1);
    CHECK(run("no-such-command").status == 1);
    CHECK(run("").status == 1);
    const std::string unsaturated = write_scratch("nonprimitive.fan.json", R"({"schema": "fanikit/1", "kind": "fan", "rank": 1,
 "rays": [[2]], "cones": [[], [0]]})");
    CHECK(run("validate " + unsaturated).status == 2);
  }

  TEST_CASE("malformed JSON gives a position") {
    const std::string bad = write_scratch("bad.json", "{\n  \"schema\": \"fanikit/1\",\n  \"kind\": fan\n}");
    const auto r = run("validate " + bad);
    CHECK(r.status == 1);
    CHECK(r.err.find(bad + ":3:") != std::string::npos);
  }

  TEST_CASE("reports are byte-identical across runs") {
    for (const std::string& args : {"filtration " + data("square.fanifold.json"), "schedule " + data("square.fanifold.json"),
                                    "fltz " + data("a1-stacky.json"), "retract " + data("a2.fan.json") + " --samples 50 --seed 7",
                                    "tropical " + data("p2.tri.json") + " --mode components",
                                    "amoeba " + data("line.family.json") + " --radii 8 --phases 8 --triangulation " + data("line.tri.json")}) {
      CAPTURE(args);
      const auto a = run(args);
      const auto b = run(args);
      CHECK(a.status == 0);
      CHECK(!a.out.empty());
      CHECK(a.out == b.out);
    }
  }

  TEST_CASE("emitted documents re-parse to equal values") {
    const auto out = scratch() / "psi.json";
    REQUIRE(run("dual " + data("square.fanifold.json") + " --polytopes " + data("squareQ.json") + " -o " + out.string()).status == 0);
    const Json j = read_json_file(out.string());
    const DualComplex psi = dual_complex_from_json(j.at("psi"));
    CHECK(dual_complex_from_json(parse_json(dump(to_json(psi)))) == psi);
    const auto tri = run("tropical " + data("p2.tri.json") + " --mode complex");
    REQUIRE(tri.status == 0);
    const TropicalComplex pi = tropical_complex_from_json(parse_json(tri.out));
    CHECK(dump(to_json(pi)) == tri.out);
  }

  TEST_CASE("psi check and report bundle") {
    const auto psi = run("tropical " + data("p2.tri.json") + " --mode psi --fan " + data("p2.fan.json"));
    CHECK(psi.status == 0);
    CHECK(parse_json(psi.out).at("ok") == true);
    const auto dir = scratch() / "report";
    std::filesystem::remove_all(dir);
    const auto r = run("report " + data("square.fanifold.json") + " --polytopes " + data("squareQ.json") + " --dir " + dir.string());
    CHECK(r.status == 0);
    CHECK(std::filesystem::exists(dir / "report.json"));
    CHECK(std::filesystem::exists(dir / "psi.svg"));
    CHECK(kind_of(read_json_file((dir / "report.json").string())) == "report");
  }

  TEST_CASE("thread cap does not change the samples") {
    const std::string args = "amoeba " + data("line.family.json") + " --radii 16 --phases 16";
    const auto one = scratch() / "one.csv";
    const auto many = scratch() / "many.csv";
    REQUIRE(std::system(("FANIKIT_THREADS=1 " + std::string(FANIKIT_CLI) + " " + args + " --csv " + one.string() + " >/dev/null").c_str()) == 0);
    REQUIRE(std::system(("FANIKIT_THREADS=4 " + std::string(FANIKIT_CLI) + " " + args + " --csv " + many.string() + " >/dev/null").c_str()) == 0);
    CHECK(slurp(one) == slurp(many));
    CHECK(slurp(one).rfind("z1re,z1im,z2re,z2im,log1,log2\n", 0) == 0);
  }
}
