#include "fanikit/io.hpp"
#include "generators.hpp"

#include <doctest.h>

#include <cstdio>
#include <filesystem>

using namespace fanikit;

namespace {

template <class T, class From>
void round_trips(const T& value, From from) {
  const Json j = to_json(value);
  const std::string text = dump(j);
  const T back = from(parse_json(text));
  CHECK(back == value);
  CHECK(dump(to_json(back)) == text);
}

std::string data(const std::string& name) { return FANIKIT_DATA_DIR "/" + name; }

std::string error_of(const std::string& text) {
  try {
    parse_json(text, "doc.json");
  } catch (const InputError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_SUITE("io") {
  TEST_CASE("rationals are strings") {
    CHECK(to_json(Rational(-3, 6)) == Json("-1/2"));
    CHECK(to_json(Rational(4)) == Json("4"));
    CHECK(rational_from_json(Json("6/4")) == Rational(3, 2));
    CHECK(rational_from_json(Json(7)) == 7);
    CHECK_THROWS_AS(rational_from_json(Json("1/0")), InputError);
    CHECK_THROWS_AS(rational_from_json(Json("x")), InputError);
    CHECK_THROWS_AS(rational_from_json(Json(0.5)), InputError);
  }

  TEST_CASE("doubles keep 17 significant digits") {
    std::mt19937_64 rng(71);
    std::uniform_real_distribution<double> u(-1e6, 1e6);
    for (int k = 0; k < 500; ++k) {
      const double x = u(rng) * std::pow(10.0, gen::uniform(rng, -12, 12));
      CHECK(std::stod(format_double(x)) == x);
    }
  }

  TEST_CASE("malformed JSON reports line and column") {
    const std::string msg = error_of("{\n  \"a\": ,\n}");
    CHECK(msg.rfind("doc.json:2:8:", 0) == 0);
    CHECK(error_of("[1, 2").rfind("doc.json:1:", 0) == 0);
    CHECK(error_of("{}").empty());
    CHECK_THROWS_AS(read_json_file(data("does-not-exist.json")), InputError);
  }

  TEST_CASE("documents carry schema and kind") {
    const Json fan = read_json_file(data("a2.fan.json"));
    CHECK(kind_of(fan) == "fan");
    CHECK_NOTHROW(expect_kind(fan, "fan"));
    CHECK_THROWS_AS(expect_kind(fan, "fanifold"), InputError);
    Json wrong = fan;
    wrong["schema"] = "fanikit/0";
    CHECK_THROWS_AS(expect_kind(wrong, "fan"), InputError);
    Json bad = fan;
    bad["rays"] = "nope";
    CHECK_THROWS(fan_from_json(bad));
  }

  TEST_CASE("data files parse and re-emit") {
    for (const auto& entry : std::filesystem::directory_iterator(FANIKIT_DATA_DIR)) {
      const Json j = read_json_file(entry.path().string());
      CHECK(j.at("schema") == kSchema);
      CHECK(parse_json(dump(j)) == j);
    }
  }

  TEST_CASE("maximal cone input is closed under faces") {
    Json j = document("fan");
    j["rank"] = 2;
    j["rays"] = Json::array({Json::array({1, 0}), Json::array({0, 1}), Json::array({-1, -1})});
    j["maximal_cones"] = Json::array({Json::array({0, 1}), Json::array({1, 2}), Json::array({0, 2})});
    CHECK(fan_from_json(j) == projective_space_fan(2));
  }

  TEST_CASE("fans, polytopes and stacky fans round-trip") {
    std::mt19937_64 rng(72);
    for (int k = 0; k < 50; ++k) {
      round_trips(gen::fan(rng), fan_from_json);
      round_trips(gen::polytope(rng, static_cast<std::size_t>(gen::uniform(rng, 1, 3))), polytope_from_json);
    }
    round_trips(stacky_fan_from_json(read_json_file(data("a1-stacky.json"))), stacky_fan_from_json);
  }

  TEST_CASE("fanifolds round-trip") {
    round_trips(square_fanifold(), fanifold_from_json);
    round_trips(sphere_fanifold(projective_space_fan(2)), fanifold_from_json);
    round_trips(fanifold_from_json(read_json_file(data("a3-minus-rays.fanifold.json"))), fanifold_from_json);
    std::mt19937_64 rng(73);
    for (int k = 0; k < 20; ++k) {
      const Fan f = gen::fan(rng);
      round_trips(fan_fanifold(f), fanifold_from_json);
      round_trips(sphere_fanifold(f), fanifold_from_json);
    }
  }

  TEST_CASE("dual data and dual complexes round-trip") {
    const auto phi = square_fanifold();
    const auto d = dual_data_from_json(read_json_file(data("squareQ.json")), phi);
    const Json j = to_json(d, phi);
    CHECK(dual_data_from_json(parse_json(dump(j)), phi) == d);
    CHECK(dump(to_json(dual_data_from_json(j, phi), phi)) == dump(j));
    const auto psi = dual_space(phi, d);
    round_trips(psi, dual_complex_from_json);
    const auto sphere = fanifold_from_json(read_json_file(data("p2.sphere.fanifold.json")));
    round_trips(dual_space(sphere, dual_data_from_json(read_json_file(data("p2.sphereQ.json")), sphere)), dual_complex_from_json);
  }

  TEST_CASE("triangulations and tropical complexes round-trip") {
    std::mt19937_64 rng(74);
    for (int k = 0; k < 15; ++k) {
      const auto r = gen::regular_triangulation(rng, static_cast<std::size_t>(gen::uniform(rng, 1, 2)));
      round_trips(TriangulationInput{r.t, r.mu}, triangulation_from_json);
      round_trips(dual_complex(r.t, r.mu), tropical_complex_from_json);
    }
    const auto p2 = triangulation_from_json(read_json_file(data("p2.tri.json")));
    round_trips(dual_complex(p2.triangulation, p2.mu), tropical_complex_from_json);
  }

  TEST_CASE("families round-trip") {
    std::mt19937_64 rng(75);
    std::uniform_real_distribution<double> u(-3, 3);
    for (int k = 0; k < 30; ++k) {
      LaurentFamily fam;
      fam.t = std::exp(u(rng) + 4);
      const auto n = static_cast<std::size_t>(gen::uniform(rng, 2, 3));
      for (int m = 0; m < 4; ++m) {
        IntVector a(n);
        for (auto& x : a) x = gen::uniform(rng, -2, 2);
        Rational mu(gen::uniform(rng, -5, 5), gen::uniform(rng, 1, 3));
        mu.canonicalize();
        fam.terms.push_back({Complex(u(rng), u(rng)), a, mu});
      }
      round_trips(fam, family_from_json);
    }
  }

  TEST_CASE("emission is deterministic") {
    const auto phi = square_fanifold();
    CHECK(dump(to_json(validate_fanifold(phi), phi)) == dump(to_json(validate_fanifold(square_fanifold()), phi)));
    const auto fam = family_from_json(read_json_file(data("line.family.json")));
    const auto a = sample_parallel(fam, {16, 16, 2.0});
    const auto b = sample_parallel(fam, {16, 16, 2.0});
    CHECK(cloud_csv(a) == cloud_csv(b));
    const auto tri = triangulation_from_json(read_json_file(data("line.tri.json")));
    const auto pi = dual_complex(tri.triangulation, tri.mu);
    const SliceGrid grid{16, 16, 2.0};
    CHECK(dump(to_json(convergence_report(fam, pi, {1e2, 1e3}, grid))) ==
          dump(to_json(convergence_report(fam, pi, {1e2, 1e3}, grid))));
  }
}
