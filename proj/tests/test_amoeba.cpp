#include "fanikit/amoeba.hpp"
#include "fanikit/io.hpp"
#include "generators.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <cstdlib>

using namespace fanikit;
using namespace oracle;

namespace {

LaurentFamily line_family(double t) {
  LaurentFamily fam;
  fam.t = t;
  fam.terms = {{Complex(1, 0), {0, 0}, 0}, {Complex(1, 0), {1, 0}, 0}, {Complex(1, 0), {0, 1}, 0}};
  return fam;
}

TropicalComplex tropical_line() {
  Triangulation t;
  t.vertices = {{0, 0}, {1, 0}, {0, 1}};
  t.simplices = {{0, 1, 2}};
  PLFunction mu;
  mu.values = {0, 0, 0};
  return dual_complex(t, mu);
}

}  // namespace

TEST_SUITE("amoeba-lab") {
  TEST_CASE("eval_W examples") {
    const auto fam = line_family(10);
    CHECK(std::abs(eval_W(fam, {Complex(1, 0), Complex(-2, 0)})) == 0);
    CHECK(eval_W(fam, {Complex(1, 0), Complex(1, 0)}) == Complex(3, 0));
    LaurentFamily shifted;
    shifted.t = 10;
    shifted.terms = {{Complex(1, 0), {0}, 0}, {Complex(1, 0), {1}, 1}};
    CHECK(std::abs(eval_W(shifted, {Complex(-10, 0)})) <= 1e-15);
    CHECK_THROWS(eval_W(fam, {Complex(0, 0), Complex(1, 0)}));
  }

  TEST_CASE("family validation") {
    CHECK_NOTHROW(line_family(100).validate());
    CHECK_THROWS(line_family(1.0).validate());
    LaurentFamily one;
    one.terms = {{Complex(1, 0), {0, 0}, 0}};
    CHECK_THROWS(one.validate());
    auto ragged = line_family(10);
    ragged.terms[1].alpha = {1};
    CHECK_THROWS(ragged.validate());
    CHECK(line_family(10).at(1000).t == 1000);
  }

  TEST_CASE("single slices") {
    const auto fam = line_family(100);
    const auto one = sample_serial(fam, {1, 1, 2.0});
    REQUIRE(one.points.size() == 1);
    CHECK(std::abs(one.points[0].z[1] - Complex(-2, 0)) <= 1e-12);
    CHECK(std::abs(one.points[0].log[0]) <= 1e-15);
    CHECK(one.points[0].log[1] == doctest::Approx(std::log(2.0)).epsilon(1e-12));

    const auto two = sample_serial(fam, {1, 2, 2.0});
    CHECK(two.slices == 2);
    CHECK(two.zero_roots == 1);
    CHECK(two.points.size() == 1);
  }

  TEST_CASE("root count is bounded by the degree span") {
    LaurentFamily fam;
    fam.t = 10;
    fam.terms = {{Complex(1, 0), {0, -1}, 0}, {Complex(2, 0), {1, 0}, 0}, {Complex(-1, 0), {0, 2}, 1}, {Complex(1, 0), {1, 1}, 0}};
    const SliceGrid grid{8, 8, 1.0};
    const auto cloud = sample_serial(fam, grid);
    CHECK(cloud.slices == 64);
    CHECK(cloud.points.size() <= cloud.slices * 3);
    for (const auto& p : cloud.points) CHECK(std::abs(eval_W(fam, p.z)) < 1e-8);
  }

  TEST_CASE("samples satisfy W = 0 under an exact re-evaluation") {
    for (double t : {1e2, 1e3, 1e4}) {
      const auto fam = line_family(t);
      const auto cloud = sample_curve(fam);
      CHECK(cloud.points.size() > 3000);
      double worst = 0;
      for (const auto& p : cloud.points) {
        for (const auto& c : p.z) CHECK(c != Complex(0, 0));
        worst = std::max(worst, exact_residual(fam, p.z));
        for (std::size_t i = 0; i < 2; ++i) CHECK(p.log[i] == std::log(std::abs(p.z[i])));
      }
      INFO("t = " << t << ", worst exact residual " << worst);
      CHECK(worst < 1e-8);
    }
  }

  TEST_CASE("samples with nonzero mu re-evaluate exactly too") {
    LaurentFamily fam;
    fam.t = 1000;
    fam.terms = {{Complex(1, 0), {0, 0}, 0}, {Complex(2, -1), {1, 0}, 1}, {Complex(-1, 0.5), {0, 1}, 1}, {Complex(1, 0), {-1, -1}, 2}};
    const auto cloud = sample_parallel(fam, {32, 32, 1.5});
    CHECK(!cloud.points.empty());
    for (const auto& p : cloud.points) CHECK(exact_residual(fam, p.z) < 1e-8);
  }

  TEST_CASE("conjugate slices have equal Log images") {
    const auto fam = line_family(1000);
    const SliceGrid grid{16, 16, 2.0};
    const auto cloud = sample_serial(fam, grid);
    REQUIRE(cloud.points.size() == 16 * 16);
    std::size_t matched = 0;
    for (const auto& p : cloud.points) {
      const std::vector<Complex> conj{std::conj(p.z[0]), std::conj(p.z[1])};
      double best = 1e300;
      const SamplePoint* twin = nullptr;
      for (const auto& q : cloud.points) {
        const double d = std::abs(q.z[0] - conj[0]) + std::abs(q.z[1] - conj[1]);
        if (d < best) {
          best = d;
          twin = &q;
        }
      }
      REQUIRE(twin != nullptr);
      if (best > 1e-6 * (1 + std::abs(p.z[0]))) continue;
      ++matched;
      for (std::size_t i = 0; i < 2; ++i) CHECK(std::abs(twin->log[i] - p.log[i]) <= 1e-12);
    }
    CHECK(matched == cloud.points.size());
  }

  TEST_CASE("serial and parallel samplers agree exactly") {
    const auto fam = line_family(1000);
    const auto a = sample_serial(fam);
    const auto b = sample_parallel(fam);
    REQUIRE(a.points.size() == b.points.size());
    for (std::size_t i = 0; i < a.points.size(); ++i) {
      CHECK(a.points[i].z == b.points[i].z);
      CHECK(a.points[i].log == b.points[i].log);
    }
    CHECK(cloud_csv(a) == cloud_csv(b));
    CHECK(cloud_csv(a).rfind("z1re,z1im,z2re,z2im,log1,log2\n", 0) == 0);
  }

  TEST_CASE("thread cap from the environment") {
    setenv("FANIKIT_THREADS", "1", 1);
    CHECK(sampler_threads() == 1);
    const auto fam = line_family(100);
    const auto capped = sample_parallel(fam, {8, 8, 2.0});
    unsetenv("FANIKIT_THREADS");
    CHECK(sampler_threads() >= 1);
    CHECK(cloud_csv(capped) == cloud_csv(sample_serial(fam, {8, 8, 2.0})));
  }

  TEST_CASE("rank 3 sampling") {
    LaurentFamily fam;
    fam.t = 100;
    fam.terms = {{Complex(1, 0), {0, 0, 0}, 0}, {Complex(1, 0), {1, 0, 0}, 0}, {Complex(1, 0), {0, 1, 0}, 0}, {Complex(1, 0), {0, 0, 1}, 0}};
    const auto cloud = sample_parallel(fam, {6, 6, 1.0});
    CHECK(cloud.rank == 3);
    CHECK(cloud.slices == 36 * 36);
    CHECK(!cloud.points.empty());
    for (const auto& p : cloud.points) CHECK(exact_residual(fam, p.z) < 1e-8);
  }

  TEST_CASE("distance to the tropical line") {
    const auto pi = tropical_line();
    const ComplexProjector proj(pi);
    CHECK(proj.distance({5, 5}) <= 1e-12);
    CHECK(proj.distance({0, 0}) <= 1e-12);
    CHECK(proj.distance({-3, 0}) <= 1e-12);
    CHECK(proj.distance({1, 0}) == doctest::Approx(std::sqrt(0.5)));
    CHECK(proj.distance({-1, -1}) == doctest::Approx(1.0));
    SampleCloud on;
    on.rank = 2;
    on.log_t = std::log(10.0);
    for (double x : {0.0, 1.0, 7.0}) on.points.push_back({{Complex(1, 0), Complex(1, 0)}, {x, x}});
    const auto d = rescaled_distance(on, pi);
    CHECK(d.samples == 3);
    CHECK(d.sup <= 1e-12);
    CHECK_THROWS(rescaled_distance(SampleCloud{}, pi));
  }

  TEST_CASE("rescaled distance shrinks with t") {
    const auto pi = tropical_line();
    const std::vector<double> ts{1e2, 1e3, 1e4};
    const auto rep = convergence_report(line_family(10), pi, ts);
    REQUIRE(rep.rows.size() == 3);
    CHECK(rep.sup_decreasing);
    CHECK(rep.mean_trend);
    for (std::size_t i = 0; i < 3; ++i) {
      CHECK(rep.rows[i].t == ts[i]);
      CHECK(rep.rows[i].rejected == 0);
      // z1 = z2 = -1/2 lies on the curve at Log = (-log 2, -log 2), which is
      // log 2 away from the tropical line before rescaling.
      CHECK(rep.rows[i].distance.sup <= std::log(2.0) / std::log(ts[i]) + 1e-12);
      CHECK(rep.rows[i].distance.sup > 0);
    }
    const auto single = convergence_report(line_family(10), pi, {1e3});
    CHECK(single.rows.size() == 1);
    CHECK(single.converging());
    LaurentFamily rank3;
    rank3.t = 10;
    rank3.terms = {{Complex(1, 0), {0, 0, 0}, 0}, {Complex(1, 0), {1, 0, 0}, 0}};
    CHECK_THROWS(convergence_report(rank3, pi, {1e2}));
    CHECK_THROWS(convergence_report(line_family(10), pi, {1e3, 1e2}));
  }

  TEST_CASE("family JSON from file") {
    const auto fam = family_from_json(read_json_file(FANIKIT_DATA_DIR "/line.family.json"));
    CHECK(fam.t == 1e4);
    CHECK(fam.rank() == 2);
    CHECK(fam.terms.size() == 3);
  }
}
