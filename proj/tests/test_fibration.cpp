#include "fanikit/fibration.hpp"
#include "fanikit/io.hpp"
#include "generators.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace fanikit;

namespace {

RatVector rv(std::initializer_list<long> xs) {
  RatVector v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

// A random point of the support: nonnegative combination of the rays of a random cone.
RatVector support_point(std::mt19937_64& rng, const Fan& f) {
  const auto c = static_cast<std::size_t>(gen::uniform(rng, 0, static_cast<long>(f.size()) - 1));
  RatVector p(f.rank());
  for (const auto& r : f.cone(c).rays) {
    const Rational w(gen::uniform(rng, 0, 12), gen::uniform(rng, 1, 4));
    for (std::size_t i = 0; i < p.size(); ++i) p[i] += w * r[i];
  }
  for (auto& x : p) x.canonicalize();
  return p;
}

// All faces of one random cone: a fan with convex support.
Fan single_cone_fan(std::mt19937_64& rng) {
  while (true) {
    const Fan f = gen::fan(rng);
    const auto maximal = f.maximal_cones();
    const auto m = maximal[static_cast<std::size_t>(gen::uniform(rng, 0, static_cast<long>(maximal.size()) - 1))];
    const Fan g = gen::compact(Fan::generated_by(f.rank(), f.rays(), {f.cones()[m]}));
    if (g.rank() > 0) return g;
  }
}

DualComplex square_dual() {
  const auto phi = square_fanifold();
  const auto data = dual_data_from_json(read_json_file(FANIKIT_DATA_DIR "/squareQ.json"), phi);
  return dual_space(phi, data);
}

}  // namespace

TEST_SUITE("fibration-model") {
  TEST_CASE("quadrant retraction examples") {
    const RetractionContext ctx(affine_space_fan(2));
    CHECK(retract(ctx, rv({-1, 2})) == rv({0, 2}));
    CHECK(retract(ctx, rv({-3, -4})) == rv({0, 0}));
    CHECK(retract(ctx, rv({3, 4})) == rv({3, 4}));
    CHECK(retract(ctx, rv({5, -1})) == rv({5, 0}));
    CHECK_THROWS(retract(ctx, rv({1})));
  }

  TEST_CASE("quadrant regions") {
    const Fan f = affine_space_fan(2);
    const Retraction ret{RetractionContext(f)};
    std::mt19937_64 rng(51);
    for (int k = 0; k < 300; ++k) {
      const RatVector m = gen::rational_point(rng, 2);
      const RatVector r = ret(m);
      if (m[0] >= 0 && m[1] >= 0) {
        CHECK(r == m);
        CHECK_FALSE(ret.capturing_cone(m).has_value());
      } else if (m[0] < 0 && m[1] > 0) {
        // {x < 0, y > 0} lands on {0} x (0, inf)
        CHECK(r == RatVector{0, m[1]});
      } else if (m[0] > 0 && m[1] < 0) {
        CHECK(r == RatVector{m[0], 0});
      } else {
        // closed third quadrant contracts to the origin
        CHECK(r == RatVector{0, 0});
      }
    }
  }

  TEST_CASE("complete fans give the identity") {
    const RetractionContext ctx(projective_space_fan(2));
    CHECK(retract(ctx, rv({-7, 3})) == rv({-7, 3}));
    CHECK(Retraction(ctx).complete());
    std::mt19937_64 rng(52);
    for (int trial = 0; trial < 20; ++trial) {
      const auto n = static_cast<std::size_t>(gen::uniform(rng, 1, 3));
      const RetractionContext c(normal_fan(gen::polytope(rng, n)));
      for (int k = 0; k < 20; ++k) {
        const auto m = gen::rational_point(rng, n);
        CHECK(retract(c, m) == m);
      }
    }
  }

  TEST_CASE("half-plane fan fixes its boundary") {
    const Fan half = Fan::generated_by(2, {{1, 0}, {0, 1}, {-1, 0}}, {{0, 1}, {1, 2}});
    const RetractionContext ctx(half);
    for (long x = -5; x <= 5; ++x) CHECK(retract(ctx, rv({x, 0})) == rv({x, 0}));
    CHECK(retract(ctx, rv({2, -3})) == rv({2, 0}));
    CHECK(retract_oracle_check(ctx, random_rational_points(2, 100, 7)).ok());
  }

  TEST_CASE("random fans: idempotent, lands in the support, fixes the support") {
    std::mt19937_64 rng(53);
    for (int trial = 0; trial < 25; ++trial) {
      const Fan f = gen::fan(rng);
      if (f.rank() == 0) continue;
      const Retraction ret{RetractionContext(f)};
      for (const auto& m : random_rational_points(f.rank(), 40, 100 + trial)) {
        const RatVector r = ret(m);
        CHECK(f.support_contains(r));
        CHECK(ret(r) == r);
      }
      for (int k = 0; k < 20; ++k) {
        const auto p = support_point(rng, f);
        CHECK(ret(p) == p);
      }
    }
  }

  TEST_CASE("convex supports agree with the nearest-point oracle") {
    const RetractionContext quad(affine_space_fan(2));
    CHECK(retract_oracle_check(quad, random_rational_points(2, 100, 3)).ok());
    std::mt19937_64 rng(54);
    for (int trial = 0; trial < 20; ++trial) {
      const RetractionContext ctx(single_cone_fan(rng));
      const auto rep = retract_oracle_check(ctx, random_rational_points(ctx.fan.rank(), 50, 200 + trial));
      CHECK(rep.samples == 50);
      CHECK(rep.ok());
    }
  }

  TEST_CASE("convex supports agree with the subset-projection oracle") {
    std::mt19937_64 rng(55);
    RatMatrix g(2, 2);
    g(0, 0) = 2;
    g(0, 1) = 1;
    g(1, 0) = 1;
    g(1, 1) = 2;
    for (int trial = 0; trial < 20; ++trial) {
      const Fan f = single_cone_fan(rng);
      const auto top = f.cone(f.maximal_cones()[0]).rays;
      const Retraction ret{RetractionContext(f)};
      for (const auto& m : random_rational_points(f.rank(), 30, 300 + trial)) CHECK(ret(m) == oracle::nearest_in_cone(top, m, RatMatrix()));
      if (f.rank() != 2) continue;
      const Retraction skew{RetractionContext(f, g)};
      for (const auto& m : random_rational_points(2, 30, 400 + trial)) CHECK(skew(m) == oracle::nearest_in_cone(top, m, g));
    }
  }

  TEST_CASE("oracle under a non-standard inner product") {
    RatMatrix g(2, 2);
    g(0, 0) = 2;
    g(0, 1) = 1;
    g(1, 0) = 1;
    g(1, 1) = 2;
    const RetractionContext ctx(affine_space_fan(2), g);
    CHECK(retract_oracle_check(ctx, random_rational_points(2, 100, 4)).ok());
  }

  TEST_CASE("fiber descriptors on the square") {
    const auto phi = square_fanifold();
    const auto psi = square_dual();
    const auto p1 = fiber_over(phi, *phi.find_stratum("P1"), FiberMode::pi_underline, &psi);
    CHECK(p1.torus_rank == 2);
    CHECK(p1.base == "T*S");
    CHECK(p1.base_dim == 0);
    REQUIRE(p1.dual_cell.has_value());
    CHECK(psi.cells[*p1.dual_cell].dim == 2);

    const auto f = fiber_over(phi, *phi.find_stratum("F"), FiberMode::pi_underline, &psi);
    CHECK(f.torus_rank == 0);
    CHECK(f.base == "T*S");
    CHECK(f.base_dim == 4);

    const auto i12 = fiber_over(phi, *phi.find_stratum("I12"), FiberMode::pi);
    CHECK(i12.torus_rank == 1);
    CHECK(i12.base == "S");
    CHECK(i12.base_dim == 1);

    CHECK_THROWS(fiber_over(phi, 0, FiberMode::pi_underline, nullptr));
    for (std::size_t s = 0; s < phi.strata.size(); ++s)
      CHECK(fiber_over(phi, s, FiberMode::pi_bar).torus_rank == phi.strata[s].lattice_rank());
  }

  TEST_CASE("Poisson brackets of coordinate projections") {
    const auto samples = random_phase_points(2, 100, 9);
    REQUIRE(samples.size() == 100);
    for (const auto& x : samples)
      for (double c : x) CHECK(std::abs(c) <= 1.0);
    const std::vector<PhaseCoordinate> momenta{{true, 0}, {true, 1}};
    CHECK(poisson_check(2, momenta, samples) <= 1e-8);
    const std::vector<PhaseCoordinate> mixed{{true, 0}, {false, 1}};
    CHECK(poisson_check(2, mixed, samples) <= 1e-8);
    const std::vector<PhaseCoordinate> control{{false, 0}, {true, 0}};
    CHECK(std::abs(poisson_check(2, control, samples) - 1.0) <= 1e-6);

    // Nonlinear functions of momenta still commute; q1 with p1^2 does not.
    auto p1sq = [](const std::vector<double>& x) { return x[2] * x[2]; };
    auto p2cube = [](const std::vector<double>& x) { return x[3] * x[3] * x[3]; };
    auto q1 = [](const std::vector<double>& x) { return x[0]; };
    for (const auto& x : samples) {
      CHECK(std::abs(poisson_bracket(2, p1sq, p2cube, x, 1e-4)) <= 1e-8);
      CHECK(poisson_bracket(2, q1, p1sq, x, 1e-4) == doctest::Approx(2 * x[2]).epsilon(1e-6));
    }
  }
}
