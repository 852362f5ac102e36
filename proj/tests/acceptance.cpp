// One PASS/FAIL line per acceptance criterion. With an argument N only
// criterion N runs. Exit status 0 iff every criterion that ran passed.

#include "fanikit/amoeba.hpp"
#include "fanikit/fibration.hpp"
#include "fanikit/fltz.hpp"
#include "fanikit/io.hpp"
#include "generators.hpp"
#include "oracles.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

using namespace fanikit;
using namespace oracle;

namespace {

struct Tally {
  std::size_t checks = 0;
  std::size_t failures = 0;
  std::string first;
  std::ostringstream note;

  void operator()(bool ok, const std::string& what) {
    ++checks;
    if (ok) return;
    if (failures++ == 0) first = what;
  }
};

std::string data(const std::string& name) { return std::string(FANIKIT_DATA_DIR) + "/" + name; }

std::set<std::string> ids(const FanifoldData& phi, const std::vector<std::size_t>& idx) {
  std::set<std::string> out;
  for (auto i : idx) out.insert(phi.strata[i].id);
  return out;
}

void square_end_to_end(Tally& t) {
  const auto phi = fanifold_from_json(read_json_file(data("square.fanifold.json")));
  t(phi == square_fanifold(), "data file differs from the built-in square");
  t(validate_fanifold(phi).valid(), "square does not validate");
  const auto f = filtration(phi);
  t(f.size() == 3, "filtration does not have 3 stages");
  if (f.size() != 3) return;
  t(ids(phi, f[0].pieces) == std::set<std::string>{"P1", "P2", "P3", "P4"}, "stage 0 pieces");
  for (auto p : f[0].pieces) t(is_affine_fan(phi.strata[p].fan, 2), "stage 0 piece is not the plane fan");
  t(ids(phi, f[1].added) == std::set<std::string>{"I12", "I23", "I34", "I14"}, "stage 1 added pieces");
  for (auto p : f[1].added) t(is_affine_fan(phi.strata[p].fan, 1) && phi.strata[p].dim == 1, "stage 1 piece is not line fan x interval");
  t(f[1].interfaces.size() == 4, "stage 1 interfaces");
  for (const auto& gi : f[1].interfaces) {
    t(gi.in_facets.size() == 2, "edge glued along two vertices");
    for (auto p : gi.in_facets) t(phi.strata[p].dim == 0, "edge glued to a vertex");
  }
  t(ids(phi, f[2].added) == std::set<std::string>{"F"}, "stage 2 adds F");
  t(f[2].interfaces.size() == 1 && ids(phi, f[2].interfaces[0].in_facets) == std::set<std::string>{"I12", "I23", "I34", "I14"},
    "F glued along its inward boundary");
  t(is_closed(phi), "square is not closed");
  std::map<std::string, std::size_t> ranks;
  for (const auto& h : handle_schedule(phi)) ranks[phi.strata[h.stratum].id] = h.torus_rank;
  for (std::size_t s = 0; s < phi.strata.size(); ++s) {
    const auto& id = phi.strata[s].id;
    const std::size_t expect = 2 - phi.strata[s].dim;
    t(ranks.count(id) && ranks[id] == expect, "torus rank at " + id);
    t(chart_data(phi, s).codim == expect, "chart codim at " + id);
    t(fiber_over(phi, s, FiberMode::pi_bar).torus_rank == expect, "fiber torus rank at " + id);
  }
  t.note << "stages 4/8/9 strata, torus ranks 2,2,2,2 / 1,1,1,1 / 0";
}

std::vector<Fan> random_fans() {
  std::mt19937_64 rng(2024);
  std::vector<Fan> out;
  while (out.size() < 200) out.push_back(gen::fan(rng, 3, 20));
  return out;
}

void quotient_oracle_check(Tally& t) {
  std::size_t pairs = 0;
  for (const auto& f : random_fans()) {
    t(f.rank() <= 3 && f.size() <= 20 && validate_fan(f).valid(), "generator produced an invalid fan");
    for (std::size_t s = 0; s < f.size(); ++s) {
      const auto q = quotient_fan(f, s);
      t(key(q.fan) == quotient_oracle(f, s, q.lattice.projection), "quotient disagrees with the oracle");
      ++pairs;
    }
  }
  t.note << "200 fans, " << pairs << " cones";
}

void fltz_invariants(Tally& t) {
  std::vector<Fan> fans = random_fans();
  for (std::size_t n = 1; n <= 3; ++n) {
    fans.push_back(affine_space_fan(n));
    fans.push_back(projective_space_fan(n));
  }
  for (const char* name : {"a2.fan.json", "a3.fan.json", "p1.fan.json", "p2.fan.json"}) fans.push_back(fan_from_json(read_json_file(data(name))));
  std::size_t strata = 0, pairs = 0;
  for (const auto& f : fans) {
    for (const auto& s : fltz_skeleton(f)) {
      t(s.annihilator.rank() + s.cone.dim() == f.rank(), "annihilator rank + cone dim != n");
      ++strata;
    }
    for (std::size_t s = 0; s < f.size(); ++s) {
      const auto rep = local_factorization(f, s);
      t(rep.ok(), "local factorization fails");
      pairs += rep.entries.size();
    }
  }
  const StackyFan sf = stacky_fan_from_json(read_json_file(data("a1-stacky.json")));
  t(sf.beta == IntMatrix::from_rows({{2}}), "stacky data is not beta = (2)");
  t(validate_stacky(sf).valid(), "stacky line does not validate");
  Integer order = 0;
  for (const auto& s : fltz_skeleton(sf))
    if (s.cone.dim() == 1) order = s.component_order;
  t(order == 2, "stacky line component order is not 2");
  t.note << fans.size() << " fans, " << strata << " strata, " << pairs << " pairs, stacky order " << order.get_str();
}

RatVector support_point(std::mt19937_64& rng, const Fan& f) {
  const auto c = static_cast<std::size_t>(gen::uniform(rng, 0, static_cast<long>(f.size()) - 1));
  RatVector p(f.rank());
  for (const auto& r : f.cone(c).rays) {
    Rational w(gen::uniform(rng, 0, 12), gen::uniform(rng, 1, 4));
    w.canonicalize();
    for (std::size_t i = 0; i < p.size(); ++i) p[i] += w * r[i];
  }
  return p;
}

void retraction(Tally& t) {
  std::mt19937_64 rng(4);
  std::vector<Fan> fans{affine_space_fan(2), Fan::generated_by(2, {{1, 0}, {0, 1}, {-1, 0}}, {{0, 1}, {1, 2}})};
  while (fans.size() < 25) {
    const Fan f = gen::fan(rng);
    if (f.rank() > 0) fans.push_back(f);
  }
  std::size_t points = 0;
  for (std::size_t k = 0; k < fans.size(); ++k) {
    const Fan& f = fans[k];
    const Retraction ret{RetractionContext(f)};
    for (const auto& m : random_rational_points(f.rank(), 1000, 1000 + k)) {
      const auto r = ret(m);
      t(f.support_contains(r), "image outside the support");
      t(ret(r) == r, "not idempotent");
      if (f.support_contains(m)) t(r == m, "support point moved");
      ++points;
    }
    for (int j = 0; j < 1000; ++j) {
      const auto p = support_point(rng, f);
      t(ret(p) == p, "support point moved");
    }
  }
  // Quadrant: {x<0<y} -> {0} x (0,inf), {y<0<x} -> (0,inf) x {0}, closed third quadrant -> origin.
  const Retraction quad{RetractionContext(affine_space_fan(2))};
  for (const auto& m : random_rational_points(2, 1000, 77)) {
    const auto r = quad(m);
    RatVector expect = m;
    if (m[0] < 0 && m[1] > 0)
      expect = {0, m[1]};
    else if (m[0] > 0 && m[1] < 0)
      expect = {m[0], 0};
    else if (m[0] <= 0 && m[1] <= 0)
      expect = {0, 0};
    t(r == expect, "quadrant region description");
  }
  // Convex supports: exact agreement with the nearest point.
  std::size_t convex = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const Fan g = gen::fan(rng);
    if (g.rank() == 0) continue;
    const auto top = g.maximal_cones()[static_cast<std::size_t>(gen::uniform(rng, 0, static_cast<long>(g.maximal_cones().size()) - 1))];
    const Fan f = gen::compact(Fan::generated_by(g.rank(), g.rays(), {g.cones()[top]}));
    const RetractionContext ctx(f);
    const Retraction ret(ctx);
    const auto rays = f.cone(f.maximal_cones()[0]).rays;
    for (const auto& m : random_rational_points(f.rank(), 100, 500 + trial)) t(ret(m) == nearest_in_cone(rays, m, RatMatrix()), "convex support vs oracle");
    t(retract_oracle_check(ctx, random_rational_points(f.rank(), 100, 600 + trial)).ok(), "library nearest-point check");
    ++convex;
  }
  // Complete fans.
  std::size_t complete = 0;
  for (int trial = 0; trial < 10; ++trial) {
    const auto n = static_cast<std::size_t>(gen::uniform(rng, 1, 3));
    const Fan f = trial == 0 ? projective_space_fan(2) : normal_fan(gen::polytope(rng, n));
    const Retraction ret{RetractionContext(f)};
    t(ret.complete(), "complete fan not detected");
    for (const auto& m : random_rational_points(f.rank(), 1000, 900 + trial)) t(ret(m) == m, "complete fan moved a point");
    ++complete;
  }
  t.note << fans.size() << " fans x 1000 points (" << points << "), " << convex << " convex supports, " << complete << " complete fans";
}

void moment_and_dual(Tally& t) {
  const MomentContext unit(LatticePolytope::hull(1, {RatVector{0}, RatVector{1}}));
  std::mt19937_64 rng(5);
  std::set<Rational> xs;
  while (xs.size() < 100) {
    Rational x(gen::uniform(rng, 1, 400), gen::uniform(rng, 1, 40));
    x.canonicalize();
    xs.insert(x);
  }
  Rational prev = -1;
  for (const auto& x : xs) {
    const Rational m = algebraic_moment(unit, RatVector{x})[0];
    t(m > prev && m > 0 && m < 1, "moment on [0,1] not strictly increasing");
    prev = m;
  }
  const auto phi = fanifold_from_json(read_json_file(data("square.fanifold.json")));
  const auto d = dual_data_from_json(read_json_file(data("squareQ.json")), phi);
  t(condition_vi_check(phi, d).pass(), "condition (vi) fails on the square");
  const auto psi = dual_space(phi, d);
  std::map<std::size_t, std::size_t> by_dim;
  for (const auto& c : psi.cells) ++by_dim[c.dim];
  t(by_dim == std::map<std::size_t, std::size_t>{{0, 1}, {1, 4}, {2, 4}}, "square dual is not 1 + 4 + 4");
  for (const auto& c : psi.cells)
    if (phi.strata[c.stratum].id == "F") t(c.shape.vertices == std::vector<RatVector>{{Rational(1, 2), Rational(1, 2)}}, "F-perp is not (1/2, 1/2)");
  t(incidence_is_opposite(phi, psi), "incidence is not order-reversed");
  const auto bad = fanifold_from_json(read_json_file(data("a3-minus-rays.fanifold.json")));
  const auto bad_d = dual_data_from_json(read_json_file(data("a3-minus-raysQ.json")), bad);
  t(validate_fanifold(bad).valid(), "negative control fanifold is invalid as a fanifold");
  const auto rep = condition_vi_check(bad, bad_d);
  t(!rep.pass(), "condition (vi) passes on the affine 3-space minus its rays");
  t.note << "100 samples, Psi 1+4+4 with F-perp (1/2,1/2), negative control: " << (rep.issues.empty() ? "none" : rep.issues[0].kind);
}

void check_complement(Tally& t, const Triangulation& tri, const PLFunction& mu) {
  const auto regions = complement_components(tri, mu);
  t(regions.size() == tri.vertices.size(), "complement components != |Vert|");
  std::set<std::size_t> seen;
  for (const auto& r : regions) {
    t(argmax(tri, mu, r.witness) == std::vector<std::size_t>{r.vertex}, "bad region witness");
    seen.insert(r.vertex);
  }
  t(seen.size() == tri.vertices.size(), "regions repeat a vertex");
}

void tropical(Tally& t) {
  const auto line = triangulation_from_json(read_json_file(data("line.tri.json")));
  const auto pi = dual_complex(line.triangulation, line.mu);
  std::size_t vertices = 0;
  std::set<RatVector> rays;
  for (const auto& c : pi.cells) {
    if (c.dim == 0) ++vertices;
    if (c.dim == 1 && c.shape.rays.size() == 1) rays.insert(c.shape.rays[0]);
  }
  t(vertices == 1, "tropical line has != 1 vertex");
  t(rays.size() == 3, "tropical line has != 3 rays");
  t(grid_mismatches(line.triangulation, line.mu, pi, 4, 8) == 0, "grid oracle on the tropical line");
  const auto p2 = triangulation_from_json(read_json_file(data("p2.tri.json")));
  t(grid_mismatches(p2.triangulation, p2.mu, dual_complex(p2.triangulation, p2.mu), 4, 8) == 0, "grid oracle on p2.tri");
  const auto p1 = triangulation_from_json(read_json_file(data("p1.tri.json")));
  std::size_t inputs = 0;
  for (const auto* in : {&line, &p2, &p1}) {
    t(adapted_check(in->triangulation, in->mu).adapted(), "test input not adapted");
    check_complement(t, in->triangulation, in->mu);
    ++inputs;
  }
  std::mt19937_64 rng(6);
  for (int k = 0; k < 30; ++k) {
    const auto r = gen::regular_triangulation(rng, static_cast<std::size_t>(gen::uniform(rng, 1, 2)));
    t(adapted_check(r.t, r.mu).adapted(), "regular triangulation not adapted");
    check_complement(t, r.t, r.mu);
    if (r.t.rank() == 2) t(grid_mismatches(r.t, r.mu, dual_complex(r.t, r.mu), 4, 8) == 0, "grid oracle on a random input");
    ++inputs;
  }
  t(psi_embedding_check(fan_from_json(read_json_file(data("p1.fan.json"))), p1.triangulation, p1.mu).ok(), "psi check on P1");
  const Fan p2fan = fan_from_json(read_json_file(data("p2.fan.json")));
  const auto rep = psi_embedding_check(p2fan, p2.triangulation, p2.mu);
  t(rep.ok(), "psi check on P2");
  const auto phi = sphere_fanifold(p2fan);
  std::vector<std::size_t> verts;
  for (std::size_t s = 0; s < phi.strata.size(); ++s)
    if (phi.strata[s].dim == 0) verts.push_back(s);
  if (verts.size() == 3 && rep.map.size() == phi.strata.size()) {
    auto permuted = rep.map;
    permuted[verts[0]] = rep.map[verts[1]];
    permuted[verts[1]] = rep.map[verts[2]];
    permuted[verts[2]] = rep.map[verts[0]];
    t(!psi_embedding_check(p2fan, p2.triangulation, p2.mu, permuted).ok(), "permuted labels accepted");
  } else {
    t(false, "unexpected P2 sphere shape");
  }
  t.note << "line 1 vertex / " << rays.size() << " rays, " << inputs << " adapted inputs, psi P1 and P2 certified";
}

void amoeba(Tally& t) {
  const auto fam = family_from_json(read_json_file(data("line.family.json")));
  const auto tri = triangulation_from_json(read_json_file(data("line.tri.json")));
  const auto pi = dual_complex(tri.triangulation, tri.mu);
  const SliceGrid grid{64, 64, 2.0};
  const std::vector<double> ts{1e2, 1e3, 1e4};
  const auto rep = convergence_report(fam, pi, ts, grid);
  t(rep.rows.size() == 3, "convergence table size");
  if (rep.rows.size() != 3) return;
  t(rep.sup_decreasing, "sup distance not strictly decreasing");
  t(rep.rows[2].distance.sup < 0.05, "sup distance at t = 1e4 is not below 0.05");
  double worst = 0;
  std::size_t samples = 0;
  for (double tt : ts) {
    const auto cloud = sample_curve(fam.at(tt), grid);
    for (const auto& p : cloud.points) worst = std::max(worst, exact_residual(fam.at(tt), p.z));
    samples += cloud.points.size();
  }
  t(worst < 1e-8, "retained sample with |W| >= 1e-8");
  char buf[256];
  std::snprintf(buf, sizeof buf, "sup %.6f, %.6f, %.6f; mean %.6f, %.6f, %.6f; %zu samples, worst |W| %.2e", rep.rows[0].distance.sup,
                rep.rows[1].distance.sup, rep.rows[2].distance.sup, rep.rows[0].distance.mean, rep.rows[1].distance.mean,
                rep.rows[2].distance.mean, samples, worst);
  t.note << buf;
}

void poisson(Tally& t) {
  const auto samples = random_phase_points(2, 100, 8);
  t(samples.size() == 100, "sample count");
  const double momenta = poisson_check(2, {{true, 0}, {true, 1}}, samples);
  t(momenta < 1e-6, "momentum brackets not below 1e-6");
  const double control = poisson_check(2, {{false, 0}, {true, 0}}, samples);
  t(std::abs(control - 1.0) <= 1e-6, "{q1, p1} is not 1");
  char buf[128];
  std::snprintf(buf, sizeof buf, "max |{p1,p2}| %.2e, {q1,p1} = %.9f", momenta, control);
  t.note << buf;
}

struct Criterion {
  const char* name;
  double seconds;  // 0: no time bound
  std::function<void(Tally&)> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria{
      {"square end-to-end", 1.0, square_end_to_end},
      {"quotient-fan oracle", 0, quotient_oracle_check},
      {"FLTZ invariants", 0, fltz_invariants},
      {"retraction", 0, retraction},
      {"moment and dual", 0, moment_and_dual},
      {"tropical", 0, tropical},
      {"amoeba convergence", 60.0, amoeba},
      {"Poisson verifier", 0, poisson},
  };
  std::size_t only = 0;
  if (argc > 1) {
    only = std::strtoul(argv[1], nullptr, 10);
    if (only < 1 || only > criteria.size()) {
      std::cerr << "usage: " << argv[0] << " [1-" << criteria.size() << "]\n";
      return 2;
    }
  }
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (only && only != i + 1) continue;
    const auto& c = criteria[i];
    Tally tally;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.run(tally);
    } catch (const std::exception& e) {
      tally(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.seconds > 0) tally(secs < c.seconds, "over the time budget");
    const bool ok = tally.failures == 0;
    all = all && ok;
    std::printf("%s %zu %s: %zu checks, %.2f s", ok ? "PASS" : "FAIL", i + 1, c.name, tally.checks, secs);
    if (!tally.note.str().empty()) std::printf("; %s", tally.note.str().c_str());
    if (!ok) std::printf("; %zu failed, first: %s", tally.failures, tally.first.c_str());
    std::printf("\n");
  }
  return all ? 0 : 1;
}
