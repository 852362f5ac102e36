#include "fanikit/tropical.hpp"

#include "fanikit/fanifold.hpp"
#include "fanikit/lattice.hpp"
#include "fanikit/lp.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace fanikit {

std::optional<std::size_t> Triangulation::origin() const {
  for (std::size_t i = 0; i < vertices.size(); ++i)
    if (is_zero(vertices[i])) return i;
  return std::nullopt;
}

namespace {

std::string set_text(const std::vector<std::size_t>& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
  return out + "}";
}

LatticePolytope hull_of(const Triangulation& t) {
  if (t.delta_vee) return *t.delta_vee;
  LatticePolytope q;
  q.ambient = t.rank();
  for (const auto& v : t.vertices) q.vertices.push_back(to_rational(v));
  return q;
}

// Inner facet inequalities <normal, x> >= rhs of a full-dimensional simplex;
// entry i is the facet opposite vertex i.
std::vector<std::pair<RatVector, Rational>> simplex_facets(const std::vector<RatVector>& v) {
  const std::size_t n = v.size() - 1;
  std::vector<std::pair<RatVector, Rational>> out;
  if (n == 0) return out;  // a point in rank 0 has no facets
  for (std::size_t i = 0; i <= n; ++i) {
    std::vector<RatVector> diffs;
    std::size_t base = i == 0 ? 1 : 0;
    for (std::size_t j = 0; j <= n; ++j) {
      if (j == i || j == base) continue;
      RatVector d(n);
      for (std::size_t c = 0; c < n; ++c) d[c] = v[j][c] - v[base][c];
      diffs.push_back(d);
    }
    RatVector normal = n == 1 ? RatVector{1} : rational_kernel(RatMatrix::from_rows(diffs, n)).front();
    Rational rhs = dot(normal, v[base]);
    if (dot(normal, v[i]) < rhs) {
      for (auto& x : normal) x = -x;
      rhs = -rhs;
    }
    out.emplace_back(normal, rhs);
  }
  return out;
}

std::vector<RatVector> simplex_points(const Triangulation& t, const std::vector<std::size_t>& s) {
  std::vector<RatVector> v;
  for (auto i : s) v.push_back(to_rational(t.vertices[i]));
  return v;
}

bool full_dimensional(const std::vector<RatVector>& v) {
  const std::size_t n = v.empty() ? 0 : v.front().size();
  if (v.size() != n + 1) return false;
  std::vector<RatVector> diffs;
  for (std::size_t j = 1; j < v.size(); ++j) {
    RatVector d(n);
    for (std::size_t c = 0; c < n; ++c) d[c] = v[j][c] - v[0][c];
    diffs.push_back(d);
  }
  return rank(RatMatrix::from_rows(diffs, n)) == n;
}

// Largest s <= 1 with every row(x) - rhs >= s; positive means an open set.
std::optional<RatVector> interior_witness(std::size_t n, const std::vector<std::pair<RatVector, Rational>>& ineqs) {
  LinearSystem sys(n + 1);
  for (const auto& [row, rhs] : ineqs) {
    RatVector r = row;
    r.push_back(-1);
    sys.add_ge(r, rhs);
  }
  RatVector cap(n + 1);
  cap[n] = -1;
  sys.add_ge(cap, -1);
  RatVector cost(n + 1);
  cost[n] = -1;
  const auto best = minimize(sys, cost);
  if (!best || (*best)[n] <= 0) return std::nullopt;
  return RatVector(best->begin(), best->begin() + static_cast<std::ptrdiff_t>(n));
}

std::map<std::vector<std::size_t>, std::vector<std::size_t>> facet_owners(const Triangulation& t) {
  std::map<std::vector<std::size_t>, std::vector<std::size_t>> owners;
  for (std::size_t k = 0; k < t.simplices.size(); ++k) {
    std::vector<std::size_t> s = t.simplices[k];
    if (s.size() < 2) continue;
    std::sort(s.begin(), s.end());
    for (std::size_t drop = 0; drop < s.size(); ++drop) {
      std::vector<std::size_t> f;
      for (std::size_t j = 0; j < s.size(); ++j)
        if (j != drop) f.push_back(s[j]);
      owners[f].push_back(k);
    }
  }
  return owners;
}

}  // namespace

TriangulationReport validate_triangulation(const Triangulation& t) {
  TriangulationReport rep;
  const std::size_t n = t.rank();
  if (t.vertices.empty()) {
    rep.failures.push_back("no vertices");
    return rep;
  }
  for (const auto& v : t.vertices)
    if (v.size() != n) {
      rep.failures.push_back("vertex dimension mismatch");
      return rep;
    }
  if (std::set<IntVector>(t.vertices.begin(), t.vertices.end()).size() != t.vertices.size())
    rep.failures.push_back("repeated vertex");
  if (t.simplices.empty()) rep.failures.push_back("no simplices");
  const LatticePolytope delta = hull_of(t);
  if (delta.ambient != n || !delta.full_dimensional()) {
    rep.failures.push_back("polytope is not full-dimensional in the vertex lattice");
    return rep;
  }
  VRep dv;
  dv.ambient = n;
  dv.vertices = delta.vertices;
  for (std::size_t i = 0; i < t.vertices.size(); ++i)
    if (!contains_point(dv, to_rational(t.vertices[i]))) rep.failures.push_back("vertex " + std::to_string(i) + " lies outside the polytope");
  for (const auto& corner : delta.vertices)
    if (std::none_of(t.vertices.begin(), t.vertices.end(), [&](const IntVector& v) { return to_rational(v) == corner; }))
      rep.failures.push_back("polytope vertex is not a vertex of the triangulation");

  std::vector<std::vector<std::pair<RatVector, Rational>>> hreps;
  for (std::size_t k = 0; k < t.simplices.size(); ++k) {
    const auto& s = t.simplices[k];
    if (std::any_of(s.begin(), s.end(), [&](std::size_t i) { return i >= t.vertices.size(); })) {
      rep.failures.push_back("simplex " + std::to_string(k) + " has a bad vertex index");
      return rep;
    }
    const auto pts = simplex_points(t, s);
    if (!full_dimensional(pts)) {
      rep.failures.push_back("degenerate simplex " + std::to_string(k));
      return rep;
    }
    hreps.push_back(simplex_facets(pts));
  }
  for (std::size_t a = 0; a < hreps.size(); ++a)
    for (std::size_t b = a + 1; b < hreps.size(); ++b) {
      auto both = hreps[a];
      both.insert(both.end(), hreps[b].begin(), hreps[b].end());
      if (interior_witness(n, both)) rep.failures.push_back("simplices " + std::to_string(a) + " and " + std::to_string(b) + " overlap");
    }
  const auto facets = polytope_facets(delta);
  for (const auto& [f, owners] : facet_owners(t)) {
    if (owners.size() == 2) continue;
    if (owners.size() > 2) {
      rep.failures.push_back("facet " + set_text(f) + " is shared by more than two simplices");
      continue;
    }
    const bool on_boundary = std::any_of(facets.begin(), facets.end(), [&](const Facet& q) {
      return std::all_of(f.begin(), f.end(), [&](std::size_t i) { return Rational(dot(q.normal, t.vertices[i])) == q.rhs; });
    });
    if (!on_boundary) rep.failures.push_back("facet " + set_text(f) + " is a hole in the cover");
  }
  return rep;
}

TropicalPolynomial TropicalPolynomial::from(const Triangulation& t, const PLFunction& mu) {
  if (mu.values.size() != t.vertices.size()) throw std::invalid_argument("TropicalPolynomial: one value of mu per vertex required");
  TropicalPolynomial p;
  p.exponents = t.vertices;
  for (const auto& v : mu.values) p.weights.push_back(-v);
  return p;
}

TropEval trop_eval(const TropicalPolynomial& phi, const RatVector& m) {
  if (phi.exponents.empty()) throw std::invalid_argument("trop_eval: empty polynomial");
  TropEval out;
  for (std::size_t k = 0; k < phi.exponents.size(); ++k) {
    if (phi.exponents[k].size() != m.size()) throw std::invalid_argument("trop_eval: dimension mismatch");
    const Rational v = dot(to_rational(phi.exponents[k]), m) + phi.weights[k];
    if (out.argmax.empty() || v > out.value) {
      out.value = v;
      out.argmax = {k};
    } else if (v == out.value) {
      out.argmax.push_back(k);
    }
  }
  return out;
}

AdaptedReport adapted_check(const Triangulation& t, const PLFunction& mu) {
  const std::size_t n = t.rank();
  if (mu.values.size() != t.vertices.size()) throw std::invalid_argument("adapted_check: one value of mu per vertex required");
  for (std::size_t k = 0; k < t.simplices.size(); ++k)
    if (!full_dimensional(simplex_points(t, t.simplices[k]))) throw DegenerateSimplex("adapted_check: degenerate simplex " + std::to_string(k));
  const auto tr = validate_triangulation(t);
  if (!tr.valid()) throw std::invalid_argument("adapted_check: invalid triangulation: " + tr.failures.front());
  AdaptedReport rep;
  for (const auto& [wall, owners] : facet_owners(t)) {
    if (owners.size() != 2) continue;
    for (int side = 0; side < 2; ++side) {
      const auto& s1 = t.simplices[owners[side]];
      const auto& s2 = t.simplices[owners[1 - side]];
      // Affine extension a.x + b of mu from s1.
      RatMatrix a(n + 1, n + 1);
      RatVector rhs(n + 1);
      for (std::size_t r = 0; r <= n; ++r) {
        for (std::size_t c = 0; c < n; ++c) a(r, c) = t.vertices[s1[r]][c];
        a(r, n) = 1;
        rhs[r] = mu.values[s1[r]];
      }
      const RatVector coef = *solve(a, rhs);
      const std::size_t w = *std::find_if(s2.begin(), s2.end(), [&](std::size_t i) { return std::find(wall.begin(), wall.end(), i) == wall.end(); });
      Rational ext = coef[n];
      for (std::size_t c = 0; c < n; ++c) ext += coef[c] * t.vertices[w][c];
      if (!(mu.values[w] > ext)) {
        rep.failures.push_back("wall " + set_text(wall) + " between simplices " + std::to_string(owners[0]) + " and " +
                               std::to_string(owners[1]) + (mu.values[w] == ext ? ": no corner" : ": not convex"));
        break;
      }
    }
  }
  return rep;
}

bool star_shaped_check(const Triangulation& t) {
  const auto o = t.origin();
  if (!o) throw std::invalid_argument("star_shaped_check: the origin is not a vertex");
  return std::all_of(t.simplices.begin(), t.simplices.end(),
                     [&](const std::vector<std::size_t>& s) { return std::find(s.begin(), s.end(), *o) != s.end(); });
}

Poset TropicalComplex::face_poset() const {
  Poset p(cells.size());
  for (std::size_t i = 0; i < cells.size(); ++i) p.leq[i][i] = true;
  for (const auto& [i, j] : incidence) p.leq[i][j] = true;
  return p;
}

std::optional<std::size_t> TropicalComplex::find(const std::vector<std::size_t>& label) const {
  std::vector<std::size_t> key = label;
  std::sort(key.begin(), key.end());
  for (std::size_t i = 0; i < cells.size(); ++i)
    if (cells[i].label == key) return i;
  return std::nullopt;
}

std::vector<std::size_t> TropicalComplex::cells_containing(const RatVector& m) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < cells.size(); ++i)
    if (cells[i].h.contains(m)) out.push_back(i);
  return out;
}

TropicalComplex dual_complex(const Triangulation& t, const PLFunction& mu) {
  const AdaptedReport ar = adapted_check(t, mu);
  if (!ar.adapted()) throw AdaptednessFailure("dual_complex: " + ar.failures.front(), ar);
  const std::size_t n = t.rank();
  const TropicalPolynomial phi = TropicalPolynomial::from(t, mu);
  std::set<std::vector<std::size_t>> labels;
  for (const auto& s0 : t.simplices) {
    std::vector<std::size_t> s = s0;
    std::sort(s.begin(), s.end());
    for (std::size_t mask = 1; mask < (std::size_t{1} << s.size()); ++mask) {
      std::vector<std::size_t> a;
      for (std::size_t j = 0; j < s.size(); ++j)
        if (mask >> j & 1) a.push_back(s[j]);
      if (a.size() >= 2) labels.insert(a);
    }
  }
  TropicalComplex out;
  out.ambient = n;
  for (const auto& a : labels) {
    Polyhedron h(n);
    const RatVector a0 = to_rational(t.vertices[a[0]]);
    for (std::size_t k = 0; k < t.vertices.size(); ++k) {
      if (k == a[0]) continue;
      RatVector row(n);
      for (std::size_t c = 0; c < n; ++c) row[c] = a0[c] - t.vertices[k][c];
      const Rational rhs = mu.values[a[0]] - mu.values[k];
      if (std::binary_search(a.begin(), a.end(), k))
        h.add_eq(row, rhs);
      else
        h.add_ge(row, rhs);
    }
    VRep shape = enumerate(h);
    if (shape.empty()) continue;
    if (trop_eval(phi, shape.relative_interior_point()).argmax != a) continue;
    TropicalCell cell;
    cell.label = a;
    cell.dim = static_cast<std::size_t>(shape.dimension());
    cell.h = std::move(h);
    cell.shape = std::move(shape);
    out.cells.push_back(std::move(cell));
  }
  for (std::size_t i = 0; i < out.cells.size(); ++i)
    for (std::size_t j = 0; j < out.cells.size(); ++j)
      if (i != j && contained_in(out.cells[i].shape, out.cells[j].h)) out.incidence.emplace_back(i, j);
  return out;
}

std::vector<ComplementRegion> complement_components(const Triangulation& t, const PLFunction& mu) {
  const AdaptedReport ar = adapted_check(t, mu);
  if (!ar.adapted()) throw AdaptednessFailure("complement_components: " + ar.failures.front(), ar);
  const std::size_t n = t.rank();
  std::vector<ComplementRegion> out;
  for (std::size_t k = 0; k < t.vertices.size(); ++k) {
    std::vector<std::pair<RatVector, Rational>> ineqs;
    for (std::size_t c = 0; c < t.vertices.size(); ++c) {
      if (c == k) continue;
      RatVector row(n);
      for (std::size_t i = 0; i < n; ++i) row[i] = t.vertices[k][i] - t.vertices[c][i];
      ineqs.emplace_back(row, mu.values[k] - mu.values[c]);
    }
    if (auto w = interior_witness(n, ineqs)) out.push_back({k, *w});
  }
  return out;
}

Triangulation star_triangulation(const Fan& fan) {
  Triangulation t;
  t.vertices.push_back(IntVector(fan.rank()));
  for (const auto& r : fan.rays()) t.vertices.push_back(r);
  LatticePolytope q;
  q.ambient = fan.rank();
  for (const auto& r : fan.rays()) q.vertices.push_back(to_rational(r));
  t.delta_vee = q;
  for (auto c : fan.maximal_cones()) {
    std::vector<std::size_t> s{0};
    for (auto r : fan.cones()[c]) s.push_back(r + 1);
    t.simplices.push_back(s);
  }
  return t;
}

PsiEmbeddingReport psi_embedding_check(const Fan& fan, const Triangulation& t, const PLFunction& mu,
                                       const std::optional<std::vector<std::size_t>>& assignment) {
  if (!is_complete(fan)) throw std::invalid_argument("psi_embedding_check: fan is not complete");
  for (std::size_t c = 0; c < fan.size(); ++c)
    if (fan.cones()[c].size() != fan.cone_dim(c)) throw std::invalid_argument("psi_embedding_check: fan is not simplicial");
  if (t.rank() != fan.rank()) throw std::invalid_argument("psi_embedding_check: rank mismatch");
  if (!star_shaped_check(t)) throw std::invalid_argument("psi_embedding_check: triangulation is not star-shaped");
  const std::size_t o = *t.origin();
  std::map<IntVector, std::size_t> vertex_of;
  for (std::size_t i = 0; i < t.vertices.size(); ++i)
    if (i != o) vertex_of[t.vertices[i]] = i;
  if (vertex_of.size() != fan.rays().size() ||
      std::any_of(fan.rays().begin(), fan.rays().end(), [&](const IntVector& r) { return !vertex_of.count(r); }))
    throw std::invalid_argument("psi_embedding_check: rays of the fan differ from the nonzero vertices of the triangulation");

  const TropicalComplex pi = dual_complex(t, mu);
  const FanifoldData phi = sphere_fanifold(fan);
  std::vector<std::size_t> kept;
  for (std::size_t c = 0; c < fan.size(); ++c)
    if (fan.cone_dim(c) > 0) kept.push_back(c);

  PsiEmbeddingReport rep;
  std::vector<std::optional<std::size_t>> position(pi.cells.size());
  for (std::size_t i = 0; i < pi.cells.size(); ++i) {
    const auto& l = pi.cells[i].label;
    if (std::binary_search(l.begin(), l.end(), o)) {
      position[i] = rep.boundary_cells.size();
      rep.boundary_cells.push_back(i);
    }
  }
  if (rep.boundary_cells.size() != phi.strata.size())
    rep.mismatches.push_back("boundary has " + std::to_string(rep.boundary_cells.size()) + " cells but the fanifold has " +
                             std::to_string(phi.strata.size()) + " strata");

  std::vector<std::vector<std::size_t>> expected(phi.strata.size());
  for (std::size_t s = 0; s < phi.strata.size(); ++s) {
    expected[s].push_back(o);
    for (auto r : fan.cones()[kept[s]]) expected[s].push_back(vertex_of[fan.rays()[r]]);
    std::sort(expected[s].begin(), expected[s].end());
  }
  if (assignment) {
    if (assignment->size() != phi.strata.size()) throw std::invalid_argument("psi_embedding_check: assignment has the wrong length");
    rep.map = *assignment;
  } else {
    for (std::size_t s = 0; s < phi.strata.size(); ++s) {
      const auto c = pi.find(expected[s]);
      if (!c) {
        rep.mismatches.push_back("no cell labelled " + set_text(expected[s]) + " for stratum " + phi.strata[s].id);
        rep.map.push_back(pi.cells.size());
      } else {
        rep.map.push_back(*c);
      }
    }
  }
  std::vector<std::size_t> local;
  bool mapped = true;
  for (std::size_t s = 0; s < rep.map.size(); ++s) {
    const auto c = rep.map[s];
    if (c >= pi.cells.size() || !position[c]) {
      rep.mismatches.push_back("stratum " + phi.strata[s].id + " is not sent to a boundary cell");
      mapped = false;
      continue;
    }
    local.push_back(*position[c]);
    if (pi.cells[c].label != expected[s])
      rep.mismatches.push_back("stratum " + phi.strata[s].id + " sent to cell " + set_text(pi.cells[c].label) + ", expected " + set_text(expected[s]));
    if (pi.cells[c].dim + phi.strata[s].dim + 1 != fan.rank())
      rep.mismatches.push_back("stratum " + phi.strata[s].id + ": dimension " + std::to_string(phi.strata[s].dim) + " against cell dimension " +
                               std::to_string(pi.cells[c].dim));
  }
  if (mapped && rep.boundary_cells.size() == phi.strata.size()) {
    Poset b(rep.boundary_cells.size());
    const Poset full = pi.face_poset();
    for (std::size_t i = 0; i < rep.boundary_cells.size(); ++i)
      for (std::size_t j = 0; j < rep.boundary_cells.size(); ++j) b.leq[i][j] = full.leq[rep.boundary_cells[i]][rep.boundary_cells[j]];
    if (!is_order_isomorphism(phi.stratum_poset(), b.opposite(), local)) rep.mismatches.push_back("map does not reverse the closure order");
  }
  return rep;
}

}  // namespace fanikit
