#include "fanikit/dual_space.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <set>

namespace fanikit {

namespace {

Integer floor_of(const Rational& x) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return q;
}

Integer ceil_of(const Rational& x) {
  Integer q;
  mpz_cdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return q;
}

Rational power(const Rational& base, const Integer& exp) {
  Rational r = 1;
  const bool neg = exp < 0;
  Integer e = neg ? Integer(-exp) : exp;
  Rational b = base;
  while (e > 0) {
    if (e % 2 == 1) r *= b;
    b *= b;
    e /= 2;
  }
  return neg ? Rational(1 / r) : r;
}

RatVector lexmin(const std::vector<RatVector>& pts) {
  return *std::min_element(pts.begin(), pts.end(), [](const RatVector& a, const RatVector& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
  });
}

}  // namespace

std::vector<IntVector> lattice_points(const LatticePolytope& q) {
  if (q.vertices.empty()) return {};
  const std::size_t n = q.ambient;
  IntVector lo(n), hi(n);
  for (std::size_t c = 0; c < n; ++c) {
    Rational mn = q.vertices[0][c], mx = q.vertices[0][c];
    for (const auto& v : q.vertices) {
      mn = std::min(mn, v[c]);
      mx = std::max(mx, v[c]);
    }
    lo[c] = ceil_of(mn);
    hi[c] = floor_of(mx);
  }
  VRep hull;
  hull.ambient = n;
  hull.vertices = q.vertices;
  std::vector<IntVector> out;
  IntVector x = lo;
  for (std::size_t c = 0; c < n; ++c)
    if (lo[c] > hi[c]) return out;
  while (true) {
    if (contains_point(hull, to_rational(x))) out.push_back(x);
    std::size_t c = n;
    while (c > 0) {
      --c;
      if (x[c] < hi[c]) {
        ++x[c];
        for (std::size_t k = c + 1; k < n; ++k) x[k] = lo[k];
        break;
      }
      if (c == 0) return out;
    }
    if (n == 0) return out;
  }
}

MomentContext::MomentContext(const LatticePolytope& q, const Integer& l) : polytope(q.scaled(Rational(l))), scale(l) {
  if (!polytope.full_dimensional()) throw std::invalid_argument("MomentContext: polytope is not full-dimensional");
  points = lattice_points(polytope);
  if (points.empty()) throw std::invalid_argument("MomentContext: polytope has no lattice points");
}

RatVector algebraic_moment(const MomentContext& ctx, const RatVector& x) {
  const std::size_t n = ctx.polytope.ambient;
  if (x.size() != n) throw std::invalid_argument("algebraic_moment: dimension mismatch");
  for (const auto& v : x)
    if (v <= 0) throw std::invalid_argument("algebraic_moment: exact evaluation needs positive coordinates");
  Rational total = 0;
  RatVector acc(n);
  for (const auto& m : ctx.points) {
    Rational w = 1;
    for (std::size_t i = 0; i < n; ++i) w *= power(x[i], m[i]);
    total += w;
    for (std::size_t i = 0; i < n; ++i) acc[i] += w * m[i];
  }
  for (auto& a : acc) a /= total;
  return acc;
}

namespace {

std::vector<double> weighted_average(const std::vector<IntVector>& pts, const std::vector<std::complex<double>>& x) {
  const std::size_t n = x.size();
  std::vector<double> logs(pts.size());
  double top = -INFINITY;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    double s = 0;
    for (std::size_t i = 0; i < n; ++i) s += pts[k][i].get_d() * std::log(std::abs(x[i]));
    logs[k] = s;
    top = std::max(top, s);
  }
  double total = 0;
  std::vector<double> acc(n, 0.0);
  for (std::size_t k = 0; k < pts.size(); ++k) {
    const double w = std::exp(logs[k] - top);
    total += w;
    for (std::size_t i = 0; i < n; ++i) acc[i] += w * pts[k][i].get_d();
  }
  for (auto& a : acc) a /= total;
  return acc;
}

}  // namespace

std::vector<double> algebraic_moment(const MomentContext& ctx, const std::vector<std::complex<double>>& x) {
  if (x.size() != ctx.polytope.ambient) throw std::invalid_argument("algebraic_moment: dimension mismatch");
  for (const auto& z : x)
    if (z == 0.0) throw std::invalid_argument("algebraic_moment: zero coordinate");
  return weighted_average(ctx.points, x);
}

std::vector<double> mom_Q(const MomentContext& ctx, const OrbitPoint& p) {
  if (p.cone.empty()) return algebraic_moment(ctx, p.x);
  const std::size_t n = ctx.polytope.ambient;
  if (p.x.size() != n) throw std::invalid_argument("mom_Q: dimension mismatch");
  for (const auto& z : p.x)
    if (z == 0.0) throw std::invalid_argument("mom_Q: zero coordinate");
  IntVector lambda(n);
  for (const auto& r : p.cone) {
    if (r.size() != n) throw std::invalid_argument("mom_Q: invalid stratum data");
    for (std::size_t i = 0; i < n; ++i) lambda[i] += r[i];
  }
  std::set<IntVector> wanted;
  for (const auto& r : p.cone) wanted.insert(primitive(r));
  const Fan nf = normal_fan(ctx.polytope);
  bool known = false;
  for (std::size_t c = 0; c < nf.size() && !known; ++c) {
    const auto rays = nf.cone(c).rays;
    known = std::set<IntVector>(rays.begin(), rays.end()) == wanted;
  }
  if (!known) throw std::invalid_argument("mom_Q: invalid stratum data (cone is not in the normal fan)");
  // The orbit lies over the face of Q on which every ray of the cone is minimised.
  Integer best = dot(lambda, ctx.points[0]);
  for (const auto& m : ctx.points) best = std::min(best, dot(lambda, m));
  std::vector<IntVector> face;
  for (const auto& m : ctx.points)
    if (dot(lambda, m) == best) face.push_back(m);
  for (const auto& r : p.cone) {
    Integer rmin = dot(r, ctx.points[0]);
    for (const auto& m : ctx.points) rmin = std::min(rmin, dot(r, m));
    for (const auto& m : face)
      if (dot(r, m) != rmin) throw std::invalid_argument("mom_Q: invalid stratum data (cone is not in the normal fan)");
  }
  return weighted_average(face, p.x);
}

std::string VeryAmpleVerdict::text() const {
  return proven ? "true" : "assumed(l=" + scale.get_str() + ")";
}

VeryAmpleVerdict very_ample_check(const LatticePolytope& q, const Integer& l) {
  VeryAmpleVerdict v;
  v.scale = l;
  v.proven = q.ambient <= 2;
  return v;
}

bool ConditionViReport::has(const std::string& kind) const {
  return std::any_of(issues.begin(), issues.end(), [&](const ConditionViIssue& i) { return i.kind == kind; });
}

namespace {

struct Gluing {
  ConditionViReport report;
  std::vector<std::size_t> vertices;
  std::vector<std::optional<RatVector>> translation;
  std::vector<std::map<IntVector, Rational>> facet_rhs;  // per stratum, by ray
};

Integer scale_of(const DualSpaceData& data, std::size_t p) {
  return data.scales.empty() ? Integer(1) : data.scales.at(p);
}

// The face of Q-hat_P dual to sigma^P_S, placed by t_P - phi_P^T.
VRep chart_cell(const FanifoldData& phi, const Gluing& g, std::size_t p, std::size_t s, const RatVector& t) {
  const Stratum& sp = phi.strata[p];
  const std::size_t r = sp.lattice_rank();
  RaySet sigma;
  if (s != p) sigma = phi.arrows[*phi.find_arrow(p, s)].cone;
  Polyhedron h(r);
  for (std::size_t k = 0; k < sp.fan.rays().size(); ++k) {
    const IntVector& ray = sp.fan.rays()[k];
    const Rational rhs = g.facet_rhs[p].at(ray);
    if (std::binary_search(sigma.begin(), sigma.end(), k))
      h.add_eq(to_rational(ray), rhs);
    else
      h.add_ge(to_rational(ray), rhs);
  }
  const VRep local = enumerate(h);
  const RatMatrix place = -to_rational(sp.trivialization->transposed());
  return affine_image(local, place, t);
}

Gluing glue(const FanifoldData& phi, const DualSpaceData& data) {
  Gluing g;
  auto issue = [&](const std::string& kind, const std::string& detail) { g.report.issues.push_back({kind, detail}); };
  const std::size_t ns = phi.strata.size();
  g.translation.assign(ns, std::nullopt);
  g.facet_rhs.resize(ns);
  for (std::size_t i = 0; i < ns; ++i)
    if (phi.strata[i].dim == 0) g.vertices.push_back(i);

  bool fatal = false;
  for (std::size_t i = 0; i < ns; ++i) {
    const auto cl = phi.closure(i);
    if (std::none_of(cl.begin(), cl.end(), [&](std::size_t t) { return phi.strata[t].dim == 0; })) {
      issue("no vertex", phi.strata[i].id + " has no 0-stratum in its closure");
      fatal = true;
    }
    const auto& tr = phi.strata[i].trivialization;
    if (!tr || tr->rows() != phi.strata[i].lattice_rank() || tr->cols() != phi.ambient_rank) {
      issue("trivialization", phi.strata[i].id + " has no usable trivialisation");
      fatal = true;
    }
  }
  if (fatal) return g;

  // (a) subfan inclusion and (b) very ampleness.
  for (auto p : g.vertices) {
    const Stratum& sp = phi.strata[p];
    if (p >= data.polytopes.size() || !data.polytopes[p]) {
      issue("polytope", sp.id + " has no polytope");
      fatal = true;
      continue;
    }
    const LatticePolytope& q = *data.polytopes[p];
    if (q.ambient != sp.lattice_rank() || !q.full_dimensional() || !q.is_lattice()) {
      issue("polytope", sp.id + ": polytope must be a full-dimensional lattice polytope in the dual of M_P");
      fatal = true;
      continue;
    }
    const Integer l = scale_of(data, p);
    if (l <= 0) {
      issue("polytope", sp.id + ": scale must be positive");
      fatal = true;
      continue;
    }
    g.report.very_ample.push_back(very_ample_check(q, l));
    const Fan nf = normal_fan(q);
    std::set<std::set<IntVector>> nf_cones;
    for (std::size_t c = 0; c < nf.size(); ++c) {
      const auto rays = nf.cone(c).rays;
      nf_cones.insert({rays.begin(), rays.end()});
    }
    for (std::size_t c = 0; c < sp.fan.size(); ++c) {
      const auto rays = sp.fan.cone(c).rays;
      if (!nf_cones.count({rays.begin(), rays.end()})) {
        issue("subfan", sp.id + ": cone " + std::to_string(c) + " is not a cone of the normal fan of Q_P");
        fatal = true;
      }
    }
    for (const auto& f : polytope_facets(q)) g.facet_rhs[p][f.normal] = f.rhs * Rational(l);
  }
  if (fatal) return g;

  // (c) identifications and (d) the cocycle condition.
  std::map<std::tuple<std::size_t, std::size_t, std::size_t>, IntMatrix> ids;
  for (const auto& id : data.identifications) ids[{id.stratum, id.from, id.to}] = id.matrix;
  auto ident = [&](std::size_t s, std::size_t a, std::size_t b) {
    const auto it = ids.find({s, a, b});
    return it == ids.end() ? IntMatrix::identity(phi.strata[s].lattice_rank()) : it->second;
  };
  for (std::size_t s = 0; s < ns; ++s) {
    std::vector<std::size_t> ps;
    for (auto t : phi.closure(s))
      if (phi.strata[t].dim == 0 && t != s) ps.push_back(t);
    const std::size_t r = phi.strata[s].lattice_rank();
    for (auto a : ps)
      for (auto b : ps) {
        if (a == b) continue;
        const IntMatrix m = ident(s, a, b);
        const std::string where = phi.strata[s].id + " (" + phi.strata[a].id + " -> " + phi.strata[b].id + ")";
        if (m.rows() != r || m.cols() != r || !is_unimodular(m)) {
          issue("identification", where + ": not a lattice automorphism");
          continue;
        }
        const IntMatrix lhs = m * phi.arrows[*phi.find_arrow(a, s)].quotient * *phi.strata[a].trivialization;
        const IntMatrix rhs = phi.arrows[*phi.find_arrow(b, s)].quotient * *phi.strata[b].trivialization;
        if (lhs != rhs) issue("identification", where + ": does not commute with the dual cone inclusions");
        for (auto c : ps) {
          if (c == a || c == b) continue;
          if (ident(s, b, c) * m != ident(s, a, c)) issue("cocycle", where + " then -> " + phi.strata[c].id);
        }
      }
  }

  // Place the charts.
  auto shared = [&](std::size_t a, std::size_t b) {
    std::optional<std::size_t> best;
    for (std::size_t s = 0; s < ns; ++s) {
      const auto cl = phi.closure(s);
      if (!std::binary_search(cl.begin(), cl.end(), a) || !std::binary_search(cl.begin(), cl.end(), b)) continue;
      if (!best || phi.strata[s].lattice_rank() < phi.strata[*best].lattice_rank()) best = s;
    }
    return best;
  };
  const RatVector origin(phi.ambient_rank);
  std::optional<std::pair<std::size_t, RatVector>> seed;
  std::optional<std::size_t> anchor_stratum;
  RatVector anchor_pos;
  if (data.anchor) {
    anchor_stratum = data.anchor->stratum;
    anchor_pos = data.anchor->position;
  } else {
    for (std::size_t s = 0; s < ns && !anchor_stratum; ++s) {
      const Stratum& st = phi.strata[s];
      if (st.lattice_rank() != 0 || st.geometry.empty()) continue;
      anchor_stratum = s;
      anchor_pos = RatVector(phi.ambient_rank);
      for (const auto& v : st.geometry)
        for (std::size_t c = 0; c < anchor_pos.size(); ++c) anchor_pos[c] += v[c];
      for (auto& x : anchor_pos) x /= static_cast<long>(st.geometry.size());
    }
  }
  if (anchor_stratum) {
    if (*anchor_stratum >= ns || anchor_pos.size() != phi.ambient_rank) {
      issue("gluing", "anchor is malformed");
      return g;
    }
    const auto cl = phi.closure(*anchor_stratum);
    const auto p = *std::find_if(cl.begin(), cl.end(), [&](std::size_t t) { return phi.strata[t].dim == 0; });
    const VRep c = chart_cell(phi, g, p, *anchor_stratum, origin);
    if (c.vertices.empty()) {
      issue("gluing", "anchor cell has no vertex");
      return g;
    }
    const RatVector lm = lexmin(c.vertices);
    RatVector t(phi.ambient_rank);
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = anchor_pos[i] - lm[i];
    seed = std::make_pair(p, t);
  }
  std::deque<std::size_t> queue;
  auto place = [&](std::size_t p, RatVector t) {
    g.translation[p] = std::move(t);
    queue.push_back(p);
  };
  if (seed) place(seed->first, seed->second);
  for (auto start : g.vertices) {
    if (!g.translation[start]) place(start, origin);
    while (!queue.empty()) {
      const auto p = queue.front();
      queue.pop_front();
      for (auto q : g.vertices) {
        if (g.translation[q]) continue;
        const auto s = shared(p, q);
        if (!s) continue;
        const VRep cp = chart_cell(phi, g, p, *s, *g.translation[p]);
        const VRep cq = chart_cell(phi, g, q, *s, origin);
        if (cp.vertices.empty() || cq.vertices.empty()) {
          issue("gluing", phi.strata[*s].id + ": shared cell has no vertex to align on");
          continue;
        }
        const RatVector a = lexmin(cp.vertices), b = lexmin(cq.vertices);
        RatVector t(phi.ambient_rank);
        for (std::size_t i = 0; i < t.size(); ++i) t[i] = a[i] - b[i];
        place(q, t);
      }
    }
  }

  for (std::size_t s = 0; s < ns; ++s) {
    std::optional<VRep> first;
    std::size_t first_p = 0;
    for (auto p : phi.closure(s)) {
      if (phi.strata[p].dim != 0 || !g.translation[p]) continue;
      const VRep c = chart_cell(phi, g, p, s, *g.translation[p]);
      if (!first) {
        first = c;
        first_p = p;
      } else if (!same_polyhedron(*first, c)) {
        issue("gluing", phi.strata[s].id + ": dual cells from " + phi.strata[first_p].id + " and " + phi.strata[p].id + " disagree");
      }
    }
  }
  return g;
}

}  // namespace

ConditionViReport condition_vi_check(const FanifoldData& phi, const DualSpaceData& data) { return glue(phi, data).report; }

DualComplex dual_space(const FanifoldData& phi, const DualSpaceData& data) {
  const Gluing g = glue(phi, data);
  if (!g.report.pass()) {
    std::string msg = "condition (vi) fails:";
    for (const auto& i : g.report.issues) msg += " [" + i.kind + "] " + i.detail + ";";
    throw ConditionViFailure(msg, g.report);
  }
  DualComplex psi;
  psi.ambient = phi.ambient_rank;
  psi.dim = phi.dim;
  psi.translations = g.translation;
  for (std::size_t s = 0; s < phi.strata.size(); ++s) {
    const auto cl = phi.closure(s);
    const auto p = *std::find_if(cl.begin(), cl.end(), [&](std::size_t t) { return phi.strata[t].dim == 0; });
    DualCell c;
    c.stratum = s;
    c.label = phi.strata[s].id + "^perp";
    c.shape = chart_cell(phi, g, p, s, *g.translation[p]);
    c.dim = static_cast<std::size_t>(std::max(0, c.shape.dimension()));
    psi.cells.push_back(std::move(c));
  }
  for (std::size_t i = 0; i < psi.cells.size(); ++i)
    for (std::size_t j = 0; j < psi.cells.size(); ++j)
      if (i != j && contained_in(psi.cells[i].shape, psi.cells[j].shape)) psi.incidence.emplace_back(i, j);
  return psi;
}

std::vector<std::vector<std::size_t>> dual_filtration(const DualComplex& psi) {
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t k = 0; k <= psi.dim; ++k) {
    std::vector<std::size_t> stage;
    for (std::size_t c = 0; c < psi.cells.size(); ++c)
      if (psi.cells[c].dim + k >= psi.dim) stage.push_back(c);
    out.push_back(std::move(stage));
  }
  return out;
}

}  // namespace fanikit
