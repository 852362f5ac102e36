#include "fanikit/fanifold.hpp"

#include <algorithm>
#include <set>

namespace fanikit {

namespace {

using RayKey = std::set<IntVector>;
using FanKey = std::set<RayKey>;

// Drops generators lying in the cone of the others.
RayKey extreme(std::size_t n, const RayKey& img) {
  RayKey out;
  for (const auto& g : img) {
    Cone others{n, {}};
    for (const auto& h : img)
      if (h != g) others.rays.push_back(h);
    if (!others.contains(to_rational(g))) out.insert(g);
  }
  return out;
}

FanKey fan_key(const Fan& f) {
  FanKey k;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const auto rays = f.cone(i).rays;
    k.insert(RayKey(rays.begin(), rays.end()));
  }
  return k;
}

// Cones of `f` containing sigma as a face, pushed through q.
FanKey image_key(const Fan& f, std::size_t sigma, const IntMatrix& q) {
  FanKey k;
  for (std::size_t t = 0; t < f.size(); ++t) {
    if (!f.is_face(sigma, t)) continue;
    RayKey img;
    for (const auto& r : f.cone(t).rays) {
      IntVector p = primitive(q.apply(r));
      if (!is_zero(p)) img.insert(p);
    }
    k.insert(extreme(q.rows(), img));
  }
  return k;
}

RayKey image_rays(const std::vector<IntVector>& rays, const IntMatrix& q) {
  RayKey img;
  for (const auto& r : rays) {
    IntVector p = primitive(q.apply(r));
    if (!is_zero(p)) img.insert(p);
  }
  return extreme(q.rows(), img);
}

std::string arrow_name(const FanifoldData& phi, const ExitArrow& a) {
  return phi.strata[a.src].id + "->" + phi.strata[a.dst].id;
}

std::vector<std::size_t> by_dimension(const FanifoldData& phi) {
  std::vector<std::size_t> order(phi.strata.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return phi.strata[a].dim < phi.strata[b].dim; });
  return order;
}

}  // namespace

std::optional<std::size_t> FanifoldData::find_stratum(const std::string& id) const {
  for (std::size_t i = 0; i < strata.size(); ++i)
    if (strata[i].id == id) return i;
  return std::nullopt;
}

std::optional<std::size_t> FanifoldData::find_arrow(std::size_t src, std::size_t dst) const {
  for (std::size_t i = 0; i < arrows.size(); ++i)
    if (arrows[i].src == src && arrows[i].dst == dst) return i;
  return std::nullopt;
}

std::vector<std::size_t> FanifoldData::closure(std::size_t s) const {
  std::vector<std::size_t> out{s};
  for (const auto& a : arrows)
    if (a.dst == s) out.push_back(a.src);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Poset FanifoldData::stratum_poset() const {
  Poset p(strata.size());
  for (std::size_t i = 0; i < strata.size(); ++i) p.leq[i][i] = true;
  for (const auto& a : arrows) p.leq[a.src][a.dst] = true;
  return p;
}

bool FanifoldReport::has(const std::string& kind) const {
  return std::any_of(issues.begin(), issues.end(), [&](const FanifoldIssue& i) { return i.kind == kind; });
}

FanifoldReport validate_fanifold(const FanifoldData& phi) {
  FanifoldReport rep;
  const std::size_t ns = phi.strata.size();
  std::vector<bool> arrow_ok(phi.arrows.size(), true);

  for (std::size_t ai = 0; ai < phi.arrows.size(); ++ai) {
    const ExitArrow& a = phi.arrows[ai];
    auto fail = [&](const std::string& d) {
      rep.issues.push_back({"arrow", {ai}, d});
      arrow_ok[ai] = false;
    };
    if (a.src >= ns || a.dst >= ns) {
      fail("arrow " + std::to_string(ai) + " references a missing stratum");
      continue;
    }
    const Stratum& s = phi.strata[a.src];
    const Stratum& t = phi.strata[a.dst];
    const std::string name = arrow_name(phi, a);
    if (s.dim >= t.dim) fail(name + ": arrow does not increase dimension");
    const auto sigma = s.fan.find(a.cone);
    if (!sigma) {
      fail(name + ": cone is not in the source fan");
      continue;
    }
    if (a.quotient.rows() != t.lattice_rank() || a.quotient.cols() != s.lattice_rank()) {
      fail(name + ": quotient matrix has the wrong shape");
      continue;
    }
    const auto sigma_rays = s.fan.cone(*sigma).rays;
    if (t.lattice_rank() + s.fan.cone_dim(*sigma) != s.lattice_rank()) fail(name + ": rank M_dst != rank M_src - dim sigma");
    const CokernelInfo coker = cokernel(a.quotient);
    if (coker.free_rank != 0 || !coker.invariant_factors.empty()) fail(name + ": quotient map is not surjective");
    Sublattice ker;
    ker.ambient_rank = s.lattice_rank();
    ker.basis = integer_kernel(a.quotient);
    ker.saturated = true;
    if (!same_lattice(ker, saturate(span(s.lattice_rank(), sigma_rays)))) fail(name + ": kernel is not the saturated span of the cone");
    if (image_key(s.fan, *sigma, a.quotient) != fan_key(t.fan)) fail(name + ": image of the star of the cone is not the target fan");
    if (s.trivialization && t.trivialization) {
      const IntMatrix& fs = *s.trivialization;
      const IntMatrix& ft = *t.trivialization;
      if (fs.rows() != s.lattice_rank() || ft.rows() != t.lattice_rank() || fs.cols() != ft.cols() || a.quotient * fs != ft)
        rep.issues.push_back({"commutativity", {ai}, name + ": quotient map does not commute with the trivialisations"});
    }
  }

  // Composable pairs.
  for (std::size_t ai = 0; ai < phi.arrows.size(); ++ai)
    for (std::size_t bi = 0; bi < phi.arrows.size(); ++bi) {
      const ExitArrow& a = phi.arrows[ai];
      const ExitArrow& b = phi.arrows[bi];
      if (a.dst != b.src || !arrow_ok[ai] || !arrow_ok[bi]) continue;
      const auto ci = phi.find_arrow(a.src, b.dst);
      if (!ci) {
        rep.issues.push_back({"transitivity", {ai, bi}, arrow_name(phi, a) + " and " + arrow_name(phi, b) + " compose but have no composite arrow"});
        continue;
      }
      if (!arrow_ok[*ci]) continue;
      const ExitArrow& c = phi.arrows[*ci];
      if (b.quotient * a.quotient != c.quotient) {
        rep.issues.push_back({"commutativity", {ai, bi, *ci}, arrow_name(phi, b) + " o " + arrow_name(phi, a) + " != " + arrow_name(phi, c)});
        continue;
      }
      const Stratum& s = phi.strata[a.src];
      const Stratum& m = phi.strata[a.dst];
      const auto sa = s.fan.find(a.cone);
      const auto sc = s.fan.find(c.cone);
      const auto sb = m.fan.find(b.cone);
      if (!s.fan.is_face(*sa, *sc)) {
        rep.issues.push_back({"commutativity", {ai, bi, *ci}, arrow_name(phi, a) + ": cone is not a face of the composite's cone"});
        continue;
      }
      const auto rb = m.fan.cone(*sb).rays;
      if (image_rays(s.fan.cone(*sc).rays, a.quotient) != RayKey(rb.begin(), rb.end()))
        rep.issues.push_back({"commutativity", {ai, bi, *ci}, arrow_name(phi, b) + ": cone is not the image of the composite's cone"});
    }

  for (std::size_t i = 0; i < ns; ++i) {
    const Stratum& s = phi.strata[i];
    bool all_in = true;
    for (const auto& f : s.facets) {
      all_in = all_in && f.in;
      if (!f.stratum) continue;
      if (*f.stratum >= ns) {
        rep.issues.push_back({"facet", {}, s.id + ": facet references a missing stratum"});
        continue;
      }
      const Stratum& t = phi.strata[*f.stratum];
      if (t.dim + 1 != s.dim) rep.issues.push_back({"facet", {}, s.id + ": facet " + t.id + " has the wrong dimension"});
      if (!phi.find_arrow(*f.stratum, i)) rep.issues.push_back({"facet", {}, s.id + ": no exit arrow from facet " + t.id});
    }
    if (s.interior != all_in) rep.issues.push_back({"flag", {}, s.id + ": interior flag disagrees with facet data"});
  }
  return rep;
}

std::vector<GluingDiagram> filtration(const FanifoldData& phi) {
  std::vector<GluingDiagram> out;
  for (std::size_t k = 0; k <= phi.dim; ++k) {
    GluingDiagram g;
    g.stage = k;
    for (std::size_t i = 0; i < phi.strata.size(); ++i) {
      const Stratum& s = phi.strata[i];
      if (s.dim > k) continue;
      g.pieces.push_back(i);
      if (s.dim != k) continue;
      g.added.push_back(i);
      GluingInterface gi;
      gi.stratum = i;
      for (const auto& f : s.facets)
        if (f.in && f.stratum) gi.in_facets.push_back(*f.stratum);
      g.interfaces.push_back(gi);
    }
    out.push_back(std::move(g));
  }
  return out;
}

bool is_closed(const FanifoldData& phi) {
  bool closed = true;
  for (const auto& s : phi.strata) {
    bool all_in = true;
    for (const auto& f : s.facets) all_in = all_in && f.in;
    if (all_in != s.interior) throw std::logic_error("is_closed: " + s.id + " has an interior flag that disagrees with its facets");
    closed = closed && s.interior;
  }
  return closed;
}

std::vector<HandleRecord> handle_schedule(const FanifoldData& phi) {
  std::vector<HandleRecord> out;
  for (auto i : by_dimension(phi)) {
    const Stratum& s = phi.strata[i];
    HandleRecord r;
    r.stage = s.dim;
    r.stratum = i;
    r.torus_rank = s.lattice_rank();
    std::set<std::size_t> locus;
    for (const auto& f : s.facets)
      if (f.in && f.stratum)
        for (auto t : phi.closure(*f.stratum)) locus.insert(t);
    std::vector<std::size_t> ordered(locus.begin(), locus.end());
    std::stable_sort(ordered.begin(), ordered.end(), [&](auto a, auto b) { return phi.strata[a].dim < phi.strata[b].dim; });
    for (auto t : ordered) {
      const auto a = phi.find_arrow(t, i);
      if (!a) throw std::logic_error("handle_schedule: missing exit arrow into " + s.id);
      r.gluing_locus.push_back({t, phi.arrows[*a].cone});
    }
    out.push_back(std::move(r));
  }
  return out;
}

namespace {

std::string cone_label(const Fan& fan, std::size_t c) {
  std::string s = "{";
  for (std::size_t k = 0; k < fan.cones()[c].size(); ++k) s += (k ? "," : "") + std::to_string(fan.cones()[c][k]);
  return s + "}";
}

// Shared construction for sphere and fan fanifolds over the cones `kept`.
FanifoldData cone_fanifold(const Fan& fan, const std::vector<std::size_t>& kept, bool sphere) {
  FanifoldData phi;
  phi.ambient_rank = fan.rank();
  phi.dim = sphere ? (fan.rank() == 0 ? 0 : fan.rank() - 1) : fan.rank();
  std::vector<std::optional<std::size_t>> stratum_of(fan.size());
  std::vector<QuotientFan> quotients;
  for (auto c : kept) {
    stratum_of[c] = phi.strata.size();
    quotients.push_back(quotient_fan(fan, c));
    Stratum s;
    s.id = "c" + std::to_string(c);
    s.label = cone_label(fan, c);
    s.dim = fan.cone_dim(c) - (sphere ? 1 : 0);
    s.fan = quotients.back().fan;
    s.trivialization = quotients.back().lattice.projection;
    phi.strata.push_back(std::move(s));
  }
  for (std::size_t i = 0; i < kept.size(); ++i)
    for (std::size_t j = 0; j < kept.size(); ++j) {
      const auto sc = kept[i], tc = kept[j];
      if (sc == tc || !fan.is_face(sc, tc)) continue;
      ExitArrow a;
      a.src = i;
      a.dst = j;
      a.cone = quotients[i].fan.cones()[*quotients[i].cone_map[tc]];
      a.quotient = quotients[j].lattice.projection * quotients[i].lattice.section;
      phi.arrows.push_back(std::move(a));
    }
  for (std::size_t j = 0; j < kept.size(); ++j) {
    const auto tc = kept[j];
    Stratum& s = phi.strata[j];
    if (fan.cone_dim(tc) == 0) continue;
    for (std::size_t f = 0; f < fan.size(); ++f) {
      if (fan.cone_dim(f) + 1 != fan.cone_dim(tc) || !fan.is_face(f, tc)) continue;
      if (sphere && fan.cone_dim(f) == 0) continue;
      if (stratum_of[f])
        s.facets.push_back({*stratum_of[f], true});
      else
        s.facets.push_back({std::nullopt, false});
    }
    if (!sphere) s.facets.push_back({std::nullopt, false});
    s.interior = std::all_of(s.facets.begin(), s.facets.end(), [](const BoundaryFacet& b) { return b.in; });
  }
  return phi;
}

}  // namespace

FanifoldData sphere_fanifold(const Fan& fan, const std::vector<std::size_t>& keep) {
  if (fan.rank() == 0) throw std::invalid_argument("sphere_fanifold: rank-0 fan");
  std::vector<std::size_t> kept;
  if (keep.empty()) {
    for (std::size_t c = 0; c < fan.size(); ++c)
      if (fan.cone_dim(c) > 0) kept.push_back(c);
  } else {
    kept = keep;
    std::sort(kept.begin(), kept.end());
    for (auto c : kept) {
      if (c >= fan.size() || fan.cone_dim(c) == 0) throw std::invalid_argument("sphere_fanifold: kept cones must be nonzero cones of the fan");
      for (std::size_t t = 0; t < fan.size(); ++t)
        if (fan.is_face(c, t) && !std::binary_search(kept.begin(), kept.end(), t))
          throw std::invalid_argument("sphere_fanifold: kept cones are not closed under enlargement");
    }
  }
  return cone_fanifold(fan, kept, true);
}

FanifoldData sphere_fanifold(const StackyFan& fan) { return sphere_fanifold(fan.fan); }

FanifoldData fan_fanifold(const Fan& fan) {
  std::vector<std::size_t> all(fan.size());
  for (std::size_t c = 0; c < fan.size(); ++c) all[c] = c;
  return cone_fanifold(fan, all, false);
}

FanifoldData trivial_fanifold(std::size_t dim) {
  FanifoldData phi;
  phi.dim = dim;
  Stratum s;
  s.id = "M";
  s.label = "M";
  s.dim = dim;
  s.fan = Fan::trivial(0);
  phi.strata.push_back(std::move(s));
  return phi;
}

FanifoldData square_fanifold() {
  FanifoldData phi;
  phi.dim = 2;
  phi.ambient_rank = 2;
  auto vertex = [&](const std::string& id, IntVector r0, IntVector r1, RatVector at) {
    Stratum s;
    s.id = id;
    s.label = id;
    s.dim = 0;
    s.fan = Fan::generated_by(2, {r0, r1}, {{0, 1}});
    s.trivialization = IntMatrix::identity(2);
    s.geometry = {at};
    phi.strata.push_back(std::move(s));
  };
  vertex("P1", {1, 0}, {0, -1}, {0, 1});
  vertex("P2", {1, 0}, {0, 1}, {0, 0});
  vertex("P3", {-1, 0}, {0, 1}, {1, 0});
  vertex("P4", {-1, 0}, {0, -1}, {1, 1});
  struct EdgeSpec {
    const char* id;
    std::size_t a, b;
    IntVector inward;
  };
  const EdgeSpec edges[] = {{"I12", 0, 1, {1, 0}}, {"I23", 1, 2, {0, 1}}, {"I34", 2, 3, {-1, 0}}, {"I14", 0, 3, {0, -1}}};
  for (const auto& e : edges) {
    Stratum s;
    s.id = e.id;
    s.label = e.id;
    s.dim = 1;
    s.fan = Fan::generated_by(1, {{1}}, {{0}});
    s.trivialization = IntMatrix::from_rows({e.inward});
    s.facets = {{e.a, true}, {e.b, true}};
    s.geometry = {phi.strata[e.a].geometry[0], phi.strata[e.b].geometry[0]};
    phi.strata.push_back(std::move(s));
  }
  {
    Stratum f;
    f.id = "F";
    f.label = "F";
    f.dim = 2;
    f.fan = Fan::trivial(0);
    f.trivialization = IntMatrix(0, 2);
    for (std::size_t i = 4; i < 8; ++i) f.facets.push_back({i, true});
    f.geometry = {{0, 1}, {0, 0}, {1, 0}, {1, 1}};
    phi.strata.push_back(std::move(f));
  }
  const std::size_t face = 8;
  for (std::size_t ei = 0; ei < 4; ++ei) {
    const std::size_t e = 4 + ei;
    const IntMatrix& q = *phi.strata[e].trivialization;
    for (auto p : {edges[ei].a, edges[ei].b}) {
      const Fan& fp = phi.strata[p].fan;
      // The ray of Sigma_P running along the edge is the one killed by q.
      RaySet cone;
      for (std::size_t r = 0; r < fp.rays().size(); ++r)
        if (is_zero(q.apply(fp.rays()[r]))) cone.push_back(r);
      phi.arrows.push_back({p, e, cone, q});
    }
    phi.arrows.push_back({e, face, {0}, IntMatrix(0, 1)});
  }
  for (std::size_t p = 0; p < 4; ++p) phi.arrows.push_back({p, face, {0, 1}, IntMatrix(0, 2)});
  return phi;
}

ExitPosetIso exit_poset_iso(const Fan& fan) {
  ExitPosetIso out;
  out.faces = face_poset(fan);
  std::vector<QuotientFan> q;
  for (std::size_t c = 0; c < fan.size(); ++c) q.push_back(quotient_fan(fan, c));
  out.quotients = Poset(fan.size());
  for (std::size_t s = 0; s < fan.size(); ++s)
    for (std::size_t t = 0; t < fan.size(); ++t) {
      const Cone sc = fan.cone(s), tc = fan.cone(t);
      bool below = true;
      for (const auto& r : sc.rays)
        if (!is_zero(q[t].lattice.projection.apply(r)) || !tc.contains(to_rational(r))) below = false;
      if (!below) continue;
      // Sigma/s -> Sigma/t must be the quotient by the image of t.
      const RayKey img = image_rays(tc.rays, q[s].lattice.projection);
      bool found = false;
      for (std::size_t c = 0; c < q[s].fan.size() && !found; ++c) {
        const auto rays = q[s].fan.cone(c).rays;
        found = RayKey(rays.begin(), rays.end()) == img && q[s].fan.cone_dim(c) + fan.cone_dim(s) == fan.cone_dim(t);
      }
      out.quotients.leq[s][t] = found;
    }
  out.map.resize(fan.size());
  for (std::size_t c = 0; c < fan.size(); ++c) out.map[c] = c;
  out.ok = out.faces.is_partial_order() && out.quotients.is_partial_order() &&
           is_order_isomorphism(out.faces, out.quotients, out.map);
  return out;
}

}  // namespace fanikit
