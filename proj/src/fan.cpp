#include "fanikit/fan.hpp"

#include "fanikit/lp.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace fanikit {

namespace {

void for_each_subset(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& f) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    f(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

std::size_t span_dim(std::size_t ambient, const std::vector<IntVector>& gens) {
  if (gens.empty()) return 0;
  return rank(IntMatrix::from_rows(gens, ambient));
}

// x = sum lambda_i g_i with lambda >= 0 (relint: every lambda_i >= t > 0).
bool in_cone(std::size_t ambient, const std::vector<IntVector>& gens, const RatVector& x, bool relint) {
  if (gens.empty()) return is_zero(x);
  const std::size_t k = gens.size();
  LinearSystem sys(k + 1);
  for (std::size_t c = 0; c < ambient; ++c) {
    RatVector row(k + 1);
    for (std::size_t i = 0; i < k; ++i) row[i] = gens[i][c];
    sys.add_eq(row, x[c]);
  }
  for (std::size_t i = 0; i < k; ++i) {
    RatVector row(k + 1);
    row[i] = 1;
    row[k] = -1;
    sys.add_ge(row, 0);
    sys.set_nonneg(i);
  }
  RatVector cap(k + 1);
  cap[k] = -1;
  sys.add_ge(cap, -1);
  if (!relint) {
    RatVector t(k + 1);
    t[k] = 1;
    sys.add_eq(t, 0);
    return find_feasible_point(sys).has_value();
  }
  RatVector cost(k + 1);
  cost[k] = -1;
  const auto sol = minimize(sys, cost);
  return sol && (*sol)[k] > 0;
}

// Does some non-trivial nonnegative combination of gens vanish?
bool has_line(std::size_t ambient, const std::vector<IntVector>& gens) {
  if (gens.empty()) return false;
  const std::size_t k = gens.size();
  LinearSystem sys(k);
  for (std::size_t c = 0; c < ambient; ++c) {
    RatVector row(k);
    for (std::size_t i = 0; i < k; ++i) row[i] = gens[i][c];
    sys.add_eq(row, 0);
  }
  sys.add_eq(RatVector(k, Rational(1)), 1);
  for (std::size_t i = 0; i < k; ++i) sys.set_nonneg(i);
  return find_feasible_point(sys).has_value();
}

IntVector project(const IntMatrix& p, const IntVector& v) { return p.apply(v); }

bool ray_less(const IntVector& a, const IntVector& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace

std::size_t Cone::dim() const { return span_dim(ambient, rays); }

bool Cone::contains(const RatVector& x) const { return in_cone(ambient, rays, x, false); }

bool Cone::contains_in_relint(const RatVector& x) const { return in_cone(ambient, rays, x, true); }

std::vector<RaySet> cone_faces(std::size_t ambient, const std::vector<IntVector>& generators) {
  std::set<RaySet> seen;
  std::function<void(const RaySet&)> visit = [&](const RaySet& s) {
    if (!seen.insert(s).second) return;
    std::vector<IntVector> gens;
    for (auto i : s) gens.push_back(generators[i]);
    const std::size_t d = span_dim(ambient, gens);
    if (d == 0) {
      seen.insert(RaySet{});
      return;
    }
    if (d == 1) {
      // A ray; its only proper face is the origin.
      seen.insert(RaySet{});
      return;
    }
    const IntMatrix ann = annihilator(ambient, gens).basis;
    std::vector<RatVector> ann_rows;
    for (const auto& c : ann.column_list()) ann_rows.push_back(to_rational(c));
    std::set<RaySet> facets;
    for_each_subset(s.size(), d - 1, [&](const std::vector<std::size_t>& sub) {
      std::vector<RatVector> rows = ann_rows;
      for (auto j : sub) rows.push_back(to_rational(gens[j]));
      const auto ker = rational_kernel(RatMatrix::from_rows(rows, ambient));
      if (ker.size() != 1) return;
      const RatVector& u = ker.front();
      int sign = 0;
      RaySet facet;
      for (std::size_t j = 0; j < gens.size(); ++j) {
        const Rational v = dot(u, to_rational(gens[j]));
        if (v == 0) {
          facet.push_back(s[j]);
          continue;
        }
        const int sj = v > 0 ? 1 : -1;
        if (sign == 0) sign = sj;
        if (sign != sj) return;
      }
      facets.insert(facet);
    });
    for (const auto& f : facets) visit(f);
  };
  RaySet all(generators.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  visit(all);
  seen.insert(RaySet{});
  return {seen.begin(), seen.end()};
}

Fan::Fan(std::size_t rank, std::vector<IntVector> rays, std::vector<RaySet> cones)
    : rank_(rank), rays_(std::move(rays)), cones_(std::move(cones)) {
  for (const auto& r : rays_)
    if (r.size() != rank_) throw std::invalid_argument("Fan: ray has wrong length");
  for (auto& c : cones_) {
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    for (auto i : c)
      if (i >= rays_.size()) throw std::invalid_argument("Fan: ray index out of range");
  }
  for (std::size_t i = 0; i < cones_.size(); ++i) {
    index_.emplace(cones_[i], i);
    std::vector<IntVector> gens;
    for (auto r : cones_[i]) gens.push_back(rays_[r]);
    dims_.push_back(span_dim(rank_, gens));
    std::vector<RaySet> faces;
    for (const auto& local : cone_faces(rank_, gens)) {
      RaySet global;
      for (auto j : local) global.push_back(cones_[i][j]);
      faces.push_back(std::move(global));
    }
    face_sets_.push_back(std::move(faces));
  }
}

Fan Fan::generated_by(std::size_t rank, std::vector<IntVector> rays, const std::vector<RaySet>& cones) {
  std::set<RaySet> all;
  all.insert(RaySet{});
  for (auto c : cones) {
    std::sort(c.begin(), c.end());
    std::vector<IntVector> gens;
    for (auto r : c) gens.push_back(rays.at(r));
    for (const auto& local : cone_faces(rank, gens)) {
      RaySet global;
      for (auto j : local) global.push_back(c[j]);
      all.insert(global);
    }
  }
  std::vector<std::pair<std::size_t, RaySet>> keyed;
  for (const auto& c : all) {
    std::vector<IntVector> gens;
    for (auto r : c) gens.push_back(rays[r]);
    keyed.emplace_back(span_dim(rank, gens), c);
  }
  std::sort(keyed.begin(), keyed.end());
  std::vector<RaySet> ordered;
  for (auto& [d, c] : keyed) ordered.push_back(c);
  return Fan(rank, std::move(rays), std::move(ordered));
}

Fan Fan::trivial(std::size_t rank) { return Fan(rank, {}, {RaySet{}}); }

Cone Fan::cone(std::size_t i) const {
  Cone c;
  c.ambient = rank_;
  for (auto r : cones_.at(i)) c.rays.push_back(rays_[r]);
  return c;
}

std::optional<std::size_t> Fan::find(const RaySet& rays) const {
  RaySet key = rays;
  std::sort(key.begin(), key.end());
  const auto it = index_.find(key);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool Fan::is_face(std::size_t i, std::size_t j) const {
  const auto& faces = face_sets_.at(j);
  return std::find(faces.begin(), faces.end(), cones_.at(i)) != faces.end();
}

std::vector<std::size_t> Fan::maximal_cones() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < size(); ++i) {
    bool maximal = true;
    for (std::size_t j = 0; j < size() && maximal; ++j)
      if (j != i && is_face(i, j)) maximal = false;
    if (maximal) out.push_back(i);
  }
  return out;
}

std::optional<std::size_t> Fan::locate(const RatVector& x) const {
  if (x.size() != rank_) throw std::invalid_argument("Fan::locate: dimension mismatch");
  std::vector<std::size_t> order(size());
  for (std::size_t i = 0; i < size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return dims_[a] < dims_[b]; });
  for (auto i : order)
    if (cone(i).contains(x)) return i;
  return std::nullopt;
}

bool Fan::support_contains(const RatVector& x) const {
  if (x.size() != rank_) throw std::invalid_argument("Fan::support_contains: dimension mismatch");
  for (auto i : maximal_cones())
    if (cone(i).contains(x)) return true;
  return false;
}

bool operator==(const Fan& a, const Fan& b) {
  return a.rank_ == b.rank_ && a.rays_ == b.rays_ && a.cones_ == b.cones_;
}

bool same_fan(const Fan& a, const Fan& b) {
  if (a.rank() != b.rank()) return false;
  auto key = [](const Fan& f) {
    std::set<std::vector<IntVector>> s;
    for (std::size_t i = 0; i < f.size(); ++i) {
      auto rays = f.cone(i).rays;
      std::sort(rays.begin(), rays.end(), ray_less);
      s.insert(rays);
    }
    return s;
  };
  return key(a) == key(b);
}

bool FanReport::has(const std::string& kind) const {
  return std::any_of(violations.begin(), violations.end(), [&](const FanViolation& v) { return v.kind == kind; });
}

FanReport validate_fan(const Fan& fan) {
  FanReport report;
  const std::size_t n = fan.rank();
  std::vector<bool> used(fan.rays().size(), false);
  for (const auto& c : fan.cones())
    for (auto r : c) used[r] = true;
  for (std::size_t r = 0; r < fan.rays().size(); ++r) {
    if (!used[r]) continue;
    if (is_zero(fan.rays()[r]))
      report.violations.push_back({"zero ray", {}, "ray " + std::to_string(r)});
    else if (content(fan.rays()[r]) != 1)
      report.violations.push_back({"non-primitive ray", {}, "ray " + std::to_string(r)});
  }
  if (!fan.zero_cone()) report.violations.push_back({"missing face", {}, "zero cone absent"});

  std::vector<bool> sound(fan.size(), true);
  for (std::size_t i = 0; i < fan.size(); ++i) {
    const Cone c = fan.cone(i);
    if (has_line(n, c.rays)) {
      report.violations.push_back({"not strongly convex", {i}, ""});
      sound[i] = false;
      continue;
    }
    for (std::size_t j = 0; j < c.rays.size(); ++j) {
      std::vector<IntVector> others;
      for (std::size_t k = 0; k < c.rays.size(); ++k)
        if (k != j) others.push_back(c.rays[k]);
      if (in_cone(n, others, to_rational(c.rays[j]), false)) {
        report.violations.push_back({"redundant generator", {i}, "ray " + std::to_string(fan.cones()[i][j])});
        sound[i] = false;
      }
    }
  }
  for (std::size_t i = 0; i < fan.size(); ++i) {
    if (!sound[i]) continue;
    for (const auto& f : fan.face_sets(i))
      if (!f.empty() && !fan.find(f)) {
        std::string d = "face {";
        for (std::size_t k = 0; k < f.size(); ++k) d += (k ? "," : "") + std::to_string(f[k]);
        report.violations.push_back({"missing face", {i}, d + "}"});
      }
  }
  // Distinct cones of a fan have disjoint relative interiors.
  for (std::size_t i = 0; i < fan.size(); ++i)
    for (std::size_t j = i + 1; j < fan.size(); ++j) {
      if (!sound[i] || !sound[j]) continue;
      const Cone a = fan.cone(i), b = fan.cone(j);
      if (a.rays.empty() || b.rays.empty()) continue;
      const std::size_t ka = a.rays.size(), kb = b.rays.size();
      LinearSystem sys(ka + kb);
      for (std::size_t c = 0; c < n; ++c) {
        RatVector row(ka + kb);
        for (std::size_t t = 0; t < ka; ++t) row[t] = a.rays[t][c];
        for (std::size_t t = 0; t < kb; ++t) row[ka + t] = -b.rays[t][c];
        sys.add_eq(row, 0);
      }
      for (std::size_t t = 0; t < ka + kb; ++t) {
        RatVector row(ka + kb);
        row[t] = 1;
        sys.add_ge(row, 1);
      }
      if (find_feasible_point(sys)) report.violations.push_back({"overlapping interiors", {i, j}, ""});
    }
  return report;
}

Poset face_poset(const Fan& fan) {
  Poset p(fan.size());
  for (std::size_t i = 0; i < fan.size(); ++i)
    for (std::size_t j = 0; j < fan.size(); ++j) p.leq[i][j] = fan.is_face(i, j);
  return p;
}

QuotientFan quotient_fan(const Fan& fan, std::size_t sigma) {
  if (sigma >= fan.size()) throw std::invalid_argument("quotient_fan: cone not in fan");
  QuotientFan out;
  std::vector<IntVector> sigma_rays = fan.cone(sigma).rays;
  out.lattice = quotient_lattice(fan.rank(), span(fan.rank(), sigma_rays));
  std::vector<IntVector> rays;
  std::map<IntVector, std::size_t> ray_index;
  std::vector<RaySet> cones;
  out.cone_map.assign(fan.size(), std::nullopt);
  const auto& sigma_set = fan.cones()[sigma];
  for (std::size_t t = 0; t < fan.size(); ++t) {
    if (!fan.is_face(sigma, t)) continue;
    std::vector<IntVector> gens;
    for (auto r : fan.cones()[t]) {
      if (std::binary_search(sigma_set.begin(), sigma_set.end(), r)) continue;
      const IntVector p = primitive(project(out.lattice.projection, fan.rays()[r]));
      if (!is_zero(p) && std::find(gens.begin(), gens.end(), p) == gens.end()) gens.push_back(p);
    }
    // A generator of a non-simplicial tau can land inside the image cone.
    RaySet image;
    for (std::size_t g = 0; g < gens.size(); ++g) {
      std::vector<IntVector> others;
      for (std::size_t h = 0; h < gens.size(); ++h)
        if (h != g) others.push_back(gens[h]);
      if (in_cone(out.lattice.rank, others, to_rational(gens[g]), false)) continue;
      auto [it, inserted] = ray_index.emplace(gens[g], rays.size());
      if (inserted) rays.push_back(gens[g]);
      image.push_back(it->second);
    }
    std::sort(image.begin(), image.end());
    image.erase(std::unique(image.begin(), image.end()), image.end());
    auto pos = std::find(cones.begin(), cones.end(), image);
    if (pos == cones.end()) {
      out.cone_map[t] = cones.size();
      cones.push_back(image);
    } else {
      out.cone_map[t] = static_cast<std::size_t>(pos - cones.begin());
    }
  }
  out.fan = Fan(out.lattice.rank, std::move(rays), std::move(cones));
  return out;
}

LatticePolytope LatticePolytope::hull(std::size_t ambient, const std::vector<RatVector>& points) {
  std::vector<RatVector> pts;
  for (const auto& p : points) {
    if (p.size() != ambient) throw std::invalid_argument("LatticePolytope::hull: dimension mismatch");
    if (std::find(pts.begin(), pts.end(), p) == pts.end()) pts.push_back(p);
  }
  LatticePolytope q;
  q.ambient = ambient;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    // Extreme iff not a convex combination of the others.
    const std::size_t k = pts.size() - 1;
    if (k == 0) {
      q.vertices.push_back(pts[i]);
      continue;
    }
    LinearSystem sys(k);
    for (std::size_t c = 0; c < ambient; ++c) {
      RatVector row;
      for (std::size_t j = 0; j < pts.size(); ++j)
        if (j != i) row.push_back(pts[j][c]);
      sys.add_eq(row, pts[i][c]);
    }
    sys.add_eq(RatVector(k, Rational(1)), 1);
    for (std::size_t j = 0; j < k; ++j) sys.set_nonneg(j);
    if (!find_feasible_point(sys)) q.vertices.push_back(pts[i]);
  }
  return q;
}

bool LatticePolytope::full_dimensional() const {
  if (vertices.empty()) return false;
  if (ambient == 0) return true;
  std::vector<RatVector> diffs;
  for (std::size_t i = 1; i < vertices.size(); ++i) {
    RatVector d(ambient);
    for (std::size_t c = 0; c < ambient; ++c) d[c] = vertices[i][c] - vertices[0][c];
    diffs.push_back(d);
  }
  return !diffs.empty() && rank(RatMatrix::from_rows(diffs, ambient)) == ambient;
}

bool LatticePolytope::is_lattice() const {
  for (const auto& v : vertices)
    for (const auto& x : v)
      if (x.get_den() != 1) return false;
  return true;
}

LatticePolytope LatticePolytope::scaled(const Rational& l) const {
  LatticePolytope q = *this;
  for (auto& v : q.vertices)
    for (auto& x : v) x *= l;
  return q;
}

std::vector<Facet> polytope_facets(const LatticePolytope& q) {
  if (!q.full_dimensional()) throw std::invalid_argument("polytope_facets: polytope is not full-dimensional");
  const std::size_t d = q.ambient;
  std::vector<Facet> facets;
  if (d == 0) return facets;
  for_each_subset(q.vertices.size(), d, [&](const std::vector<std::size_t>& s) {
    std::vector<RatVector> diffs;
    for (std::size_t k = 1; k < s.size(); ++k) {
      RatVector v(d);
      for (std::size_t c = 0; c < d; ++c) v[c] = q.vertices[s[k]][c] - q.vertices[s[0]][c];
      diffs.push_back(v);
    }
    const auto ker = rational_kernel(RatMatrix::from_rows(diffs, d));
    if (ker.size() != 1) return;
    IntVector normal = primitive(ker.front());
    RatVector u = to_rational(normal);
    Rational c = dot(u, q.vertices[s[0]]);
    int sign = 0;
    std::vector<std::size_t> on;
    for (std::size_t i = 0; i < q.vertices.size(); ++i) {
      const Rational v = dot(u, q.vertices[i]) - c;
      if (v == 0) {
        on.push_back(i);
        continue;
      }
      const int si = v > 0 ? 1 : -1;
      if (sign == 0) sign = si;
      if (sign != si) return;
    }
    if (sign < 0) {
      for (auto& x : normal) x = -x;
      c = -c;
    }
    for (const auto& f : facets)
      if (f.normal == normal) return;
    facets.push_back({normal, c, on});
  });
  return facets;
}

Fan normal_fan(const LatticePolytope& q) {
  if (!q.full_dimensional()) throw std::invalid_argument("normal_fan: polytope is not full-dimensional");
  const auto facets = polytope_facets(q);
  std::vector<IntVector> rays;
  for (const auto& f : facets) rays.push_back(f.normal);
  std::vector<RaySet> maximal;
  for (std::size_t v = 0; v < q.vertices.size(); ++v) {
    RaySet c;
    for (std::size_t i = 0; i < facets.size(); ++i)
      if (std::find(facets[i].vertices.begin(), facets[i].vertices.end(), v) != facets[i].vertices.end()) c.push_back(i);
    maximal.push_back(c);
  }
  return Fan::generated_by(q.ambient, rays, maximal);
}

bool is_complete(const Fan& fan) {
  const std::size_t n = fan.rank();
  if (!fan.zero_cone()) return false;
  if (n == 0) return true;
  const auto maxs = fan.maximal_cones();
  for (auto m : maxs)
    if (fan.cone_dim(m) != n) return false;
  // Adjacency of maximal cones through shared walls.
  std::vector<std::vector<std::size_t>> adj(maxs.size());
  for (std::size_t w = 0; w < fan.size(); ++w) {
    if (fan.cone_dim(w) != n - 1) continue;
    std::vector<std::size_t> over;
    for (std::size_t k = 0; k < maxs.size(); ++k)
      if (fan.is_face(w, maxs[k])) over.push_back(k);
    if (over.size() != 2) return false;
    adj[over[0]].push_back(over[1]);
    adj[over[1]].push_back(over[0]);
  }
  if (maxs.empty()) return false;
  std::vector<bool> seen(maxs.size(), false);
  std::vector<std::size_t> stack{0};
  seen[0] = true;
  while (!stack.empty()) {
    const auto k = stack.back();
    stack.pop_back();
    for (auto j : adj[k])
      if (!seen[j]) {
        seen[j] = true;
        stack.push_back(j);
      }
  }
  return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

DualCone dual_cone(const Cone& sigma) {
  DualCone out;
  out.inequalities = Polyhedron(sigma.ambient);
  for (const auto& r : sigma.rays) out.inequalities.add_ge(to_rational(r), 0);
  const VRep v = enumerate(out.inequalities);
  for (const auto& r : v.rays) out.rays.push_back(primitive(r));
  for (const auto& l : v.lineality) out.lineality.push_back(primitive(l));
  return out;
}

StackyReport validate_stacky(const StackyFan& sf) {
  StackyReport rep;
  if (sf.beta.rows() != sf.fan.rank() || sf.beta.cols() != sf.fan_tilde.rank()) {
    rep.failures.push_back("beta has the wrong shape");
    return rep;
  }
  rep.cokernel = cokernel(sf.beta);
  rep.finite_cokernel = rep.cokernel.finite;
  if (!rep.finite_cokernel) rep.failures.push_back("infinite cokernel");
  if (sf.cone_bijection.size() != sf.fan_tilde.size() || sf.fan_tilde.size() != sf.fan.size()) {
    rep.failures.push_back("cone bijection has the wrong size");
    return rep;
  }
  std::vector<bool> hit(sf.fan.size(), false);
  for (auto c : sf.cone_bijection) {
    if (c >= sf.fan.size() || hit[c]) {
      rep.failures.push_back("cone map is not a bijection");
      return rep;
    }
    hit[c] = true;
  }
  for (std::size_t i = 0; i < sf.fan_tilde.size(); ++i)
    for (std::size_t j = 0; j < sf.fan_tilde.size(); ++j)
      if (sf.fan_tilde.is_face(i, j) != sf.fan.is_face(sf.cone_bijection[i], sf.cone_bijection[j]))
        rep.failures.push_back("face order not preserved at cones " + std::to_string(i) + "," + std::to_string(j));
  for (std::size_t i = 0; i < sf.fan_tilde.size(); ++i) {
    std::set<IntVector> image, target;
    for (const auto& r : sf.fan_tilde.cone(i).rays) image.insert(primitive(sf.beta.apply(r)));
    for (const auto& r : sf.fan.cone(sf.cone_bijection[i]).rays) target.insert(r);
    if (image != target) rep.failures.push_back("beta does not carry cone " + std::to_string(i) + " onto its partner");
  }
  return rep;
}

Fan affine_space_fan(std::size_t n) {
  std::vector<IntVector> rays;
  RaySet all;
  for (std::size_t i = 0; i < n; ++i) {
    IntVector e(n);
    e[i] = 1;
    rays.push_back(e);
    all.push_back(i);
  }
  return Fan::generated_by(n, rays, {all});
}

Fan projective_space_fan(std::size_t n) {
  std::vector<IntVector> rays;
  for (std::size_t i = 0; i < n; ++i) {
    IntVector e(n);
    e[i] = 1;
    rays.push_back(e);
  }
  rays.push_back(IntVector(n, Integer(-1)));
  std::vector<RaySet> maximal;
  for (std::size_t skip = 0; skip <= n; ++skip) {
    RaySet c;
    for (std::size_t i = 0; i <= n; ++i)
      if (i != skip) c.push_back(i);
    maximal.push_back(c);
  }
  return Fan::generated_by(n, rays, maximal);
}

}  // namespace fanikit
