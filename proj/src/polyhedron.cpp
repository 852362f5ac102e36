#include "fanikit/polyhedron.hpp"

#include "fanikit/lattice.hpp"
#include "fanikit/lp.hpp"

#include <algorithm>
#include <functional>

namespace fanikit {

void Polyhedron::add_eq(RatVector row, Rational rhs) {
  if (row.size() != dim) throw std::invalid_argument("Polyhedron::add_eq: width mismatch");
  eq_rows.push_back(std::move(row));
  eq_rhs.push_back(std::move(rhs));
}

void Polyhedron::add_ge(RatVector row, Rational rhs) {
  if (row.size() != dim) throw std::invalid_argument("Polyhedron::add_ge: width mismatch");
  ineq_rows.push_back(std::move(row));
  ineq_rhs.push_back(std::move(rhs));
}

bool Polyhedron::contains(const RatVector& x) const {
  for (std::size_t i = 0; i < eq_rows.size(); ++i)
    if (dot(eq_rows[i], x) != eq_rhs[i]) return false;
  for (std::size_t i = 0; i < ineq_rows.size(); ++i)
    if (dot(ineq_rows[i], x) < ineq_rhs[i]) return false;
  return true;
}

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

RatVector primitive_direction(const RatVector& v) {
  return to_rational(primitive(v));
}

// Orthogonal projection onto the complement of span(basis).
RatVector project_out(const RatVector& x, const std::vector<RatVector>& basis) {
  if (basis.empty()) return x;
  // Solve Gram * c = B^T x, subtract B c.
  const std::size_t k = basis.size();
  RatMatrix gram(k, k);
  RatVector rhs(k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) gram(i, j) = dot(basis[i], basis[j]);
    rhs[i] = dot(basis[i], x);
  }
  const auto c = solve(gram, rhs);
  RatVector out = x;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t t = 0; t < x.size(); ++t) out[t] -= (*c)[i] * basis[i][t];
  return out;
}

}  // namespace

int VRep::dimension() const {
  if (vertices.empty()) return -1;
  std::vector<RatVector> dirs;
  for (std::size_t i = 1; i < vertices.size(); ++i) {
    RatVector d(ambient);
    for (std::size_t t = 0; t < ambient; ++t) d[t] = vertices[i][t] - vertices[0][t];
    dirs.push_back(std::move(d));
  }
  for (const auto& r : rays) dirs.push_back(r);
  for (const auto& l : lineality) dirs.push_back(l);
  if (dirs.empty()) return 0;
  return static_cast<int>(rank(RatMatrix::from_rows(dirs, ambient)));
}

RatVector VRep::relative_interior_point() const {
  if (vertices.empty()) throw std::logic_error("relative_interior_point: empty polyhedron");
  RatVector p(ambient);
  for (const auto& v : vertices)
    for (std::size_t t = 0; t < ambient; ++t) p[t] += v[t];
  for (auto& x : p) x /= static_cast<long>(vertices.size());
  for (const auto& r : rays)
    for (std::size_t t = 0; t < ambient; ++t) p[t] += r[t];
  return p;
}

VRep enumerate(const Polyhedron& p) {
  const std::size_t d = p.dim;
  VRep out;
  out.ambient = d;

  std::vector<RatVector> all_rows = p.eq_rows;
  all_rows.insert(all_rows.end(), p.ineq_rows.begin(), p.ineq_rows.end());
  out.lineality = all_rows.empty() ? std::vector<RatVector>{} : rational_kernel(RatMatrix::from_rows(all_rows, d));
  if (all_rows.empty()) {
    for (std::size_t i = 0; i < d; ++i) {
      RatVector e(d);
      e[i] = 1;
      out.lineality.push_back(e);
    }
  }
  for (auto& l : out.lineality) l = primitive_direction(l);

  std::vector<RatVector> eq = p.eq_rows;
  RatVector eq_rhs = p.eq_rhs;
  for (const auto& l : out.lineality) {
    eq.push_back(l);
    eq_rhs.emplace_back(0);
  }
  const std::size_t eq_rank = eq.empty() ? 0 : rank(RatMatrix::from_rows(eq, d));
  if (eq_rank > d) return out;
  const std::size_t k = d - eq_rank;
  const auto& ineq = p.ineq_rows;

  auto feasible = [&](const RatVector& x) {
    for (std::size_t i = 0; i < p.eq_rows.size(); ++i)
      if (dot(p.eq_rows[i], x) != p.eq_rhs[i]) return false;
    for (std::size_t i = 0; i < ineq.size(); ++i)
      if (dot(ineq[i], x) < p.ineq_rhs[i]) return false;
    return true;
  };

  if (k == 0) {
    if (eq.empty()) {
      // d == 0: the single point of R^0.
      out.vertices.emplace_back();
      return out;
    }
    const auto x = solve(RatMatrix::from_rows(eq, d), eq_rhs);
    if (x && feasible(*x)) out.vertices.push_back(*x);
    return out;
  }

  for_each_subset(ineq.size(), k, [&](const std::vector<std::size_t>& s) {
    std::vector<RatVector> rows = eq;
    RatVector rhs = eq_rhs;
    for (auto i : s) {
      rows.push_back(ineq[i]);
      rhs.push_back(p.ineq_rhs[i]);
    }
    const RatMatrix m = RatMatrix::from_rows(rows, d);
    if (rank(m) != d) return;
    const auto x = solve(m, rhs);
    if (!x || !feasible(*x)) return;
    if (std::find(out.vertices.begin(), out.vertices.end(), *x) == out.vertices.end()) out.vertices.push_back(*x);
  });
  if (out.vertices.empty()) return out;

  // Extreme rays of the recession cone {eq x = 0, ineq x >= 0}.
  auto recession_ok = [&](const RatVector& r) {
    for (const auto& row : p.eq_rows)
      if (dot(row, r) != 0) return false;
    for (const auto& row : ineq)
      if (dot(row, r) < 0) return false;
    return true;
  };
  for_each_subset(ineq.size(), k - 1, [&](const std::vector<std::size_t>& s) {
    std::vector<RatVector> rows = eq;
    for (auto i : s) rows.push_back(ineq[i]);
    std::vector<RatVector> ker;
    if (rows.empty()) {
      if (d != 1) return;
      ker.push_back(RatVector{Rational(1)});
    } else {
      ker = rational_kernel(RatMatrix::from_rows(rows, d));
    }
    if (ker.size() != 1) return;
    RatVector r = primitive_direction(ker.front());
    RatVector neg = r;
    for (auto& x : neg) x = -x;
    for (const auto& cand : {r, neg}) {
      if (!recession_ok(cand)) continue;
      if (std::find(out.rays.begin(), out.rays.end(), cand) == out.rays.end()) out.rays.push_back(cand);
    }
  });
  return out;
}

namespace {

struct CanonicalVRep {
  RatMatrix lineality_rref;
  std::vector<RatVector> vertices;
  std::vector<RatVector> rays;
};

CanonicalVRep canonical(const VRep& v) {
  CanonicalVRep c;
  std::vector<RatVector> lin;
  if (!v.lineality.empty()) {
    std::vector<std::size_t> piv;
    RatMatrix r = rref(RatMatrix::from_rows(v.lineality, v.ambient), &piv);
    c.lineality_rref = r.row_range(0, piv.size());
    lin = c.lineality_rref.row_list();
  } else {
    c.lineality_rref = RatMatrix(0, v.ambient);
  }
  for (const auto& x : v.vertices) {
    RatVector y = project_out(x, lin);
    if (std::find(c.vertices.begin(), c.vertices.end(), y) == c.vertices.end()) c.vertices.push_back(y);
  }
  for (const auto& r : v.rays) {
    RatVector y = project_out(r, lin);
    if (is_zero(y)) continue;
    y = primitive_direction(y);
    if (std::find(c.rays.begin(), c.rays.end(), y) == c.rays.end()) c.rays.push_back(y);
  }
  auto less = [](const RatVector& a, const RatVector& b) { return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end()); };
  std::sort(c.vertices.begin(), c.vertices.end(), less);
  std::sort(c.rays.begin(), c.rays.end(), less);
  return c;
}

}  // namespace

bool same_polyhedron(const VRep& a, const VRep& b) {
  if (a.ambient != b.ambient) return false;
  if (a.empty() || b.empty()) return a.empty() == b.empty();
  const CanonicalVRep ca = canonical(a);
  const CanonicalVRep cb = canonical(b);
  return ca.lineality_rref == cb.lineality_rref && ca.vertices == cb.vertices && ca.rays == cb.rays;
}

namespace {

// x = sum a_i v_i + sum b_j r_j + sum c_k l_k, a >= 0 summing to 1 (when
// with_vertices), b >= 0, c free.
bool representable(const VRep& v, const RatVector& x, bool with_vertices) {
  if (x.size() != v.ambient) throw std::invalid_argument("VRep membership: dimension mismatch");
  const std::size_t nv = with_vertices ? v.vertices.size() : 0;
  const std::size_t nr = v.rays.size(), nl = v.lineality.size();
  if (with_vertices && nv == 0) return false;
  LinearSystem sys(nv + nr + nl);
  for (std::size_t c = 0; c < v.ambient; ++c) {
    RatVector row(nv + nr + nl);
    for (std::size_t i = 0; i < nv; ++i) row[i] = v.vertices[i][c];
    for (std::size_t j = 0; j < nr; ++j) row[nv + j] = v.rays[j][c];
    for (std::size_t k = 0; k < nl; ++k) row[nv + nr + k] = v.lineality[k][c];
    sys.add_eq(row, x[c]);
  }
  if (with_vertices) {
    RatVector row(nv + nr + nl);
    for (std::size_t i = 0; i < nv; ++i) row[i] = 1;
    sys.add_eq(row, 1);
  }
  for (std::size_t i = 0; i < nv + nr; ++i) sys.set_nonneg(i);
  if (sys.num_vars == 0) return is_zero(x);
  return find_feasible_point(sys).has_value();
}

}  // namespace

bool contains_point(const VRep& v, const RatVector& x) { return representable(v, x, true); }

bool contains_direction(const VRep& v, const RatVector& d) { return representable(v, d, false); }

bool contained_in(const VRep& a, const VRep& b) {
  if (a.empty()) return true;
  for (const auto& x : a.vertices)
    if (!contains_point(b, x)) return false;
  for (const auto& r : a.rays)
    if (!contains_direction(b, r)) return false;
  for (const auto& l : a.lineality) {
    RatVector neg = l;
    for (auto& x : neg) x = -x;
    if (!contains_direction(b, l) || !contains_direction(b, neg)) return false;
  }
  return true;
}

bool contained_in(const VRep& a, const Polyhedron& b) {
  if (a.empty()) return true;
  for (const auto& x : a.vertices)
    if (!b.contains(x)) return false;
  auto direction_ok = [&](const RatVector& d, bool both) {
    for (const auto& row : b.eq_rows)
      if (dot(row, d) != 0) return false;
    for (const auto& row : b.ineq_rows) {
      const Rational s = dot(row, d);
      if (s < 0 || (both && s != 0)) return false;
    }
    return true;
  };
  for (const auto& r : a.rays)
    if (!direction_ok(r, false)) return false;
  for (const auto& l : a.lineality)
    if (!direction_ok(l, true)) return false;
  return true;
}

VRep affine_image(const VRep& v, const RatMatrix& linear, const RatVector& offset) {
  if (linear.cols() != v.ambient || offset.size() != linear.rows())
    throw std::invalid_argument("affine_image: dimension mismatch");
  VRep out;
  out.ambient = linear.rows();
  for (const auto& x : v.vertices) {
    RatVector y = linear.apply(x);
    for (std::size_t t = 0; t < y.size(); ++t) y[t] += offset[t];
    out.vertices.push_back(std::move(y));
  }
  for (const auto& r : v.rays) {
    RatVector y = linear.apply(r);
    if (!is_zero(y)) out.rays.push_back(primitive_direction(y));
  }
  for (const auto& l : v.lineality) {
    RatVector y = linear.apply(l);
    if (!is_zero(y)) out.lineality.push_back(primitive_direction(y));
  }
  return out;
}

}  // namespace fanikit
