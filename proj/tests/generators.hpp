#pragma once

// Seeded generators shared by the property tests.

#include "fanikit/fan.hpp"
#include "fanikit/tropical.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <set>

namespace gen {

using namespace fanikit;

inline long uniform(std::mt19937_64& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

inline IntMatrix int_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, long range) {
  IntMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = uniform(rng, -range, range);
  return m;
}

inline IntMatrix unimodular(std::mt19937_64& rng, std::size_t n, int steps = 8) {
  IntMatrix m = IntMatrix::identity(n);
  if (n < 2) return uniform(rng, 0, 1) ? m : -m;
  for (int s = 0; s < steps; ++s) {
    const auto i = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(n) - 1));
    auto j = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(n) - 2));
    if (j >= i) ++j;
    const long k = uniform(rng, -2, 2);
    for (std::size_t c = 0; c < n; ++c) m(i, c) += k * m(j, c);
  }
  return m;
}

inline LatticePolytope polytope(std::mt19937_64& rng, std::size_t n) {
  while (true) {
    std::vector<RatVector> pts;
    const long count = uniform(rng, static_cast<long>(n) + 1, static_cast<long>(n) + 3);
    for (long k = 0; k < count; ++k) {
      RatVector p(n);
      for (auto& x : p) x = uniform(rng, -2, 2);
      pts.push_back(p);
    }
    auto q = LatticePolytope::hull(n, pts);
    if (q.full_dimensional()) return q;
  }
}

// Drops unused rays and renumbers.
inline Fan compact(const Fan& f) {
  std::set<std::size_t> used;
  for (const auto& c : f.cones()) used.insert(c.begin(), c.end());
  std::map<std::size_t, std::size_t> renum;
  std::vector<IntVector> rays;
  for (auto r : used) {
    renum[r] = rays.size();
    rays.push_back(f.rays()[r]);
  }
  std::vector<RaySet> cones;
  for (const auto& c : f.cones()) {
    RaySet s;
    for (auto r : c) s.push_back(renum[r]);
    std::sort(s.begin(), s.end());
    cones.push_back(s);
  }
  return Fan::generated_by(f.rank(), rays, cones);
}

// A subfan of the normal fan of a random polytope: random cones of any
// dimension closed under faces, at most max_cones cones.
inline Fan fan(std::mt19937_64& rng, std::size_t max_rank = 3, std::size_t max_cones = 20) {
  while (true) {
    const auto n = static_cast<std::size_t>(uniform(rng, 1, static_cast<long>(max_rank)));
    const Fan full = normal_fan(polytope(rng, n));
    std::vector<RaySet> pick;
    for (std::size_t c = 0; c < full.size(); ++c)
      if (uniform(rng, 0, 2) == 0) pick.push_back(full.cones()[c]);
    if (pick.empty()) pick.push_back({});
    Fan f = compact(Fan::generated_by(n, full.rays(), pick));
    if (f.size() <= max_cones) return f;
  }
}

inline RatVector rational_point(std::mt19937_64& rng, std::size_t n, long range = 6, long den = 5) {
  RatVector p(n);
  for (auto& x : p) x = Rational(uniform(rng, -range * den, range * den), uniform(rng, 1, den));
  for (auto& x : p) x.canonicalize();
  return p;
}

struct Regular {
  Triangulation t;
  PLFunction mu;
};

// Regular triangulation from a generic random lift of the lattice points of a
// random polytope: the lower facets of the lifted point set. Retries until
// the lift is generic (no extra point on a lower facet's plane).
inline Regular regular_triangulation(std::mt19937_64& rng, std::size_t n) {
  while (true) {
    const auto q = polytope(rng, n);
    std::vector<IntVector> pts;
    IntVector lo(n), hi(n);
    for (std::size_t i = 0; i < n; ++i) {
      lo[i] = hi[i] = q.vertices[0][i].get_num();
      for (const auto& v : q.vertices) {
        lo[i] = std::min<Integer>(lo[i], v[i].get_num());
        hi[i] = std::max<Integer>(hi[i], v[i].get_num());
      }
    }
    const VRep shape{n, q.vertices, {}, {}};
    IntVector p = lo;
    while (true) {
      if (contains_point(shape, to_rational(p))) pts.push_back(p);
      std::size_t i = 0;
      while (i < n && p[i] == hi[i]) {
        p[i] = lo[i];
        ++i;
      }
      if (i == n) break;
      ++p[i];
    }
    if (pts.size() > 9) continue;
    std::vector<Rational> lift;
    for (std::size_t k = 0; k < pts.size(); ++k) lift.emplace_back(uniform(rng, 0, 40));

    bool generic = true;
    std::vector<std::vector<std::size_t>> simplices;
    std::vector<std::size_t> idx(n + 1);
    std::function<void(std::size_t, std::size_t)> choose = [&](std::size_t pos, std::size_t start) {
      if (!generic) return;
      if (pos == n + 1) {
        // Affine function a.x + b through the chosen lifted points.
        RatMatrix m(n + 1, n + 1);
        RatVector rhs(n + 1);
        for (std::size_t r = 0; r <= n; ++r) {
          for (std::size_t c = 0; c < n; ++c) m(r, c) = pts[idx[r]][c];
          m(r, n) = 1;
          rhs[r] = lift[idx[r]];
        }
        if (rank(m) < n + 1) return;
        const auto ab = *solve(m, rhs);
        bool lower = true, tight = false;
        for (std::size_t k = 0; k < pts.size(); ++k) {
          if (std::find(idx.begin(), idx.end(), k) != idx.end()) continue;
          Rational v = ab[n];
          for (std::size_t c = 0; c < n; ++c) v += ab[c] * pts[k][c];
          if (lift[k] < v) lower = false;
          if (lift[k] == v) tight = true;
        }
        if (lower && tight) generic = false;
        if (lower && !tight) simplices.push_back(idx);
        return;
      }
      for (std::size_t k = start; k < pts.size(); ++k) {
        idx[pos] = k;
        choose(pos + 1, k + 1);
      }
    };
    choose(0, 0);
    if (!generic) continue;
    std::vector<std::size_t> used;
    for (const auto& s : simplices) used.insert(used.end(), s.begin(), s.end());
    std::sort(used.begin(), used.end());
    used.erase(std::unique(used.begin(), used.end()), used.end());
    Regular out;
    std::map<std::size_t, std::size_t> renum;
    for (auto u : used) {
      renum[u] = out.t.vertices.size();
      out.t.vertices.push_back(pts[u]);
      out.mu.values.push_back(lift[u]);
    }
    for (auto s : simplices) {
      for (auto& k : s) k = renum[k];
      out.t.simplices.push_back(s);
    }
    return out;
  }
}

}  // namespace gen
