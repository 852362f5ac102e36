#include "fanikit/fibration.hpp"

#include <cmath>
#include <random>

namespace fanikit {

RetractionContext::RetractionContext(Fan f, RatMatrix g) : fan(std::move(f)), gram(std::move(g)) {
  if (gram.rows() == 0 && gram.cols() == 0) gram = RatMatrix::identity(fan.rank());
  if (gram.rows() != fan.rank() || gram.cols() != fan.rank())
    throw std::invalid_argument("RetractionContext: inner product has the wrong size");
  for (std::size_t i = 0; i < gram.rows(); ++i)
    for (std::size_t j = 0; j < gram.cols(); ++j)
      if (gram(i, j) != gram(j, i)) throw std::invalid_argument("RetractionContext: inner product is not symmetric");
  // Sylvester's criterion.
  for (std::size_t k = 1; k <= gram.rows(); ++k) {
    RatMatrix minor(k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) minor(i, j) = gram(i, j);
    if (determinant(minor) <= 0) throw std::invalid_argument("RetractionContext: inner product is not positive definite");
  }
}

Retraction::Retraction(RetractionContext ctx) : ctx_(std::move(ctx)) {
  const Fan& f = ctx_.fan;
  complete_ = is_complete(f);
  star_rays_.resize(f.size());
  for (std::size_t t = 0; t < f.size(); ++t) {
    std::vector<bool> seen(f.rays().size(), false);
    for (std::size_t c = 0; c < f.size(); ++c) {
      if (!f.is_face(t, c)) continue;
      for (auto r : f.cones()[c])
        if (!seen[r]) {
          seen[r] = true;
          star_rays_[t].push_back(f.rays()[r]);
        }
    }
  }
}

Rational Retraction::inner(const RatVector& a, const RatVector& b) const { return dot(a, ctx_.gram.apply(b)); }

RatVector Retraction::foot(std::size_t cone, const RatVector& m) const {
  const Cone c = ctx_.fan.cone(cone);
  std::vector<RatVector> gens;
  for (const auto& r : c.rays) gens.push_back(to_rational(r));
  std::vector<RatVector> basis;
  for (auto i : independent_subset(gens)) basis.push_back(gens[i]);
  RatVector p(m.size());
  if (basis.empty()) return p;
  const std::size_t k = basis.size();
  RatMatrix g(k, k);
  RatVector rhs(k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) g(i, j) = inner(basis[i], basis[j]);
    rhs[i] = inner(basis[i], m);
  }
  const RatVector coef = *solve(g, rhs);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t t = 0; t < p.size(); ++t) p[t] += coef[i] * basis[i][t];
  return p;
}

std::optional<std::size_t> Retraction::capturing_cone(const RatVector& m) const {
  const Fan& f = ctx_.fan;
  if (m.size() != f.rank()) throw std::invalid_argument("retract: dimension mismatch");
  if (complete_ || f.support_contains(m)) return std::nullopt;
  return capture(m);
}

std::optional<std::size_t> Retraction::capture(const RatVector& m) const {
  const Fan& f = ctx_.fan;
  std::vector<std::size_t> order(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return f.cone_dim(a) < f.cone_dim(b); });
  for (auto t : order) {
    const RatVector p = foot(t, m);
    RatVector v(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) v[i] = m[i] - p[i];
    bool outward = true;
    for (const auto& w : star_rays_[t])
      if (inner(v, to_rational(w)) > 0) {
        outward = false;
        break;
      }
    if (outward && f.cone(t).contains_in_relint(p)) return t;
  }
  return std::nullopt;
}

RatVector Retraction::operator()(const RatVector& m) const {
  const Fan& f = ctx_.fan;
  if (m.size() != f.rank()) throw std::invalid_argument("retract: dimension mismatch");
  if (complete_ || f.support_contains(m)) return m;
  const auto t = capture(m);
  if (!t) return RatVector(m.size());
  return foot(*t, m);
}

RatVector retract(const RetractionContext& ctx, const RatVector& m) { return Retraction(ctx)(m); }

RatVector nearest_point_oracle(const RetractionContext& ctx, const RatVector& m) {
  const Fan& f = ctx.fan;
  if (m.size() != f.rank()) throw std::invalid_argument("nearest_point_oracle: dimension mismatch");
  std::optional<Rational> best;
  RatVector best_p(m.size());
  for (std::size_t c = 0; c < f.size(); ++c) {
    // Projection onto span(c) via the normal equations on all generators.
    const Cone cone = f.cone(c);
    RatVector p(m.size());
    if (!cone.rays.empty()) {
      const RatMatrix b = RatMatrix::from_columns([&] {
        std::vector<RatVector> cols;
        for (const auto& r : cone.rays) cols.push_back(to_rational(r));
        return cols;
      }(), m.size());
      const RatMatrix bt_g = b.transposed() * ctx.gram;
      const auto coef = solve(bt_g * b, bt_g.apply(m));
      p = b.apply(*coef);
    }
    if (!cone.contains(p)) continue;
    RatVector d(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) d[i] = m[i] - p[i];
    const Rational dist = dot(d, ctx.gram.apply(d));
    if (!best || dist < *best) {
      best = dist;
      best_p = p;
    }
  }
  return best_p;
}

OracleReport retract_oracle_check(const RetractionContext& ctx, const std::vector<RatVector>& samples) {
  OracleReport rep;
  const Retraction ret(ctx);
  for (const auto& m : samples) {
    ++rep.samples;
    const RatVector a = ret(m);
    const RatVector b = nearest_point_oracle(ctx, m);
    if (a != b) rep.mismatches.push_back({m, a, b});
  }
  return rep;
}

std::vector<RatVector> random_rational_points(std::size_t dim, std::size_t count, std::uint64_t seed, long range, long max_den) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> num(-range, range);
  std::uniform_int_distribution<long> den(1, max_den);
  std::vector<RatVector> out;
  for (std::size_t k = 0; k < count; ++k) {
    RatVector v(dim);
    for (auto& x : v) {
      x = Rational(num(rng), den(rng));
      x.canonicalize();
    }
    out.push_back(std::move(v));
  }
  return out;
}

FiberDescriptor fiber_over(const FanifoldData& phi, std::size_t stratum, FiberMode mode, const DualComplex* dual) {
  if (stratum >= phi.strata.size()) throw std::out_of_range("fiber_over: unknown stratum");
  const Stratum& s = phi.strata[stratum];
  FiberDescriptor d;
  d.stratum = stratum;
  d.torus_rank = s.lattice_rank();
  if (mode != FiberMode::pi_underline) {
    d.base = "S";
    d.base_dim = s.dim;
    return d;
  }
  if (!dual) throw std::invalid_argument("fiber_over: the dual space is unavailable");
  d.base = "T*S";
  d.base_dim = 2 * s.dim;
  for (std::size_t c = 0; c < dual->cells.size(); ++c)
    if (dual->cells[c].stratum == stratum) d.dual_cell = c;
  if (!d.dual_cell) throw std::invalid_argument("fiber_over: stratum has no dual cell");
  return d;
}

double poisson_bracket(std::size_t n, const std::function<double(const std::vector<double>&)>& f,
                       const std::function<double(const std::vector<double>&)>& g, const std::vector<double>& x, double h) {
  auto partial = [&](const std::function<double(const std::vector<double>&)>& fn, std::size_t k) {
    std::vector<double> a = x, b = x;
    a[k] += h;
    b[k] -= h;
    return (fn(a) - fn(b)) / (2 * h);
  };
  double s = 0;
  for (std::size_t i = 0; i < n; ++i)
    s += partial(f, i) * partial(g, n + i) - partial(f, n + i) * partial(g, i);
  return s;
}

double poisson_check(std::size_t n, const std::vector<PhaseCoordinate>& components,
                     const std::vector<std::vector<double>>& samples, double h) {
  std::vector<std::function<double(const std::vector<double>&)>> fs;
  for (const auto& c : components) {
    if (c.index >= n) throw std::invalid_argument("poisson_check: coordinate index out of range");
    const std::size_t k = c.momentum ? n + c.index : c.index;
    fs.push_back([k](const std::vector<double>& x) { return x[k]; });
  }
  double worst = 0;
  for (const auto& x : samples) {
    if (x.size() != 2 * n) throw std::invalid_argument("poisson_check: sample has the wrong dimension");
    for (std::size_t i = 0; i < fs.size(); ++i)
      for (std::size_t j = i + 1; j < fs.size(); ++j) worst = std::max(worst, std::abs(poisson_bracket(n, fs[i], fs[j], x, h)));
  }
  return worst;
}

std::vector<std::vector<double>> random_phase_points(std::size_t n, std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<std::vector<double>> out(count, std::vector<double>(2 * n));
  for (auto& x : out)
    for (auto& v : x) v = u(rng);
  return out;
}

}  // namespace fanikit
