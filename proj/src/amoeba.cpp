#include "fanikit/amoeba.hpp"

#include <Eigen/Dense>
#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace fanikit {

void LaurentFamily::validate() const {
  if (!(t > 1.0) || !std::isfinite(t)) throw std::invalid_argument("LaurentFamily: t must exceed 1");
  if (terms.size() < 2) throw std::invalid_argument("LaurentFamily: at least two terms required");
  const std::size_t n = rank();
  if (n == 0) throw std::invalid_argument("LaurentFamily: exponents must be nonempty");
  for (const auto& term : terms)
    if (term.alpha.size() != n) throw std::invalid_argument("LaurentFamily: exponent rank mismatch");
}

LaurentFamily LaurentFamily::at(double t_new) const {
  LaurentFamily f = *this;
  f.t = t_new;
  return f;
}

namespace {

// Neumaier summation, one accumulator per real component.
struct CompensatedSum {
  double sum = 0, carry = 0;
  void add(double x) {
    const double s = sum + x;
    if (std::abs(sum) >= std::abs(x))
      carry += (sum - s) + x;
    else
      carry += (x - s) + sum;
    sum = s;
  }
  double value() const { return sum + carry; }
};

Complex monomial(const std::vector<Complex>& z, const IntVector& alpha, std::size_t skip = SIZE_MAX) {
  Complex v = 1.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (i == skip) continue;
    const long e = alpha[i].get_si();
    if (e != 0) v *= std::pow(z[i], static_cast<int>(e));
  }
  return v;
}

struct SliceResult {
  std::vector<SamplePoint> points;
  bool skipped = false;
  std::size_t zero_roots = 0;
  std::size_t rejected = 0;
};

std::vector<Complex> coordinate_grid(const LaurentFamily& fam, const SliceGrid& grid) {
  std::vector<Complex> out;
  const double lt = std::log(fam.t);
  for (std::size_t i = 0; i < grid.radii; ++i) {
    const double s = grid.radii == 1 ? 0.0 : -grid.log_span + 2.0 * grid.log_span * static_cast<double>(i) / static_cast<double>(grid.radii - 1);
    const double r = std::exp(s * lt);
    for (std::size_t j = 0; j < grid.phases; ++j) out.push_back(std::polar(r, 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(grid.phases)));
  }
  return out;
}

std::vector<Complex> polynomial_roots(const std::vector<Complex>& coef) {
  // coef[k] multiplies w^k; the leading coefficient is nonzero.
  const std::size_t d = coef.size() - 1;
  if (d == 0) return {};
  if (d == 1) return {-coef[0] / coef[1]};
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (std::size_t i = 1; i < d; ++i) companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - 1)) = 1.0;
  for (std::size_t i = 0; i < d; ++i) companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(d - 1)) = -coef[i] / coef[d];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  std::vector<Complex> roots;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) roots.push_back(solver.eigenvalues()(i));
  return roots;
}

SliceResult solve_slice(const LaurentFamily& fam, const std::vector<Complex>& fixed, double tolerance) {
  SliceResult out;
  const std::size_t last = fam.rank() - 1;
  std::vector<Complex> z = fixed;
  z.push_back(0.0);
  // Group terms by the exponent of the free coordinate.
  std::map<long, std::pair<CompensatedSum, CompensatedSum>> groups;
  for (const auto& term : fam.terms) {
    const Complex v = term.c * std::pow(fam.t, -term.mu.get_d()) * monomial(z, term.alpha, last);
    auto& g = groups[term.alpha[last].get_si()];
    g.first.add(v.real());
    g.second.add(v.imag());
  }
  const long emin = groups.begin()->first, emax = groups.rbegin()->first;
  std::vector<Complex> coef(static_cast<std::size_t>(emax - emin + 1), 0.0);
  double scale = 0;
  for (const auto& [e, g] : groups) {
    coef[static_cast<std::size_t>(e - emin)] = {g.first.value(), g.second.value()};
    scale = std::max(scale, std::abs(coef[static_cast<std::size_t>(e - emin)]));
  }
  const double cut = 1e-12 * scale;
  if (scale == 0) {
    out.skipped = true;
    return out;
  }
  while (std::abs(coef.back()) <= cut) coef.pop_back();
  std::size_t low = 0;
  while (std::abs(coef[low]) <= cut) ++low;
  out.zero_roots = low;
  coef.erase(coef.begin(), coef.begin() + static_cast<std::ptrdiff_t>(low));
  const auto p = [&](Complex w) {
    Complex v = 0, dv = 0;
    for (std::size_t k = coef.size(); k-- > 0;) {
      dv = dv * w + v;
      v = v * w + coef[k];
    }
    return std::make_pair(v, dv);
  };
  for (Complex w : polynomial_roots(coef)) {
    for (int step = 0; step < 2; ++step) {
      const auto [v, dv] = p(w);
      if (dv != 0.0) w -= v / dv;
    }
    if (w == 0.0 || !std::isfinite(w.real()) || !std::isfinite(w.imag())) {
      ++out.zero_roots;
      continue;
    }
    z[last] = w;
    if (!(std::abs(eval_W(fam, z)) < tolerance)) {
      ++out.rejected;
      continue;
    }
    SamplePoint s;
    s.z = z;
    for (const auto& x : z) s.log.push_back(std::log(std::abs(x)));
    out.points.push_back(std::move(s));
  }
  if (out.points.empty()) out.skipped = true;
  return out;
}

std::vector<std::vector<Complex>> slice_list(const LaurentFamily& fam, const SliceGrid& grid) {
  fam.validate();
  if (fam.rank() != 2 && fam.rank() != 3) throw std::invalid_argument("sampler: only ranks 2 and 3 are supported");
  if (grid.radii == 0 || grid.phases == 0 || !(grid.log_span > 0)) throw std::invalid_argument("sampler: empty slice grid");
  const auto axis = coordinate_grid(fam, grid);
  std::vector<std::vector<Complex>> slices;
  if (fam.rank() == 2) {
    for (const auto& a : axis) slices.push_back({a});
  } else {
    for (const auto& a : axis)
      for (const auto& b : axis) slices.push_back({a, b});
  }
  return slices;
}

SampleCloud merge(const LaurentFamily& fam, const std::vector<SliceResult>& results) {
  SampleCloud cloud;
  cloud.rank = fam.rank();
  cloud.log_t = std::log(fam.t);
  cloud.slices = results.size();
  for (const auto& r : results) {
    cloud.points.insert(cloud.points.end(), r.points.begin(), r.points.end());
    cloud.skipped_slices += r.skipped ? 1 : 0;
    cloud.zero_roots += r.zero_roots;
    cloud.rejected_roots += r.rejected;
  }
  return cloud;
}

}  // namespace

Complex eval_W(const LaurentFamily& fam, const std::vector<Complex>& z) {
  if (z.size() != fam.rank()) throw std::invalid_argument("eval_W: dimension mismatch");
  for (const auto& x : z)
    if (x == 0.0) throw std::invalid_argument("eval_W: zero coordinate");
  CompensatedSum re, im;
  for (const auto& term : fam.terms) {
    const Complex v = term.c * std::pow(fam.t, -term.mu.get_d()) * monomial(z, term.alpha);
    re.add(v.real());
    im.add(v.imag());
  }
  return {re.value(), im.value()};
}

int sampler_threads() {
  if (const char* env = std::getenv("FANIKIT_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return omp_get_max_threads();
}

SampleCloud sample_serial(const LaurentFamily& fam, const SliceGrid& grid, double tolerance) {
  const auto slices = slice_list(fam, grid);
  std::vector<SliceResult> results(slices.size());
  for (std::size_t i = 0; i < slices.size(); ++i) results[i] = solve_slice(fam, slices[i], tolerance);
  return merge(fam, results);
}

SampleCloud sample_parallel(const LaurentFamily& fam, const SliceGrid& grid, double tolerance) {
  const auto slices = slice_list(fam, grid);
  std::vector<SliceResult> results(slices.size());
  const auto count = static_cast<std::ptrdiff_t>(slices.size());
#pragma omp parallel for schedule(dynamic, 16) num_threads(sampler_threads())
  for (std::ptrdiff_t i = 0; i < count; ++i) results[static_cast<std::size_t>(i)] = solve_slice(fam, slices[static_cast<std::size_t>(i)], tolerance);
  return merge(fam, results);
}

SampleCloud sample_curve(const LaurentFamily& fam, const SliceGrid& grid, double tolerance) {
  return sample_parallel(fam, grid, tolerance);
}

std::string cloud_csv(const SampleCloud& cloud) {
  std::ostringstream out;
  for (std::size_t i = 1; i <= cloud.rank; ++i) out << "z" << i << "re,z" << i << "im,";
  for (std::size_t i = 1; i <= cloud.rank; ++i) out << "log" << i << (i == cloud.rank ? "\n" : ",");
  char buf[64];
  auto put = [&](double x, bool last) {
    std::snprintf(buf, sizeof buf, "%.17g", x);
    out << buf << (last ? "\n" : ",");
  };
  for (const auto& p : cloud.points) {
    for (const auto& z : p.z) {
      put(z.real(), false);
      put(z.imag(), false);
    }
    for (std::size_t i = 0; i < p.log.size(); ++i) put(p.log[i], i + 1 == p.log.size());
  }
  return out.str();
}

ComplexProjector::ComplexProjector(const TropicalComplex& pi) : ambient_(pi.ambient) {
  for (const auto& cell : pi.cells) {
    if (cell.shape.empty()) continue;
    Piece piece;
    const auto& v0 = cell.shape.vertices.front();
    for (const auto& x : v0) piece.base.push_back(x.get_d());
    std::vector<std::vector<double>> dirs;
    for (std::size_t k = 1; k < cell.shape.vertices.size(); ++k) {
      std::vector<double> d;
      for (std::size_t c = 0; c < ambient_; ++c) d.push_back(Rational(cell.shape.vertices[k][c] - v0[c]).get_d());
      dirs.push_back(d);
    }
    for (const auto* group : {&cell.shape.rays, &cell.shape.lineality})
      for (const auto& r : *group) {
        std::vector<double> d;
        for (const auto& x : r) d.push_back(x.get_d());
        dirs.push_back(d);
      }
    for (auto d : dirs) {
      for (const auto& b : piece.basis) {
        double proj = 0;
        for (std::size_t c = 0; c < ambient_; ++c) proj += d[c] * b[c];
        for (std::size_t c = 0; c < ambient_; ++c) d[c] -= proj * b[c];
      }
      double norm = 0;
      for (const auto& x : d) norm += x * x;
      norm = std::sqrt(norm);
      if (norm < 1e-12) continue;
      for (auto& x : d) x /= norm;
      piece.basis.push_back(d);
    }
    for (std::size_t r = 0; r < cell.h.ineq_rows.size(); ++r) {
      std::vector<double> row;
      for (const auto& x : cell.h.ineq_rows[r]) row.push_back(x.get_d());
      piece.rows.push_back(row);
      piece.rhs.push_back(cell.h.ineq_rhs[r].get_d());
    }
    pieces_.push_back(std::move(piece));
  }
}

double ComplexProjector::distance(const std::vector<double>& x) const {
  if (x.size() != ambient_) throw std::invalid_argument("distance: dimension mismatch");
  double best = INFINITY;
  for (const auto& piece : pieces_) {
    std::vector<double> p = piece.base;
    for (const auto& b : piece.basis) {
      double proj = 0;
      for (std::size_t c = 0; c < ambient_; ++c) proj += (x[c] - piece.base[c]) * b[c];
      for (std::size_t c = 0; c < ambient_; ++c) p[c] += proj * b[c];
    }
    bool inside = true;
    for (std::size_t r = 0; r < piece.rows.size() && inside; ++r) {
      double lhs = 0, mag = std::abs(piece.rhs[r]);
      for (std::size_t c = 0; c < ambient_; ++c) {
        lhs += piece.rows[r][c] * p[c];
        mag += std::abs(piece.rows[r][c] * p[c]);
      }
      inside = lhs >= piece.rhs[r] - 1e-9 * (1 + mag);
    }
    if (!inside) continue;
    double d = 0;
    for (std::size_t c = 0; c < ambient_; ++c) d += (x[c] - p[c]) * (x[c] - p[c]);
    best = std::min(best, std::sqrt(d));
  }
  return best;
}

DistanceReport rescaled_distance(const SampleCloud& cloud, const TropicalComplex& pi) {
  if (cloud.points.empty()) throw std::invalid_argument("rescaled_distance: empty cloud");
  if (cloud.rank != pi.ambient) throw std::invalid_argument("rescaled_distance: rank mismatch");
  const ComplexProjector proj(pi);
  DistanceReport rep;
  rep.samples = cloud.points.size();
  double total = 0;
  std::vector<double> x(cloud.rank);
  for (const auto& p : cloud.points) {
    for (std::size_t c = 0; c < cloud.rank; ++c) x[c] = p.log[c] / cloud.log_t;
    const double d = proj.distance(x);
    rep.sup = std::max(rep.sup, d);
    total += d;
  }
  rep.mean = total / static_cast<double>(rep.samples);
  return rep;
}

ConvergenceReport convergence_report(const LaurentFamily& fam, const TropicalComplex& pi, const std::vector<double>& ts,
                                     const SliceGrid& grid) {
  if (fam.rank() != pi.ambient) throw std::invalid_argument("convergence_report: rank mismatch");
  if (ts.empty()) throw std::invalid_argument("convergence_report: no parameters");
  for (std::size_t i = 1; i < ts.size(); ++i)
    if (!(ts[i] > ts[i - 1])) throw std::invalid_argument("convergence_report: t list must increase");
  ConvergenceReport rep;
  for (const double t : ts) {
    const SampleCloud cloud = sample_curve(fam.at(t), grid);
    ConvergenceRow row;
    row.t = t;
    row.distance = rescaled_distance(cloud, pi);
    row.rejected = cloud.rejected_roots;
    if (!rep.rows.empty()) {
      const auto& prev = rep.rows.back().distance;
      if (!(row.distance.sup < prev.sup)) rep.sup_decreasing = false;
      if (row.distance.mean > 1.1 * prev.mean) rep.mean_trend = false;
    }
    rep.rows.push_back(row);
  }
  return rep;
}

}  // namespace fanikit
