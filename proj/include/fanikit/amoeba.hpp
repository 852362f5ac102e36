#pragma once

// Sampling of the hypersurface W_t = 0 in the complex torus, its amoeba, and
// the distance of the rescaled amoeba to a tropical complex.

#include "fanikit/tropical.hpp"

#include <complex>
#include <string>
#include <vector>

namespace fanikit {

using Complex = std::complex<double>;

struct LaurentTerm {
  Complex c;
  IntVector alpha;
  Rational mu;
  bool operator==(const LaurentTerm&) const = default;
};

// W_t(z) = sum_k c_k t^{-mu_k} z^{alpha_k}.
struct LaurentFamily {
  std::vector<LaurentTerm> terms;
  double t = 10.0;

  std::size_t rank() const { return terms.empty() ? 0 : terms.front().alpha.size(); }
  void validate() const;  // throws std::invalid_argument
  LaurentFamily at(double t_new) const;
  bool operator==(const LaurentFamily&) const = default;
};

Complex eval_W(const LaurentFamily& fam, const std::vector<Complex>& z);

// Each sliced coordinate runs over radii t^s, s uniform in [-log_span, log_span],
// times phases 2 pi j / phases.
struct SliceGrid {
  std::size_t radii = 64;
  std::size_t phases = 64;
  double log_span = 2.0;
};

struct SamplePoint {
  std::vector<Complex> z;
  std::vector<double> log;  // log |z_i|
};

struct SampleCloud {
  std::size_t rank = 0;
  double log_t = 0;
  std::vector<SamplePoint> points;
  std::size_t slices = 0;
  std::size_t skipped_slices = 0;   // identically zero or without usable roots
  std::size_t zero_roots = 0;       // roots at z = 0, not in the torus
  std::size_t rejected_roots = 0;   // residual above tolerance
};

// Slices the first rank-1 coordinates and solves for the last one. Rank 2 and
// rank 3 only.
SampleCloud sample_serial(const LaurentFamily& fam, const SliceGrid& grid = {}, double tolerance = 1e-8);
// Same slices spread over OpenMP threads; identical output.
SampleCloud sample_parallel(const LaurentFamily& fam, const SliceGrid& grid = {}, double tolerance = 1e-8);
SampleCloud sample_curve(const LaurentFamily& fam, const SliceGrid& grid = {}, double tolerance = 1e-8);

// FANIKIT_THREADS when set and positive, else the OpenMP default.
int sampler_threads();

std::string cloud_csv(const SampleCloud& cloud);

// Euclidean distance from x to the union of the closed cells.
class ComplexProjector {
 public:
  explicit ComplexProjector(const TropicalComplex& pi);
  double distance(const std::vector<double>& x) const;

 private:
  struct Piece {
    std::vector<double> base;
    std::vector<std::vector<double>> basis;  // orthonormal
    std::vector<std::vector<double>> rows;
    std::vector<double> rhs;
  };
  std::size_t ambient_ = 0;
  std::vector<Piece> pieces_;
};

struct DistanceReport {
  std::size_t samples = 0;
  double sup = 0;
  double mean = 0;
};

DistanceReport rescaled_distance(const SampleCloud& cloud, const TropicalComplex& pi);

struct ConvergenceRow {
  double t = 0;
  DistanceReport distance;
  std::size_t rejected = 0;
};

struct ConvergenceReport {
  std::vector<ConvergenceRow> rows;
  bool sup_decreasing = true;
  bool mean_trend = true;  // each mean at most 10% above the previous one
  bool converging() const { return sup_decreasing && mean_trend; }
};

ConvergenceReport convergence_report(const LaurentFamily& fam, const TropicalComplex& pi, const std::vector<double>& ts,
                                     const SliceGrid& grid = {});

}  // namespace fanikit
