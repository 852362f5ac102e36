#pragma once

#include "fanikit/dual_space.hpp"
#include "fanikit/fanifold.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace fanikit {

struct RetractionContext {
  Fan fan;
  RatMatrix gram;  // inner product; identity when left empty

  explicit RetractionContext(Fan f, RatMatrix g = RatMatrix());
};

// Retraction of M_R onto the support of the fan. Points of the support are
// fixed; a point outside is sent to its G-orthogonal foot p on the cone tau
// for which p lies in relint(tau) and m - p pairs non-positively with every
// ray of the star of tau. Lowest-dimensional tau wins, then lowest index;
// points captured by no cone go to the origin. Complete fans give the
// identity.
class Retraction {
 public:
  explicit Retraction(RetractionContext ctx);

  RatVector operator()(const RatVector& m) const;
  // Cone whose region captured m, nullopt when m is already in the support.
  std::optional<std::size_t> capturing_cone(const RatVector& m) const;
  const RetractionContext& context() const { return ctx_; }
  bool complete() const { return complete_; }

 private:
  RatVector foot(std::size_t cone, const RatVector& m) const;
  std::optional<std::size_t> capture(const RatVector& m) const;  // m outside the support
  Rational inner(const RatVector& a, const RatVector& b) const;

  RetractionContext ctx_;
  bool complete_ = false;
  std::vector<std::vector<IntVector>> star_rays_;
};

RatVector retract(const RetractionContext& ctx, const RatVector& m);

// Exact nearest point of the support in the G-norm: minimum over cones of
// the projection onto the span, kept only when it lands in the cone.
RatVector nearest_point_oracle(const RetractionContext& ctx, const RatVector& m);

struct OracleMismatch {
  RatVector point;
  RatVector retracted;
  RatVector nearest;
};

struct OracleReport {
  std::size_t samples = 0;
  std::vector<OracleMismatch> mismatches;
  bool ok() const { return mismatches.empty(); }
};

OracleReport retract_oracle_check(const RetractionContext& ctx, const std::vector<RatVector>& samples);

// Rational points with numerators in [-range, range] over denominators in [1, max_den].
std::vector<RatVector> random_rational_points(std::size_t dim, std::size_t count, std::uint64_t seed, long range = 10, long max_den = 7);

enum class FiberMode { pi, pi_bar, pi_underline };

struct FiberDescriptor {
  std::size_t stratum = 0;
  std::size_t torus_rank = 0;
  std::string base;  // "S" or "T*S"
  std::size_t base_dim = 0;
  std::optional<std::size_t> dual_cell;
};

FiberDescriptor fiber_over(const FanifoldData& phi, std::size_t stratum, FiberMode mode, const DualComplex* dual = nullptr);

// A coordinate function on R^{2n} with coordinates (q_1..q_n, p_1..p_n).
struct PhaseCoordinate {
  bool momentum = true;
  std::size_t index = 0;
};

// Largest |{f_i, f_j}| over distinct component pairs and all samples,
// computed with central differences of step h.
double poisson_check(std::size_t n, const std::vector<PhaseCoordinate>& components,
                     const std::vector<std::vector<double>>& samples, double h = 1e-4);

double poisson_bracket(std::size_t n, const std::function<double(const std::vector<double>&)>& f,
                       const std::function<double(const std::vector<double>&)>& g, const std::vector<double>& x, double h);

std::vector<std::vector<double>> random_phase_points(std::size_t n, std::size_t count, std::uint64_t seed);

}  // namespace fanikit
