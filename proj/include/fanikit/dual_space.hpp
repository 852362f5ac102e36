#pragma once

// Moment maps of projective toric varieties and the dual stratified space
// glued from the moment images of the normal fans at the 0-strata.

#include "fanikit/fanifold.hpp"

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fanikit {

std::vector<IntVector> lattice_points(const LatticePolytope& q);

struct MomentContext {
  LatticePolytope polytope;  // already scaled by l
  Integer scale = 1;
  std::vector<IntVector> points;

  MomentContext(const LatticePolytope& q, const Integer& l = 1);
};

// Exact moment map at a positive rational torus point.
RatVector algebraic_moment(const MomentContext& ctx, const RatVector& x);
// Floating moment map at any torus point with nonzero coordinates.
std::vector<double> algebraic_moment(const MomentContext& ctx, const std::vector<std::complex<double>>& x);

// A point of X_Sigma in the orbit O(sigma), sigma a cone of the normal fan
// of Q given by its rays, represented by a torus point whose coordinates
// along sigma are ignored.
struct OrbitPoint {
  std::vector<IntVector> cone;
  std::vector<std::complex<double>> x;
};

std::vector<double> mom_Q(const MomentContext& ctx, const OrbitPoint& p);

struct VeryAmpleVerdict {
  bool proven = false;
  Integer scale = 1;
  std::string text() const;  // "true" or "assumed(l=..)"
};

VeryAmpleVerdict very_ample_check(const LatticePolytope& q, const Integer& l = 1);

struct Identification {
  std::size_t stratum = 0;
  std::size_t from = 0;  // 0-stratum P
  std::size_t to = 0;    // 0-stratum P'
  IntMatrix matrix;      // automorphism of M_stratum
  bool operator==(const Identification&) const = default;
};

struct DualSpaceData {
  // Indexed like phi.strata; set for each 0-stratum.
  std::vector<std::optional<LatticePolytope>> polytopes;
  std::vector<Integer> scales;  // empty means all 1
  // Position of the dual point of `stratum`; when absent and geometry is
  // available, a point cell is placed at the barycentre of its stratum.
  struct Anchor {
    std::size_t stratum = 0;
    RatVector position;
    bool operator==(const Anchor&) const = default;
  };
  std::optional<Anchor> anchor;
  std::vector<Identification> identifications;  // missing pairs default to the identity
  bool operator==(const DualSpaceData&) const = default;
};

struct ConditionViIssue {
  std::string kind;  // "no vertex", "trivialization", "subfan", "identification", "cocycle", "gluing", "polytope"
  std::string detail;
};

struct ConditionViReport {
  std::vector<ConditionViIssue> issues;
  std::vector<VeryAmpleVerdict> very_ample;
  bool pass() const { return issues.empty(); }
  bool has(const std::string& kind) const;
};

ConditionViReport condition_vi_check(const FanifoldData& phi, const DualSpaceData& data);

struct DualCell {
  std::size_t stratum = 0;
  std::string label;
  std::size_t dim = 0;
  VRep shape;
  bool operator==(const DualCell&) const = default;
};

struct DualComplex {
  std::size_t ambient = 0;
  std::size_t dim = 0;
  std::vector<DualCell> cells;
  // (i, j): cell i lies in the closure of cell j, i != j.
  std::vector<std::pair<std::size_t, std::size_t>> incidence;
  std::vector<std::optional<RatVector>> translations;  // per stratum, set on 0-strata
  bool operator==(const DualComplex&) const = default;
};

class ConditionViFailure : public std::runtime_error {
 public:
  ConditionViFailure(const std::string& what, ConditionViReport r) : std::runtime_error(what), report(std::move(r)) {}
  ConditionViReport report;
};

DualComplex dual_space(const FanifoldData& phi, const DualSpaceData& data);

// Stage k keeps the cells of dimension >= dim - k.
std::vector<std::vector<std::size_t>> dual_filtration(const DualComplex& psi);

}  // namespace fanikit
