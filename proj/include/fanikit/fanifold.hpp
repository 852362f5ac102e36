#pragma once

// Combinatorial fanifolds: a stratum poset, a fan per stratum and quotient
// data on every exit arrow.

#include "fanikit/fan.hpp"

#include <optional>
#include <string>
#include <vector>

namespace fanikit {

struct BoundaryFacet {
  std::optional<std::size_t> stratum;  // nullopt: a piece of the ideal boundary
  bool in = true;
  bool operator==(const BoundaryFacet&) const = default;
};

struct Stratum {
  std::string id;
  std::size_t dim = 0;
  std::string label;
  bool interior = true;
  std::vector<BoundaryFacet> facets;
  Fan fan;  // lives in M_S = Z^{fan.rank()}
  // Optional trivialisation M_ambient -> M_S (rank M_S x ambient_rank).
  std::optional<IntMatrix> trivialization;
  // Optional PL realisation: vertices of the closure, for rendering.
  std::vector<RatVector> geometry;

  std::size_t lattice_rank() const { return fan.rank(); }
  bool operator==(const Stratum&) const = default;
};

struct ExitArrow {
  std::size_t src = 0;
  std::size_t dst = 0;
  RaySet cone;        // sigma in Sigma_src, by ray index
  IntMatrix quotient;  // M_src -> M_dst, rank M_dst x rank M_src
  bool operator==(const ExitArrow&) const = default;
};

struct FanifoldData {
  std::size_t dim = 0;
  std::size_t ambient_rank = 0;  // target of trivialisations, when present
  std::vector<Stratum> strata;
  std::vector<ExitArrow> arrows;

  std::optional<std::size_t> find_stratum(const std::string& id) const;
  std::optional<std::size_t> find_arrow(std::size_t src, std::size_t dst) const;
  // Strata T with an arrow T -> s, plus s itself.
  std::vector<std::size_t> closure(std::size_t s) const;
  // Element i is stratum i; i <= j when i == j or there is an arrow i -> j.
  Poset stratum_poset() const;
  bool operator==(const FanifoldData&) const = default;
};

struct FanifoldIssue {
  std::string kind;  // "arrow", "commutativity", "facet", "flag", "transitivity"
  std::vector<std::size_t> arrows;
  std::string detail;
};

struct FanifoldReport {
  std::vector<FanifoldIssue> issues;
  bool valid() const { return issues.empty(); }
  bool has(const std::string& kind) const;
};

FanifoldReport validate_fanifold(const FanifoldData& phi);

struct GluingInterface {
  std::size_t stratum = 0;
  std::vector<std::size_t> in_facets;  // the strata making up the inward boundary
};

struct GluingDiagram {
  std::size_t stage = 0;
  std::vector<std::size_t> pieces;  // all strata of dim <= stage
  std::vector<std::size_t> added;   // strata of dim == stage
  std::vector<GluingInterface> interfaces;
};

std::vector<GluingDiagram> filtration(const FanifoldData& phi);

// Throws std::logic_error when an interior flag disagrees with the facets.
bool is_closed(const FanifoldData& phi);

struct GluingPiece {
  std::size_t stratum = 0;
  RaySet cone;  // cone of Sigma_stratum pointing into the handle's stratum
};

struct HandleRecord {
  std::size_t stage = 0;
  std::size_t stratum = 0;
  std::size_t torus_rank = 0;
  std::vector<GluingPiece> gluing_locus;
};

std::vector<HandleRecord> handle_schedule(const FanifoldData& phi);

// Strata are the nonzero cones (restricted to `keep` when given, which must
// be closed under passing to larger cones); stratum dim = cone dim - 1.
FanifoldData sphere_fanifold(const Fan& fan, const std::vector<std::size_t>& keep = {});
FanifoldData sphere_fanifold(const StackyFan& fan);

// The fan itself as a fanifold: one stratum per cone.
FanifoldData fan_fanifold(const Fan& fan);

// One stratum, M = 0, fan {0}.
FanifoldData trivial_fanifold(std::size_t dim = 0);

// The closed unit square with vertices P1=(0,1), P2=(0,0), P3=(1,0), P4=(1,1).
FanifoldData square_fanifold();

struct ExitPosetIso {
  Poset faces;
  Poset quotients;
  std::vector<std::size_t> map;
  bool ok = false;
};

ExitPosetIso exit_poset_iso(const Fan& fan);

}  // namespace fanikit
