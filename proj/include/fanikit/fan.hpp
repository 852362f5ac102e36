#pragma once

#include "fanikit/lattice.hpp"
#include "fanikit/polyhedron.hpp"
#include "fanikit/poset.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace fanikit {

using RaySet = std::vector<std::size_t>;  // sorted ray indices

struct Cone {
  std::size_t ambient = 0;
  std::vector<IntVector> rays;

  std::size_t dim() const;
  bool contains(const RatVector& x) const;
  bool contains_in_relint(const RatVector& x) const;
};

// Index subsets of `generators` that cut out the faces of their conic hull,
// the whole set and the empty set included. Assumes a strongly convex cone
// with irredundant generators.
std::vector<RaySet> cone_faces(std::size_t ambient, const std::vector<IntVector>& generators);

// A collection of cones over a shared ray list. The collection is stored
// exactly as given; validate_fan audits it. Face incidence is computed
// eagerly on construction.
class Fan {
 public:
  Fan() = default;
  Fan(std::size_t rank, std::vector<IntVector> rays, std::vector<RaySet> cones);

  // Closes the given cones under faces and orders the result by dimension.
  static Fan generated_by(std::size_t rank, std::vector<IntVector> rays, const std::vector<RaySet>& cones);
  // The fan {0} in Z^rank.
  static Fan trivial(std::size_t rank);

  std::size_t rank() const { return rank_; }
  const std::vector<IntVector>& rays() const { return rays_; }
  const std::vector<RaySet>& cones() const { return cones_; }
  std::size_t size() const { return cones_.size(); }

  Cone cone(std::size_t i) const;
  std::size_t cone_dim(std::size_t i) const { return dims_.at(i); }
  std::optional<std::size_t> find(const RaySet& rays) const;
  std::optional<std::size_t> zero_cone() const { return find({}); }
  // Index sets (as ray subsets) of the geometric faces of cone i.
  const std::vector<RaySet>& face_sets(std::size_t i) const { return face_sets_.at(i); }
  // Is cone i a face of cone j?
  bool is_face(std::size_t i, std::size_t j) const;
  std::vector<std::size_t> maximal_cones() const;
  // Some cone whose support contains x, preferring the smallest.
  std::optional<std::size_t> locate(const RatVector& x) const;
  bool support_contains(const RatVector& x) const;

  friend bool operator==(const Fan& a, const Fan& b);

 private:
  std::size_t rank_ = 0;
  std::vector<IntVector> rays_;
  std::vector<RaySet> cones_;
  std::vector<std::size_t> dims_;
  std::vector<std::vector<RaySet>> face_sets_;
  std::map<RaySet, std::size_t> index_;
};

// Equality as sets of cones, independent of ray and cone ordering.
bool same_fan(const Fan& a, const Fan& b);

struct FanViolation {
  std::string kind;  // "non-primitive ray", "not strongly convex", "redundant generator",
                     // "missing face", "overlapping interiors", "bad ray index", "zero ray"
  std::vector<std::size_t> cones;
  std::string detail;
};

struct FanReport {
  std::vector<FanViolation> violations;
  bool valid() const { return violations.empty(); }
  bool has(const std::string& kind) const;
};

FanReport validate_fan(const Fan& fan);

// Element i is cone i; i <= j when cone i is a face of cone j.
Poset face_poset(const Fan& fan);

struct QuotientFan {
  Fan fan;
  QuotientLattice lattice;
  // For each cone of the source fan: the index of its image if it contains sigma.
  std::vector<std::optional<std::size_t>> cone_map;
};

QuotientFan quotient_fan(const Fan& fan, std::size_t sigma);

struct LatticePolytope {
  std::size_t ambient = 0;
  std::vector<RatVector> vertices;

  // Convex hull of the points; keeps only extreme points.
  static LatticePolytope hull(std::size_t ambient, const std::vector<RatVector>& points);
  bool full_dimensional() const;
  bool is_lattice() const;
  LatticePolytope scaled(const Rational& l) const;
  bool operator==(const LatticePolytope&) const = default;
};

// Facet {x : <normal, x> >= rhs}, normal primitive integer, inner pointing.
struct Facet {
  IntVector normal;
  Rational rhs;
  std::vector<std::size_t> vertices;
};

std::vector<Facet> polytope_facets(const LatticePolytope& q);

// Inner normal fan: the maximal cone at vertex v consists of the functionals
// minimised over Q at v.
Fan normal_fan(const LatticePolytope& q);

bool is_complete(const Fan& fan);

// {u : <u, v> >= 0 for all v in sigma} as generators plus lineality.
struct DualCone {
  std::vector<IntVector> rays;
  std::vector<IntVector> lineality;
  Polyhedron inequalities;
};

DualCone dual_cone(const Cone& sigma);

struct StackyFan {
  IntMatrix beta;  // rank(fan) x rank(fan_tilde)
  Fan fan_tilde;
  Fan fan;
  std::vector<std::size_t> cone_bijection;  // cone of fan_tilde -> cone of fan
  bool operator==(const StackyFan&) const = default;
};

struct StackyReport {
  bool finite_cokernel = false;
  CokernelInfo cokernel;
  std::vector<std::string> failures;
  bool valid() const { return failures.empty(); }
};

StackyReport validate_stacky(const StackyFan& sf);

Fan affine_space_fan(std::size_t n);      // the positive orthant
Fan projective_space_fan(std::size_t n);  // rays e_1..e_n, -sum e_i

}  // namespace fanikit
