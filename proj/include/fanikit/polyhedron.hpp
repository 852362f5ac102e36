#pragma once

// H-described polyhedra with brute-force vertex/ray enumeration. Intended for
// the low-dimensional, few-constraint polyhedra that show up in fans, moment
// polytopes and tropical cells.

#include "fanikit/matrix.hpp"

#include <vector>

namespace fanikit {

// { x : eq_rows x = eq_rhs, ineq_rows x >= ineq_rhs }
struct Polyhedron {
  std::size_t dim = 0;
  std::vector<RatVector> eq_rows;
  RatVector eq_rhs;
  std::vector<RatVector> ineq_rows;
  RatVector ineq_rhs;

  explicit Polyhedron(std::size_t d = 0) : dim(d) {}
  void add_eq(RatVector row, Rational rhs);
  void add_ge(RatVector row, Rational rhs);
  bool contains(const RatVector& x) const;
  bool operator==(const Polyhedron&) const = default;
};

// Minkowski-Weyl data: conv(vertices) + cone(rays) + span(lineality).
// Vertices and rays describe the pointed part inside the orthogonal
// complement of the lineality space. Rays are primitive integer directions.
struct VRep {
  std::size_t ambient = 0;
  std::vector<RatVector> vertices;
  std::vector<RatVector> rays;
  std::vector<RatVector> lineality;

  bool empty() const { return vertices.empty(); }
  bool bounded() const { return rays.empty() && lineality.empty(); }
  // Affine dimension; -1 when empty.
  int dimension() const;
  // Barycentre of the vertices plus the sum of the rays: a relative interior point.
  RatVector relative_interior_point() const;
  bool operator==(const VRep&) const = default;
};

VRep enumerate(const Polyhedron& p);

// Equality of V-representations as point sets (vertex sets, ray directions
// and lineality span compared after projecting out the lineality space).
bool same_polyhedron(const VRep& a, const VRep& b);

// Membership tests against V-data, by exact LP.
bool contains_point(const VRep& v, const RatVector& x);
bool contains_direction(const VRep& v, const RatVector& d);

// Is the polyhedron a a subset of b?
bool contained_in(const VRep& a, const VRep& b);
bool contained_in(const VRep& a, const Polyhedron& b);

// Affine image x -> offset + linear * x.
VRep affine_image(const VRep& v, const RatMatrix& linear, const RatVector& offset);

}  // namespace fanikit
