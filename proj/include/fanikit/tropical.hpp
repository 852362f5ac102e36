#pragma once

// Regular triangulations of a reflexive-style polytope, the tropical
// polynomial they come from, and its corner locus as a cell complex.

#include "fanikit/fan.hpp"
#include "fanikit/polyhedron.hpp"
#include "fanikit/poset.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fanikit {

struct Triangulation {
  std::optional<LatticePolytope> delta_vee;  // conv(vertices) when absent
  std::vector<IntVector> vertices;
  std::vector<std::vector<std::size_t>> simplices;

  std::size_t rank() const { return vertices.empty() ? 0 : vertices.front().size(); }
  std::optional<std::size_t> origin() const;
  bool operator==(const Triangulation&) const = default;
};

struct TriangulationReport {
  std::vector<std::string> failures;
  bool valid() const { return failures.empty(); }
};

TriangulationReport validate_triangulation(const Triangulation& t);

struct PLFunction {
  std::vector<Rational> values;  // mu at each vertex of T
  bool operator==(const PLFunction&) const = default;
};

struct TropicalPolynomial {
  std::vector<IntVector> exponents;
  std::vector<Rational> weights;  // term k is <m, exponents[k]> + weights[k]

  static TropicalPolynomial from(const Triangulation& t, const PLFunction& mu);
  std::size_t rank() const { return exponents.empty() ? 0 : exponents.front().size(); }
};

struct TropEval {
  Rational value;
  std::vector<std::size_t> argmax;
};

TropEval trop_eval(const TropicalPolynomial& phi, const RatVector& m);

class DegenerateSimplex : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct AdaptedReport {
  std::vector<std::string> failures;  // one per offending wall
  bool adapted() const { return failures.empty(); }
};

// Strict convexity of mu across every interior wall.
AdaptedReport adapted_check(const Triangulation& t, const PLFunction& mu);

bool star_shaped_check(const Triangulation& t);

struct TropicalCell {
  std::vector<std::size_t> label;  // argmax vertex set, sorted
  std::size_t dim = 0;
  Polyhedron h;
  VRep shape;
  bool operator==(const TropicalCell&) const = default;
};

struct TropicalComplex {
  std::size_t ambient = 0;
  std::vector<TropicalCell> cells;
  // (i, j): cell i is a proper face of cell j.
  std::vector<std::pair<std::size_t, std::size_t>> incidence;

  Poset face_poset() const;
  std::optional<std::size_t> find(const std::vector<std::size_t>& label) const;
  // Indices of cells containing m.
  std::vector<std::size_t> cells_containing(const RatVector& m) const;
  bool operator==(const TropicalComplex&) const = default;
};

class AdaptednessFailure : public std::runtime_error {
 public:
  AdaptednessFailure(const std::string& what, AdaptedReport r) : std::runtime_error(what), report(std::move(r)) {}
  AdaptedReport report;
};

TropicalComplex dual_complex(const Triangulation& t, const PLFunction& mu);

struct ComplementRegion {
  std::size_t vertex = 0;
  RatVector witness;
};

std::vector<ComplementRegion> complement_components(const Triangulation& t, const PLFunction& mu);

struct PsiEmbeddingReport {
  std::vector<std::size_t> boundary_cells;
  std::vector<std::size_t> map;  // stratum of the sphere fanifold -> cell
  std::vector<std::string> mismatches;
  bool ok() const { return mismatches.empty(); }
};

// Matches strata of sphere_fanifold(fan) with the cells on the boundary of
// the origin's complement region. `assignment` replaces the label-derived map.
PsiEmbeddingReport psi_embedding_check(const Fan& fan, const Triangulation& t, const PLFunction& mu,
                                       const std::optional<std::vector<std::size_t>>& assignment = std::nullopt);

// Star triangulation of conv(rays) from the origin over the maximal cones.
Triangulation star_triangulation(const Fan& fan);

}  // namespace fanikit
