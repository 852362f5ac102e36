#pragma once

// Exact integer and rational linear algebra: Smith normal form, sublattices,
// quotient lattices and cokernels. No floating point anywhere in here.

#include "fanikit/matrix.hpp"

#include <optional>
#include <vector>

namespace fanikit {

// U * A * V = S with U, V unimodular, S diagonal, d_1 | d_2 | ... and d_i >= 0.
// The inverses are tracked alongside so callers never invert U or V.
struct SnfDecomposition {
  IntMatrix U;
  IntMatrix S;
  IntMatrix V;
  IntMatrix U_inv;
  IntMatrix V_inv;
  std::size_t rank = 0;

  std::vector<Integer> diagonal() const;
};

SnfDecomposition snf(const IntMatrix& a);

// Fraction-free Bareiss elimination. Throws on a non-square argument.
Integer determinant(const IntMatrix& a);
Rational determinant(const RatMatrix& a);

bool is_unimodular(const IntMatrix& a);

std::size_t rank(const RatMatrix& a);
std::size_t rank(const IntMatrix& a);

// Reduced row echelon form; `pivots` receives the pivot column of each
// nonzero row.
RatMatrix rref(RatMatrix a, std::vector<std::size_t>* pivots = nullptr);

// Some solution of a x = b, or nullopt when inconsistent.
std::optional<RatVector> solve(const RatMatrix& a, const RatVector& b);

// Basis (as a list of vectors) of the rational null space of a.
std::vector<RatVector> rational_kernel(const RatMatrix& a);

// Columns form a basis of the saturated lattice {x in Z^n : a x = 0}.
IntMatrix integer_kernel(const IntMatrix& a);

// Indices of a maximal linearly independent subset, greedy in input order.
std::vector<std::size_t> independent_subset(const std::vector<RatVector>& vectors);

// A sublattice of Z^n. The basis columns are linearly independent.
struct Sublattice {
  std::size_t ambient_rank = 0;
  IntMatrix basis;  // ambient_rank x rank
  bool saturated = false;

  std::size_t rank() const { return basis.cols(); }
  std::vector<IntVector> generators() const { return basis.column_list(); }
};

// Lattice generated by arbitrary (possibly dependent) generators.
Sublattice span(std::size_t ambient_rank, const std::vector<IntVector>& generators);

Sublattice saturate(const Sublattice& lattice);

// True when L equals its saturation (computed, ignores the flag).
bool is_saturated(const Sublattice& lattice);

// Membership of an integer vector in the lattice.
bool contains(const Sublattice& lattice, const IntVector& v);

// Equality of the underlying point sets.
bool same_lattice(const Sublattice& a, const Sublattice& b);

// Saturated annihilator {u in Z^n : <u, g> = 0 for every generator g}.
Sublattice annihilator(std::size_t ambient_rank, const std::vector<IntVector>& generators);

struct QuotientLattice {
  std::size_t rank = 0;
  IntMatrix projection;  // rank x ambient, surjective, kernel = L
  IntMatrix section;     // ambient x rank, projection * section = I
};

class UnsaturatedSublattice : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Z^n / L. In strict mode an unsaturated L is rejected, otherwise it is
// saturated first.
QuotientLattice quotient_lattice(std::size_t ambient_rank, const Sublattice& lattice, bool strict = false);

struct CokernelInfo {
  std::vector<Integer> invariant_factors;  // the factors > 1, divisibility chain
  std::size_t free_rank = 0;
  bool finite = true;
  Integer torsion_order = 1;  // product of invariant_factors
};

CokernelInfo cokernel(const IntMatrix& a);

}  // namespace fanikit
