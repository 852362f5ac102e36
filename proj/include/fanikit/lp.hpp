#pragma once

#include "fanikit/rational.hpp"

#include <optional>
#include <vector>

namespace fanikit {

// A system of linear equalities and ">=" inequalities over Q. Variables are
// free unless flagged non-negative.
struct LinearSystem {
  std::size_t num_vars = 0;
  std::vector<RatVector> eq_rows;
  RatVector eq_rhs;
  std::vector<RatVector> ge_rows;
  RatVector ge_rhs;
  std::vector<bool> nonneg;  // empty means all free

  explicit LinearSystem(std::size_t n = 0) : num_vars(n) {}

  void add_eq(RatVector row, Rational rhs);
  void add_ge(RatVector row, Rational rhs);
  void set_nonneg(std::size_t var);
};

// Exact two-phase simplex (phase one only) with Bland's rule.
// Returns a feasible point or nullopt.
std::optional<RatVector> find_feasible_point(const LinearSystem& system);

// Minimises c.x over the system; nullopt when infeasible, throws
// std::domain_error when unbounded.
std::optional<RatVector> minimize(const LinearSystem& system, const RatVector& cost);

}  // namespace fanikit
