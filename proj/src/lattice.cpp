#include "fanikit/lattice.hpp"

#include <algorithm>
#include <utility>

namespace fanikit {

namespace {

// Row/column operations applied to the working matrix together with the
// transforms and their inverses.
class SnfWorker {
 public:
  explicit SnfWorker(const IntMatrix& a)
      : a_(a),
        u_(IntMatrix::identity(a.rows())),
        u_inv_(IntMatrix::identity(a.rows())),
        v_(IntMatrix::identity(a.cols())),
        v_inv_(IntMatrix::identity(a.cols())) {}

  // row i += c * row j
  void add_row(std::size_t i, std::size_t j, const Integer& c) {
    for (std::size_t k = 0; k < a_.cols(); ++k) a_(i, k) += c * a_(j, k);
    for (std::size_t k = 0; k < u_.cols(); ++k) u_(i, k) += c * u_(j, k);
    for (std::size_t k = 0; k < u_inv_.rows(); ++k) u_inv_(k, j) -= c * u_inv_(k, i);
  }

  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < a_.cols(); ++k) std::swap(a_(i, k), a_(j, k));
    for (std::size_t k = 0; k < u_.cols(); ++k) std::swap(u_(i, k), u_(j, k));
    for (std::size_t k = 0; k < u_inv_.rows(); ++k) std::swap(u_inv_(k, i), u_inv_(k, j));
  }

  void negate_row(std::size_t i) {
    for (std::size_t k = 0; k < a_.cols(); ++k) a_(i, k) = -a_(i, k);
    for (std::size_t k = 0; k < u_.cols(); ++k) u_(i, k) = -u_(i, k);
    for (std::size_t k = 0; k < u_inv_.rows(); ++k) u_inv_(k, i) = -u_inv_(k, i);
  }

  // col i += c * col j
  void add_col(std::size_t i, std::size_t j, const Integer& c) {
    for (std::size_t k = 0; k < a_.rows(); ++k) a_(k, i) += c * a_(k, j);
    for (std::size_t k = 0; k < v_.rows(); ++k) v_(k, i) += c * v_(k, j);
    for (std::size_t k = 0; k < v_inv_.cols(); ++k) v_inv_(j, k) -= c * v_inv_(i, k);
  }

  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < a_.rows(); ++k) std::swap(a_(k, i), a_(k, j));
    for (std::size_t k = 0; k < v_.rows(); ++k) std::swap(v_(k, i), v_(k, j));
    for (std::size_t k = 0; k < v_inv_.cols(); ++k) std::swap(v_inv_(i, k), v_inv_(j, k));
  }

  SnfDecomposition run() {
    const std::size_t m = a_.rows();
    const std::size_t n = a_.cols();
    std::size_t t = 0;
    for (; t < std::min(m, n); ++t) {
      if (!move_smallest_to(t)) break;
      while (true) {
        bool clean = true;
        for (std::size_t i = t + 1; i < m; ++i) {
          if (a_(i, t) == 0) continue;
          add_row(i, t, -floor_quotient(a_(i, t), a_(t, t)));
          if (a_(i, t) != 0) clean = false;
        }
        for (std::size_t j = t + 1; j < n; ++j) {
          if (a_(t, j) == 0) continue;
          add_col(j, t, -floor_quotient(a_(t, j), a_(t, t)));
          if (a_(t, j) != 0) clean = false;
        }
        if (!clean) {
          move_smallest_in_cross(t);
          continue;
        }
        // Enforce the divisibility chain on the remaining block.
        bool divisible = true;
        for (std::size_t i = t + 1; i < m && divisible; ++i)
          for (std::size_t j = t + 1; j < n; ++j) {
            if (!mpz_divisible_p(a_(i, j).get_mpz_t(), a_(t, t).get_mpz_t())) {
              add_row(t, i, 1);
              divisible = false;
              break;
            }
          }
        if (divisible) break;
      }
      if (a_(t, t) < 0) negate_row(t);
    }
    SnfDecomposition out;
    out.U = std::move(u_);
    out.S = std::move(a_);
    out.V = std::move(v_);
    out.U_inv = std::move(u_inv_);
    out.V_inv = std::move(v_inv_);
    out.rank = t;
    return out;
  }

 private:
  static Integer floor_quotient(const Integer& a, const Integer& b) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
  }

  bool move_smallest_to(std::size_t t) {
    bool found = false;
    std::size_t bi = t, bj = t;
    Integer best;
    for (std::size_t i = t; i < a_.rows(); ++i)
      for (std::size_t j = t; j < a_.cols(); ++j) {
        if (a_(i, j) == 0) continue;
        Integer mag = abs(a_(i, j));
        if (!found || mag < best) {
          found = true;
          best = mag;
          bi = i;
          bj = j;
        }
      }
    if (!found) return false;
    swap_rows(t, bi);
    swap_cols(t, bj);
    return true;
  }

  void move_smallest_in_cross(std::size_t t) {
    std::size_t bi = t, bj = t;
    Integer best = abs(a_(t, t));
    for (std::size_t i = t + 1; i < a_.rows(); ++i) {
      if (a_(i, t) != 0 && abs(a_(i, t)) < best) {
        best = abs(a_(i, t));
        bi = i;
        bj = t;
      }
    }
    for (std::size_t j = t + 1; j < a_.cols(); ++j) {
      if (a_(t, j) != 0 && abs(a_(t, j)) < best) {
        best = abs(a_(t, j));
        bi = t;
        bj = j;
      }
    }
    swap_rows(t, bi);
    swap_cols(t, bj);
  }

  IntMatrix a_, u_, u_inv_, v_, v_inv_;
};

}  // namespace

std::vector<Integer> SnfDecomposition::diagonal() const {
  std::vector<Integer> d;
  for (std::size_t i = 0; i < std::min(S.rows(), S.cols()); ++i) d.push_back(S(i, i));
  return d;
}

SnfDecomposition snf(const IntMatrix& a) { return SnfWorker(a).run(); }

Integer determinant(const IntMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("determinant: non-square matrix");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  IntMatrix m = a;
  int sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer num = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(m(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

Rational determinant(const RatMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("determinant: non-square matrix");
  RatMatrix m = a;
  const std::size_t n = m.rows();
  Rational det = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && m(p, k) == 0) ++p;
    if (p == n) return 0;
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(p, j));
      det = -det;
    }
    det *= m(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      if (m(i, k) == 0) continue;
      Rational f = m(i, k) / m(k, k);
      for (std::size_t j = k; j < n; ++j) m(i, j) -= f * m(k, j);
    }
  }
  return det;
}

bool is_unimodular(const IntMatrix& a) {
  if (a.rows() != a.cols()) return false;
  return abs(determinant(a)) == 1;
}

RatMatrix rref(RatMatrix a, std::vector<std::size_t>* pivots) {
  std::size_t row = 0;
  if (pivots) pivots->clear();
  for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
    std::size_t p = row;
    while (p < a.rows() && a(p, col) == 0) ++p;
    if (p == a.rows()) continue;
    if (p != row)
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(row, j), a(p, j));
    const Rational inv = 1 / a(row, col);
    for (std::size_t j = 0; j < a.cols(); ++j) a(row, j) *= inv;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == row || a(i, col) == 0) continue;
      const Rational f = a(i, col);
      for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) -= f * a(row, j);
    }
    if (pivots) pivots->push_back(col);
    ++row;
  }
  return a;
}

std::size_t rank(const RatMatrix& a) {
  std::vector<std::size_t> piv;
  rref(a, &piv);
  return piv.size();
}

std::size_t rank(const IntMatrix& a) { return snf(a).rank; }

std::optional<RatVector> solve(const RatMatrix& a, const RatVector& b) {
  if (b.size() != a.rows()) throw std::invalid_argument("solve: dimension mismatch");
  RatMatrix aug(a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  std::vector<std::size_t> piv;
  RatMatrix r = rref(aug, &piv);
  RatVector x(a.cols());
  for (std::size_t k = 0; k < piv.size(); ++k) {
    if (piv[k] == a.cols()) return std::nullopt;
    x[piv[k]] = r(k, a.cols());
  }
  return x;
}

std::vector<RatVector> rational_kernel(const RatMatrix& a) {
  std::vector<std::size_t> piv;
  RatMatrix r = rref(a, &piv);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto p : piv) is_pivot[p] = true;
  std::vector<RatVector> basis;
  for (std::size_t f = 0; f < a.cols(); ++f) {
    if (is_pivot[f]) continue;
    RatVector v(a.cols());
    v[f] = 1;
    for (std::size_t k = 0; k < piv.size(); ++k) v[piv[k]] = -r(k, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

IntMatrix integer_kernel(const IntMatrix& a) {
  const SnfDecomposition d = snf(a);
  return d.V.col_range(d.rank, a.cols());
}

std::vector<std::size_t> independent_subset(const std::vector<RatVector>& vectors) {
  std::vector<std::size_t> chosen;
  std::vector<RatVector> rows;
  std::size_t current = 0;
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    rows.push_back(vectors[i]);
    const std::size_t r = rank(RatMatrix::from_rows(rows, vectors[i].size()));
    if (r > current) {
      current = r;
      chosen.push_back(i);
    } else {
      rows.pop_back();
    }
  }
  return chosen;
}

Sublattice span(std::size_t ambient_rank, const std::vector<IntVector>& generators) {
  Sublattice out;
  out.ambient_rank = ambient_rank;
  if (generators.empty()) {
    out.basis = IntMatrix(ambient_rank, 0);
    out.saturated = true;
    return out;
  }
  const IntMatrix g = IntMatrix::from_columns(generators, ambient_rank);
  const SnfDecomposition d = snf(g);
  // g = U^-1 S V^-1, so the column lattice is spanned by d_i * U^-1 e_i.
  IntMatrix basis(ambient_rank, d.rank);
  bool all_one = true;
  for (std::size_t j = 0; j < d.rank; ++j) {
    if (d.S(j, j) != 1) all_one = false;
    for (std::size_t i = 0; i < ambient_rank; ++i) basis(i, j) = d.U_inv(i, j) * d.S(j, j);
  }
  out.basis = std::move(basis);
  out.saturated = all_one;
  return out;
}

Sublattice saturate(const Sublattice& lattice) {
  Sublattice out;
  out.ambient_rank = lattice.ambient_rank;
  out.saturated = true;
  if (lattice.rank() == 0) {
    out.basis = IntMatrix(lattice.ambient_rank, 0);
    return out;
  }
  const SnfDecomposition d = snf(lattice.basis);
  out.basis = d.U_inv.col_range(0, d.rank);
  return out;
}

bool is_saturated(const Sublattice& lattice) {
  if (lattice.rank() == 0) return true;
  const SnfDecomposition d = snf(lattice.basis);
  for (std::size_t i = 0; i < d.rank; ++i)
    if (d.S(i, i) != 1) return false;
  return true;
}

bool contains(const Sublattice& lattice, const IntVector& v) {
  if (v.size() != lattice.ambient_rank) throw std::invalid_argument("contains: dimension mismatch");
  if (lattice.rank() == 0) return is_zero(v);
  // Solve basis * c = v over Q; the basis has full column rank so c is unique.
  const auto c = solve(to_rational(lattice.basis), to_rational(v));
  if (!c) return false;
  const RatVector back = to_rational(lattice.basis).apply(*c);
  if (back != to_rational(v)) return false;
  for (const auto& x : *c)
    if (x.get_den() != 1) return false;
  return true;
}

bool same_lattice(const Sublattice& a, const Sublattice& b) {
  if (a.ambient_rank != b.ambient_rank || a.rank() != b.rank()) return false;
  for (const auto& g : a.generators())
    if (!contains(b, g)) return false;
  for (const auto& g : b.generators())
    if (!contains(a, g)) return false;
  return true;
}

Sublattice annihilator(std::size_t ambient_rank, const std::vector<IntVector>& generators) {
  Sublattice out;
  out.ambient_rank = ambient_rank;
  out.saturated = true;
  if (generators.empty()) {
    out.basis = IntMatrix::identity(ambient_rank);
    return out;
  }
  out.basis = integer_kernel(IntMatrix::from_rows(generators, ambient_rank));
  return out;
}

QuotientLattice quotient_lattice(std::size_t ambient_rank, const Sublattice& lattice, bool strict) {
  if (lattice.ambient_rank != ambient_rank) throw std::invalid_argument("quotient_lattice: ambient rank mismatch");
  Sublattice sat = lattice;
  if (!is_saturated(lattice)) {
    if (strict) throw UnsaturatedSublattice("quotient_lattice: sublattice is not saturated");
    sat = saturate(lattice);
  }
  QuotientLattice q;
  const std::size_t k = sat.rank();
  q.rank = ambient_rank - k;
  if (k == 0) {
    q.projection = IntMatrix::identity(ambient_rank);
    q.section = IntMatrix::identity(ambient_rank);
    return q;
  }
  // U B V = [I_k; 0] for saturated B, so the last n-k rows of U kill L and
  // the matching columns of U^-1 give a section.
  const SnfDecomposition d = snf(sat.basis);
  q.projection = d.U.row_range(k, ambient_rank);
  q.section = d.U_inv.col_range(k, ambient_rank);
  return q;
}

CokernelInfo cokernel(const IntMatrix& a) {
  CokernelInfo info;
  const SnfDecomposition d = snf(a);
  for (std::size_t i = 0; i < d.rank; ++i) {
    if (d.S(i, i) != 1) {
      info.invariant_factors.push_back(d.S(i, i));
      info.torsion_order *= d.S(i, i);
    }
  }
  info.free_rank = a.rows() - d.rank;
  info.finite = info.free_rank == 0;
  return info;
}

}  // namespace fanikit
