#include "fanikit/lp.hpp"

#include <cstdint>
#include <stdexcept>

namespace fanikit {

void LinearSystem::add_eq(RatVector row, Rational rhs) {
  if (row.size() != num_vars) throw std::invalid_argument("LinearSystem::add_eq: width mismatch");
  eq_rows.push_back(std::move(row));
  eq_rhs.push_back(std::move(rhs));
}

void LinearSystem::add_ge(RatVector row, Rational rhs) {
  if (row.size() != num_vars) throw std::invalid_argument("LinearSystem::add_ge: width mismatch");
  ge_rows.push_back(std::move(row));
  ge_rhs.push_back(std::move(rhs));
}

void LinearSystem::set_nonneg(std::size_t var) {
  if (nonneg.empty()) nonneg.assign(num_vars, false);
  nonneg.at(var) = true;
}

namespace {

class Tableau {
 public:
  explicit Tableau(const LinearSystem& s) : system_(s) {
    // Column layout: original variables (split when free), slacks, artificials.
    for (std::size_t v = 0; v < s.num_vars; ++v) {
      const bool nn = !s.nonneg.empty() && s.nonneg[v];
      pos_col_.push_back(structural_++);
      neg_col_.push_back(nn ? SIZE_MAX : structural_++);
    }
    rows_ = s.eq_rows.size() + s.ge_rows.size();
    slack_begin_ = structural_;
    art_begin_ = slack_begin_ + s.ge_rows.size();
    cols_ = art_begin_ + rows_;
    t_.assign(rows_, RatVector(cols_ + 1));
    basis_.resize(rows_);

    std::size_t r = 0;
    auto fill = [&](const RatVector& row, const Rational& rhs, std::size_t slack) {
      for (std::size_t v = 0; v < s.num_vars; ++v) {
        t_[r][pos_col_[v]] = row[v];
        if (neg_col_[v] != SIZE_MAX) t_[r][neg_col_[v]] = -row[v];
      }
      if (slack != SIZE_MAX) t_[r][slack] = -1;
      t_[r][cols_] = rhs;
      if (rhs < 0)
        for (auto& x : t_[r]) x = -x;
      t_[r][art_begin_ + r] = 1;
      basis_[r] = art_begin_ + r;
      ++r;
    };
    for (std::size_t i = 0; i < s.eq_rows.size(); ++i) fill(s.eq_rows[i], s.eq_rhs[i], SIZE_MAX);
    for (std::size_t i = 0; i < s.ge_rows.size(); ++i) fill(s.ge_rows[i], s.ge_rhs[i], slack_begin_ + i);
  }

  bool phase_one() {
    RatVector cost(cols_);
    for (std::size_t j = art_begin_; j < cols_; ++j) cost[j] = 1;
    run(cost, cols_);
    Rational obj = 0;
    for (std::size_t i = 0; i < rows_; ++i)
      if (basis_[i] >= art_begin_) obj += t_[i][cols_];
    if (obj != 0) return false;
    // Drive zero-valued artificials out of the basis where possible.
    for (std::size_t i = 0; i < rows_; ++i) {
      if (basis_[i] < art_begin_) continue;
      for (std::size_t j = 0; j < art_begin_; ++j) {
        if (t_[i][j] != 0) {
          pivot(i, j);
          break;
        }
      }
    }
    return true;
  }

  void phase_two(const RatVector& original_cost) {
    RatVector cost(cols_);
    for (std::size_t v = 0; v < system_.num_vars; ++v) {
      cost[pos_col_[v]] = original_cost[v];
      if (neg_col_[v] != SIZE_MAX) cost[neg_col_[v]] = -original_cost[v];
    }
    if (!run(cost, art_begin_)) throw std::domain_error("minimize: objective unbounded");
  }

  RatVector solution() const {
    RatVector y(cols_);
    for (std::size_t i = 0; i < rows_; ++i) y[basis_[i]] = t_[i][cols_];
    RatVector x(system_.num_vars);
    for (std::size_t v = 0; v < system_.num_vars; ++v) {
      x[v] = y[pos_col_[v]];
      if (neg_col_[v] != SIZE_MAX) x[v] -= y[neg_col_[v]];
    }
    return x;
  }

 private:
  // Bland's rule simplex on columns [0, allowed). Returns false if unbounded.
  bool run(const RatVector& cost, std::size_t allowed) {
    while (true) {
      std::size_t enter = SIZE_MAX;
      for (std::size_t j = 0; j < allowed; ++j) {
        if (is_basic(j)) continue;
        Rational r = cost[j];
        for (std::size_t i = 0; i < rows_; ++i) r -= cost[basis_[i]] * t_[i][j];
        if (r < 0) {
          enter = j;
          break;
        }
      }
      if (enter == SIZE_MAX) return true;
      std::size_t leave = SIZE_MAX;
      Rational best;
      for (std::size_t i = 0; i < rows_; ++i) {
        if (t_[i][enter] <= 0) continue;
        Rational ratio = t_[i][cols_] / t_[i][enter];
        if (leave == SIZE_MAX || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == SIZE_MAX) return false;
      pivot(leave, enter);
    }
  }

  bool is_basic(std::size_t j) const {
    for (auto b : basis_)
      if (b == j) return true;
    return false;
  }

  void pivot(std::size_t r, std::size_t c) {
    const Rational inv = 1 / t_[r][c];
    for (auto& x : t_[r]) x *= inv;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == r || t_[i][c] == 0) continue;
      const Rational f = t_[i][c];
      for (std::size_t j = 0; j <= cols_; ++j) t_[i][j] -= f * t_[r][j];
    }
    basis_[r] = c;
  }

  const LinearSystem& system_;
  std::vector<std::size_t> pos_col_, neg_col_;
  std::size_t structural_ = 0, slack_begin_ = 0, art_begin_ = 0, cols_ = 0, rows_ = 0;
  std::vector<RatVector> t_;
  std::vector<std::size_t> basis_;
};

}  // namespace

std::optional<RatVector> find_feasible_point(const LinearSystem& system) {
  Tableau t(system);
  if (!t.phase_one()) return std::nullopt;
  return t.solution();
}

std::optional<RatVector> minimize(const LinearSystem& system, const RatVector& cost) {
  if (cost.size() != system.num_vars) throw std::invalid_argument("minimize: cost width mismatch");
  Tableau t(system);
  if (!t.phase_one()) return std::nullopt;
  t.phase_two(cost);
  return t.solution();
}

}  // namespace fanikit
