#pragma once

// Exact linear programming over Q: dense two-phase simplex with Bland's rule.

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <vector>

namespace quadgb::lp {

enum class Relation { LessEqual, GreaterEqual, Equal };
enum class Status { Optimal, Infeasible, Unbounded };

/// maximize c.x subject to rows A_i x (rel_i) b_i, with x_j >= 0 unless free_j.
struct Problem {
  std::size_t nvars = 0;
  std::vector<std::vector<mpq_class>> A;
  std::vector<Relation> rel;
  std::vector<mpq_class> b;
  std::vector<mpq_class> c;  // empty: feasibility only
  std::vector<bool> free;    // empty: all variables nonnegative

  explicit Problem(std::size_t n) : nvars(n) {}

  void add(std::vector<mpq_class> row, Relation r, mpq_class rhs) {
    if (row.size() != nvars) throw std::invalid_argument("lp: constraint has the wrong length");
    A.push_back(std::move(row));
    rel.push_back(r);
    b.push_back(std::move(rhs));
  }
};

struct Result {
  Status status = Status::Infeasible;
  std::vector<mpq_class> x;
  mpq_class value;
};

namespace detail {

class Tableau {
 public:
  Tableau(std::vector<std::vector<mpq_class>> rows, std::vector<mpq_class> rhs, std::vector<std::size_t> basis)
      : T_(std::move(rows)), rhs_(std::move(rhs)), basis_(std::move(basis)) {}

  /// Maximizes cost.x over the current feasible basis. Columns marked in
  /// `blocked` never enter.
  Status maximize(const std::vector<mpq_class>& cost, const std::vector<bool>& blocked) {
    const std::size_t n = cost.size();
    while (true) {
      // reduced costs c_j - c_B B^-1 A_j, read off the tableau
      std::optional<std::size_t> enter;
      for (std::size_t j = 0; j < n && !enter; ++j) {
        if (blocked[j] || is_basic(j)) continue;
        mpq_class rc = cost[j];
        for (std::size_t i = 0; i < T_.size(); ++i)
          if (sgn(T_[i][j]) != 0) rc -= cost[basis_[i]] * T_[i][j];
        if (sgn(rc) > 0) enter = j;
      }
      if (!enter) return Status::Optimal;
      std::optional<std::size_t> leave;
      mpq_class best;
      for (std::size_t i = 0; i < T_.size(); ++i) {
        if (sgn(T_[i][*enter]) <= 0) continue;
        mpq_class ratio = rhs_[i] / T_[i][*enter];
        if (!leave || ratio < best || (ratio == best && basis_[i] < basis_[*leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (!leave) return Status::Unbounded;
      pivot(*leave, *enter);
    }
  }

  void pivot(std::size_t row, std::size_t col) {
    mpq_class p = T_[row][col];
    for (auto& v : T_[row]) v /= p;
    rhs_[row] /= p;
    for (std::size_t i = 0; i < T_.size(); ++i) {
      if (i == row || sgn(T_[i][col]) == 0) continue;
      mpq_class f = T_[i][col];
      for (std::size_t j = 0; j < T_[i].size(); ++j)
        if (sgn(T_[row][j]) != 0) T_[i][j] -= f * T_[row][j];
      rhs_[i] -= f * rhs_[row];
    }
    basis_[row] = col;
  }

  bool is_basic(std::size_t j) const {
    for (auto b : basis_)
      if (b == j) return true;
    return false;
  }

  void drop_row(std::size_t i) {
    T_.erase(T_.begin() + static_cast<long>(i));
    rhs_.erase(rhs_.begin() + static_cast<long>(i));
    basis_.erase(basis_.begin() + static_cast<long>(i));
  }

  std::size_t rows() const { return T_.size(); }
  const mpq_class& at(std::size_t i, std::size_t j) const { return T_[i][j]; }
  std::size_t basic(std::size_t i) const { return basis_[i]; }

  std::vector<mpq_class> solution(std::size_t ncols) const {
    std::vector<mpq_class> x(ncols, 0);
    for (std::size_t i = 0; i < T_.size(); ++i) x[basis_[i]] = rhs_[i];
    return x;
  }

 private:
  std::vector<std::vector<mpq_class>> T_;
  std::vector<mpq_class> rhs_;
  std::vector<std::size_t> basis_;
};

}  // namespace detail

inline Result solve(const Problem& P) {
  const std::size_t n = P.nvars, m = P.A.size();
  if (!P.c.empty() && P.c.size() != n) throw std::invalid_argument("lp: objective has the wrong length");
  if (!P.free.empty() && P.free.size() != n) throw std::invalid_argument("lp: free flags have the wrong length");
  // columns: x_j (and -x_j for free j), one slack per inequality, one artificial per row
  std::vector<std::size_t> neg_col(n, SIZE_MAX);
  std::size_t cols = n;
  for (std::size_t j = 0; j < n; ++j)
    if (!P.free.empty() && P.free[j]) neg_col[j] = cols++;
  std::vector<std::size_t> slack_col(m, SIZE_MAX);
  for (std::size_t i = 0; i < m; ++i)
    if (P.rel[i] != Relation::Equal) slack_col[i] = cols++;
  const std::size_t first_art = cols;
  cols += m;

  std::vector<std::vector<mpq_class>> rows(m, std::vector<mpq_class>(cols, 0));
  std::vector<mpq_class> rhs(m);
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      rows[i][j] = P.A[i][j];
      if (neg_col[j] != SIZE_MAX) rows[i][neg_col[j]] = -P.A[i][j];
    }
    if (P.rel[i] == Relation::LessEqual) rows[i][slack_col[i]] = 1;
    if (P.rel[i] == Relation::GreaterEqual) rows[i][slack_col[i]] = -1;
    rhs[i] = P.b[i];
    if (sgn(rhs[i]) < 0) {
      for (auto& v : rows[i]) v = -v;
      rhs[i] = -rhs[i];
    }
    rows[i][first_art + i] = 1;
    basis[i] = first_art + i;
  }
  detail::Tableau T(std::move(rows), std::move(rhs), std::move(basis));

  // phase I: maximize -(sum of artificials)
  std::vector<mpq_class> cost1(cols, 0);
  for (std::size_t i = 0; i < m; ++i) cost1[first_art + i] = -1;
  std::vector<bool> none(cols, false);
  T.maximize(cost1, none);
  auto x1 = T.solution(cols);
  mpq_class infeas = 0;
  for (std::size_t i = 0; i < m; ++i) infeas += x1[first_art + i];
  Result out;
  if (sgn(infeas) != 0) return out;

  // drive artificials out of the basis; rows where that fails are redundant
  for (std::size_t i = 0; i < T.rows();) {
    if (T.basic(i) < first_art) {
      ++i;
      continue;
    }
    std::optional<std::size_t> col;
    for (std::size_t j = 0; j < first_art && !col; ++j)
      if (sgn(T.at(i, j)) != 0) col = j;
    if (col) {
      T.pivot(i, *col);
      ++i;
    } else {
      T.drop_row(i);
    }
  }

  std::vector<mpq_class> cost2(cols, 0);
  for (std::size_t j = 0; j < n && !P.c.empty(); ++j) {
    cost2[j] = P.c[j];
    if (neg_col[j] != SIZE_MAX) cost2[neg_col[j]] = -P.c[j];
  }
  std::vector<bool> blocked(cols, false);
  for (std::size_t j = first_art; j < cols; ++j) blocked[j] = true;
  out.status = T.maximize(cost2, blocked);
  auto x = T.solution(cols);
  out.x.assign(n, 0);
  for (std::size_t j = 0; j < n; ++j) {
    out.x[j] = x[j];
    if (neg_col[j] != SIZE_MAX) out.x[j] -= x[neg_col[j]];
  }
  out.value = 0;
  for (std::size_t j = 0; j < n && !P.c.empty(); ++j) out.value += P.c[j] * out.x[j];
  return out;
}

}  // namespace quadgb::lp
