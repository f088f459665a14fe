#include "simplex.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace halluc::lp {

namespace {

constexpr double kPivotTol = 1e-10;
constexpr double kCostTol = 1e-10;

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols) : m_(rows), n_(cols), a_(rows * (cols + 1), 0.0), basis_(rows) {}

  double& at(std::size_t r, std::size_t c) { return a_[r * (n_ + 1) + c]; }
  double at(std::size_t r, std::size_t c) const { return a_[r * (n_ + 1) + c]; }
  double& rhs(std::size_t r) { return a_[r * (n_ + 1) + n_]; }
  double rhs(std::size_t r) const { return a_[r * (n_ + 1) + n_]; }
  std::size_t rows() const { return m_; }
  std::size_t cols() const { return n_; }
  std::vector<std::size_t>& basis() { return basis_; }

  void pivot(std::size_t pr, std::size_t pc) {
    const std::size_t w = n_ + 1;
    double* prow = &a_[pr * w];
    const double inv = 1.0 / prow[pc];
    for (std::size_t c = 0; c < w; ++c) prow[c] *= inv;
    prow[pc] = 1.0;
    for (std::size_t r = 0; r < m_; ++r) {
      if (r == pr) continue;
      double* row = &a_[r * w];
      const double f = row[pc];
      if (f == 0.0) continue;
      for (std::size_t c = 0; c < w; ++c) row[c] -= f * prow[c];
      row[pc] = 0.0;
    }
    basis_[pr] = pc;
  }

 private:
  std::size_t m_, n_;
  std::vector<double> a_;
  std::vector<std::size_t> basis_;
};

/// Reduced costs c_j - c_B B^-1 A_j for a sparse objective.
std::vector<double> reduced_costs(Tableau& t, const std::vector<double>& cost) {
  std::vector<double> rc(cost);
  for (std::size_t r = 0; r < t.rows(); ++r) {
    const double cb = cost[t.basis()[r]];
    if (cb == 0.0) continue;
    for (std::size_t c = 0; c < t.cols(); ++c) rc[c] -= cb * t.at(r, c);
  }
  return rc;
}

/// Bland's rule primal simplex maximizing `cost` over non-banned columns.
Outcome optimize(Tableau& t, const std::vector<double>& cost, const std::vector<char>& banned,
                 std::size_t& pivots, std::size_t max_pivots, std::vector<double>& rc_out) {
  while (true) {
    std::vector<double> rc = reduced_costs(t, cost);
    std::size_t enter = t.cols();
    for (std::size_t c = 0; c < t.cols(); ++c) {
      if (!banned[c] && rc[c] > kCostTol) {
        enter = c;
        break;
      }
    }
    if (enter == t.cols()) {
      rc_out = std::move(rc);
      return Outcome::optimal;
    }
    std::size_t leave = t.rows();
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < t.rows(); ++r) {
      const double a = t.at(r, enter);
      if (a <= kPivotTol) continue;
      const double ratio = std::max(t.rhs(r), 0.0) / a;
      if (leave == t.rows() || ratio < best - 1e-14) {
        best = ratio;
        leave = r;
      } else if (ratio <= best + 1e-14 && t.basis()[r] < t.basis()[leave]) {
        best = std::min(best, ratio);
        leave = r;
      }
    }
    if (leave == t.rows()) return Outcome::unbounded;
    if (pivots >= max_pivots) return Outcome::pivot_limit;
    t.pivot(leave, enter);
    ++pivots;
  }
}

}  // namespace

Solution solve(const Program& program, std::size_t max_pivots) {
  const std::size_t n = program.num_vars;
  const std::size_t m = program.rows.size();
  std::size_t slacks = 0, artificials = 0;
  for (const auto& row : program.rows) {
    if (!(row.rhs >= 0.0)) throw std::domain_error("lp::solve: negative right-hand side");
    (row.sense == Sense::le ? slacks : artificials)++;
  }
  const std::size_t cols = n + slacks + artificials;
  Tableau t(m, cols);
  std::vector<char> is_artificial(cols, 0);
  std::size_t next_slack = n, next_art = n + slacks;
  for (std::size_t r = 0; r < m; ++r) {
    const auto& row = program.rows[r];
    for (const auto& [j, v] : row.coeffs) {
      if (j >= n) throw std::out_of_range("lp::solve: variable index");
      t.at(r, j) += v;
    }
    t.rhs(r) = row.rhs;
    const std::size_t b = row.sense == Sense::le ? next_slack++ : next_art++;
    t.at(r, b) = 1.0;
    t.basis()[r] = b;
    if (row.sense == Sense::eq) is_artificial[b] = 1;
  }

  Solution out;
  std::vector<char> banned(cols, 0);
  std::vector<double> rc;
  if (artificials > 0) {
    std::vector<double> phase1(cols, 0.0);
    for (std::size_t c = 0; c < cols; ++c) {
      if (is_artificial[c]) phase1[c] = -1.0;
    }
    const Outcome o = optimize(t, phase1, banned, out.pivots, max_pivots, rc);
    if (o != Outcome::optimal) {
      out.outcome = o;
      return out;
    }
    double infeasibility = 0.0;
    for (std::size_t r = 0; r < m; ++r) {
      if (is_artificial[t.basis()[r]]) infeasibility += t.rhs(r);
    }
    if (infeasibility > 1e-9) return out;
    // Drive zero-level artificials out where possible; rows where that fails are redundant.
    for (std::size_t r = 0; r < m; ++r) {
      if (!is_artificial[t.basis()[r]]) continue;
      for (std::size_t c = 0; c < cols; ++c) {
        if (!is_artificial[c] && std::fabs(t.at(r, c)) > kPivotTol) {
          t.pivot(r, c);
          ++out.pivots;
          break;
        }
      }
    }
    for (std::size_t c = 0; c < cols; ++c) banned[c] = is_artificial[c];
  }

  for (const auto& objective : program.objectives) {
    std::vector<double> cost(cols, 0.0);
    for (const auto& [j, v] : objective) cost.at(j) += v;
    const Outcome o = optimize(t, cost, banned, out.pivots, max_pivots, rc);
    if (o != Outcome::optimal) {
      out.outcome = o;
      return out;
    }
    // Columns that would lower this objective stay at zero from now on.
    std::vector<char> is_basic(cols, 0);
    for (std::size_t b : t.basis()) is_basic[b] = 1;
    bool any_free = false;
    for (std::size_t c = 0; c < cols; ++c) {
      if (banned[c] || is_basic[c]) continue;
      if (rc[c] < -kCostTol) {
        banned[c] = 1;
      } else {
        any_free = true;
      }
    }
    if (!any_free) break;
  }

  out.outcome = Outcome::optimal;
  out.x.assign(n, 0.0);
  for (std::size_t r = 0; r < m; ++r) {
    const std::size_t b = t.basis()[r];
    if (b < n) out.x[b] = std::max(t.rhs(r), 0.0);
  }
  return out;
}

}  // namespace halluc::lp
