#pragma once

// Dense two-phase simplex with Bland's rule and lexicographic objectives.
// Internal to the solvers module.

#include <cstddef>
#include <utility>
#include <vector>

namespace halluc::lp {

enum class Sense { le, eq };

struct Row {
  std::vector<std::pair<std::size_t, double>> coeffs;
  Sense sense = Sense::le;
  double rhs = 0.0;  ///< must be nonnegative
};

/// max c_1·x, then c_2·x over the c_1-optimal face, and so on; x >= 0.
struct Program {
  std::size_t num_vars = 0;
  std::vector<Row> rows;
  std::vector<std::vector<std::pair<std::size_t, double>>> objectives;
};

enum class Outcome { optimal, infeasible, unbounded, pivot_limit };

struct Solution {
  Outcome outcome = Outcome::infeasible;
  std::vector<double> x;
  std::size_t pivots = 0;
};

Solution solve(const Program& program, std::size_t max_pivots = 200'000);

}  // namespace halluc::lp
