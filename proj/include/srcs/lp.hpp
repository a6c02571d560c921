#ifndef SRCS_LP_HPP
#define SRCS_LP_HPP

#include "srcs/rational.hpp"

#include <map>
#include <string>
#include <vector>

namespace srcs {

enum class Relation { Le, Eq, Ge };

/// Exact-rational LP over nonnegative variables. Rows are sparse
/// (index, coefficient) lists against the model's variable array.
struct LpModel {
  std::vector<std::string> variables;
  struct Row {
    std::vector<std::pair<int, Rational>> coeffs;
    Relation rel = Relation::Le;
    Rational rhs;
  };
  std::vector<Row> rows;
  // optional objective (minimized); empty = pure feasibility
  std::vector<std::pair<int, Rational>> objective;

  int add_variable(const std::string &name);
  void add_row(std::vector<std::pair<int, Rational>> coeffs, Relation rel,
               Rational rhs);
  /// Plain-text dump, one row per line: `3/2 x0 + -1 x3 <= 5`.
  std::string dump() const;
};

struct BasicSolution {
  std::vector<Rational> values;          // one per model variable
  std::vector<int> basis;                // basic variable indices
  bool feasible = true;
  Rational objective;
  // one multiplier per row (original orientation); reduced cost of a column
  // a with cost c is c - duals . a. Filled by solve_feasible only.
  std::vector<Rational> duals;
};

/// Exact simplex, Bland's rule, two phases. Returns a vertex of the feasible
/// region (minimizing the objective when present) or feasible=false.
BasicSolution solve_feasible(const LpModel &model);

/// Moves a feasible point along null-space directions of its tight rows to a
/// vertex; the objective (if any) never worsens and the nonzero support ends
/// up bounded by the row count. Throws if the point violates the model.
BasicSolution to_basic(const LpModel &model, const std::vector<Rational> &point);

/// Exact constraint check for a candidate point.
bool satisfies(const LpModel &model, const std::vector<Rational> &point);

int support_size(const std::vector<Rational> &values);

}  // namespace srcs

#endif
