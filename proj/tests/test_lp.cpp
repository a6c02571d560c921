#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "srcs/lp.hpp"

#include <random>

using namespace srcs;

TEST_CASE("simplex solves a small minimization exactly") {
  LpModel m;
  int x = m.add_variable("x");
  int y = m.add_variable("y");
  m.add_row({{x, 1}, {y, 1}}, Relation::Ge, 1);
  m.add_row({{x, 1}}, Relation::Le, Rational(2, 3));
  m.objective = {{x, 1}, {y, 2}};
  BasicSolution sol = solve_feasible(m);
  REQUIRE(sol.feasible);
  // x as large as allowed, remainder on y
  CHECK(sol.values[x] == Rational(2, 3));
  CHECK(sol.values[y] == Rational(1, 3));
  CHECK(sol.objective == Rational(4, 3));
}

TEST_CASE("simplex detects infeasibility") {
  LpModel m;
  int x = m.add_variable("x");
  m.add_row({{x, 1}}, Relation::Ge, 2);
  m.add_row({{x, 1}}, Relation::Le, 1);
  CHECK(!solve_feasible(m).feasible);
}

TEST_CASE("equality rows and negative rhs normalize correctly") {
  LpModel m;
  int x = m.add_variable("x");
  int y = m.add_variable("y");
  m.add_row({{x, 1}, {y, -1}}, Relation::Eq, Rational(-1, 2));
  m.add_row({{x, 1}, {y, 1}}, Relation::Le, 4);
  m.objective = {{y, 1}};
  BasicSolution sol = solve_feasible(m);
  REQUIRE(sol.feasible);
  CHECK(sol.values[y] - sol.values[x] == Rational(1, 2));
  CHECK(sol.objective == Rational(1, 2));
}

TEST_CASE("duals certify optimality") {
  LpModel m;
  int x = m.add_variable("x");
  int y = m.add_variable("y");
  m.add_row({{x, 2}, {y, 1}}, Relation::Ge, 3);
  m.add_row({{x, 1}, {y, 3}}, Relation::Ge, 4);
  m.objective = {{x, 3}, {y, 2}};
  BasicSolution sol = solve_feasible(m);
  REQUIRE(sol.feasible);
  REQUIRE(sol.duals.size() == 2);
  // reduced costs nonnegative at an optimum of a minimization
  CHECK(Rational(3) - (2 * sol.duals[0] + sol.duals[1]) >= 0);
  CHECK(Rational(2) - (sol.duals[0] + 3 * sol.duals[1]) >= 0);
  // strong duality: y . b equals the objective
  CHECK(3 * sol.duals[0] + 4 * sol.duals[1] == sol.objective);
  // Ge rows of a minimization have nonnegative multipliers
  CHECK(sol.duals[0] >= 0);
  CHECK(sol.duals[1] >= 0);
}

TEST_CASE("to_basic reaches a vertex without losing feasibility") {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 30; ++trial) {
    LpModel m;
    int n = 6;
    for (int i = 0; i < n; ++i) m.add_variable("v" + std::to_string(i));
    // sum of all = 3, plus a couple of random Le rows kept loose
    std::vector<std::pair<int, Rational>> all;
    for (int i = 0; i < n; ++i) all.push_back({i, 1});
    m.add_row(all, Relation::Eq, 3);
    for (int r = 0; r < 2; ++r) {
      std::vector<std::pair<int, Rational>> row;
      for (int i = 0; i < n; ++i)
        if (rng() % 2) row.push_back({i, Rational((int)(rng() % 3) + 1)});
      if (!row.empty()) m.add_row(row, Relation::Le, 20);
    }
    std::vector<Rational> point(n, Rational(1, 2));  // sums to 3
    REQUIRE(satisfies(m, point));
    BasicSolution sol = to_basic(m, point);
    CHECK(satisfies(m, sol.values));
    CHECK(support_size(sol.values) <= (int)m.rows.size());
  }
}

TEST_CASE("to_basic rejects an infeasible point") {
  LpModel m;
  int x = m.add_variable("x");
  m.add_row({{x, 1}}, Relation::Le, 1);
  CHECK_THROWS(to_basic(m, {Rational(2)}));
}
