#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "srcs/generator.hpp"
#include "srcs/large_placement.hpp"

#include <random>

using namespace srcs;

namespace {

LargeContext make_ctx(const Rational &eps, const Rational &delta,
                      const Rational &T, const Int &l, const Int &m,
                      const Int &R) {
  LargeContext ctx;
  ctx.grid = build_layers(Rational(l) * eps * T, eps, delta, T);
  ctx.m = m;
  ctx.R = R;
  ctx.epsilon = eps;
  ctx.gamma = Rational(1) / Rational(3 * Int(ctx.grid.start_points.size()) + 4);
  ctx.base_usage.assign(ctx.grid.start_points.size(), {0, 0});
  return ctx;
}

void check_layers(const LargeContext &ctx, const LargePlacement &pl,
                  const std::vector<GridJob> &jobs) {
  std::map<JobId, const GridJob *> by_id;
  for (const GridJob &j : jobs) by_id[j.id] = &j;
  size_t n = ctx.grid.start_points.size();
  std::vector<Int> um(n, 0), ur(n, 0);
  auto account = [&](const std::map<JobId, Rational> &starts) {
    for (const auto &[id, s] : starts) {
      CHECK(den(Rational(s / ctx.grid.step)) == 1);  // on the grid
      auto [a, b] = layer_span(ctx.grid, s, by_id.at(id)->p);
      for (size_t i = a; i < b; ++i) {
        um[i] += 1;
        ur[i] += by_id.at(id)->r;
      }
    }
  };
  account(pl.starts);
  account(pl.wide_starts);
  for (size_t i = 0; i < n; ++i) {
    CHECK(um[i] + ctx.base_usage[i].first <= ctx.m);
    CHECK(ur[i] + ctx.base_usage[i].second <= ctx.R);
  }
}

}  // namespace

TEST_CASE("resource levels descend geometrically to zero") {
  std::vector<Rational> levels = resource_levels(10, 3);
  REQUIRE(levels.size() >= 2);
  CHECK(levels.front() == 10);
  CHECK(levels.back() < 1);  // either an explicit 0 or a sub-unit level
  for (size_t i = 1; i + 1 < levels.size(); ++i)
    CHECK(levels[i] == levels[i - 1] * Rational(3, 4));
  for (size_t i = 1; i < levels.size(); ++i) CHECK(levels[i] < levels[i - 1]);
}

TEST_CASE("wide/narrow split honors the alpha threshold") {
  Rational alpha = choose_alpha(Rational(1, 10), 3);
  CHECK(alpha == Rational(1, 100));
  std::vector<GridJob> jobs = {{0, Rational(1), 5}, {1, Rational(1), 1},
                               {2, Rational(1), 0}};
  auto [wide, narrow] = split_wide_narrow(jobs, Rational(1, 100), 100);
  REQUIRE(wide.size() == 2);  // r = 5 and the tie r = 1
  REQUIRE(narrow.size() == 1);
  CHECK(narrow[0].id == 2);
}

TEST_CASE("greedy placement fills layers without overflow") {
  Rational eps(1, 2), delta(1, 2), T(8);
  for (int seed = 0; seed < 20; ++seed) {
    std::mt19937 rng(seed);
    LargeContext ctx = make_ctx(eps, delta, T, 4, 3, 10);
    for (int i = 0; i < 4; ++i)
      ctx.jobs.push_back({i, ctx.grid.step * (int)(rng() % 3 + 1),
                          Int(rng() % 6)});
    auto pl = greedy_large_placement(ctx);
    if (!pl) continue;
    CHECK(pl->removed.empty());
    check_layers(ctx, *pl, ctx.jobs);
  }
}

TEST_CASE("profile solve keeps the pruning bounds") {
  Rational eps(1, 2), delta(1, 2), T(8);
  int solves = 0;
  for (int seed = 0; seed < 40; ++seed) {
    std::mt19937 rng(seed);
    LargeContext ctx = make_ctx(eps, delta, T, 4, 3, 10);
    int n = 2 + (int)(rng() % 4);
    for (int i = 0; i < n; ++i)
      ctx.jobs.push_back({i, ctx.grid.step * (int)(rng() % 4 + 1),
                          Int(rng() % 4)});
    size_t layers = ctx.grid.start_points.size();
    for_each_large_candidate(ctx, 100000, 100000, [&](const LargeCandidate &c) {
      LpLargeStats stats;
      auto pl = solve_profile(ctx, c.narrow, c.wide_starts, c.profile, &stats);
      if (!pl) return false;
      ++solves;
      CHECK(stats.fractional_jobs <= 2 * (int)layers);
      CHECK(stats.pruned_for_profile <= 3 * (int)layers);
      Int removed_r = 0;
      for (JobId id : pl->removed)
        for (const GridJob &j : ctx.jobs)
          if (j.id == id) removed_r += j.r;
      CHECK(Rational(removed_r) <= ctx.gamma * ctx.R);
      check_layers(ctx, *pl, ctx.jobs);
      return true;
    });
  }
  CHECK(solves > 0);
}

TEST_CASE("wide enumeration respects its budget") {
  Rational eps(1, 2), delta(1, 2), T(8);
  LargeContext ctx = make_ctx(eps, delta, T, 4, 3, 10);
  std::vector<GridJob> wide;
  for (int i = 0; i < 6; ++i) wide.push_back({i, ctx.grid.step, 1});
  CHECK_THROWS_AS(enumerate_wide_placements(ctx, wide, 3), BudgetError);
}

TEST_CASE("usage-derived profile dominates the placement it came from") {
  Rational eps(1, 2), delta(1, 2), T(8);
  LargeContext ctx = make_ctx(eps, delta, T, 4, 3, 10);
  ctx.jobs = {{0, Rational(2), 3}, {1, Rational(4), 2}, {2, Rational(2), 5}};
  auto pl = greedy_large_placement(ctx);
  REQUIRE(pl.has_value());
  auto [wide, narrow] = split_wide_narrow(
      ctx.jobs, choose_alpha(ctx.gamma, ctx.grid.start_points.size()), ctx.R);
  (void)wide;
  Profile prof = profile_from_usage(ctx, narrow, pl->starts);
  size_t n = ctx.grid.start_points.size();
  REQUIRE(prof.m_hat.size() == n);
  REQUIRE(prof.R_hat.size() == n);
  std::map<JobId, const GridJob *> by_id;
  for (const GridJob &j : ctx.jobs) by_id[j.id] = &j;
  std::vector<Int> um(n, 0), ur(n, 0);
  for (const auto &[id, s] : pl->starts) {
    if (!std::any_of(narrow.begin(), narrow.end(),
                     [&, id = id](const GridJob &g) { return g.id == id; }))
      continue;
    auto [a, b] = layer_span(ctx.grid, s, by_id.at(id)->p);
    for (size_t i = a; i < b; ++i) {
      um[i] += 1;
      ur[i] += by_id.at(id)->r;
    }
  }
  for (size_t i = 0; i < n; ++i) {
    CHECK(prof.m_hat[i] >= um[i]);
    CHECK(prof.R_hat[i] >= ur[i]);
  }
}
