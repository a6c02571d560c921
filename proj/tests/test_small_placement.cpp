#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "srcs/generator.hpp"
#include "srcs/small_placement.hpp"

#include <random>

using namespace srcs;

namespace {

std::vector<Job> random_small(std::mt19937 &rng, int n, long long r_max) {
  std::vector<Job> out;
  for (int i = 0; i < n; ++i)
    out.push_back({i, Rational((int)(rng() % 6) + 1, (int)(rng() % 4) + 2),
                   Int(rng() % (r_max + 1))});
  return out;
}

}  // namespace

TEST_CASE("geometric grouping covers every job exactly once") {
  std::mt19937 rng(5);
  Rational eps(1, 2);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<Job> small = random_small(rng, 1 + (int)(rng() % 15), 8);
    SmallGroups g = geometric_group(small, eps, 3, 8);
    size_t members = 0;
    for (size_t gi = 0; gi < g.groups.size(); ++gi) {
      const SmallGroup &grp = g.groups[gi];
      CHECK(!grp.members.empty());
      Rational total = 0;
      for (JobId id : grp.members) {
        CHECK(g.group_of.at(id) == gi);
        const Job *job = nullptr;
        for (const Job &j : small)
          if (j.id == id) job = &j;
        REQUIRE(job);
        CHECK(job->r <= grp.rounded_r);
        total += job->p;
      }
      CHECK(total == grp.total_p);
      members += grp.members.size();
    }
    CHECK(members == small.size());
    CHECK(g.group_of.size() == small.size());
  }
}

TEST_CASE("grouping overflow stays within the closed-form bound") {
  std::mt19937 rng(6);
  Rational eps(1, 3);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Job> small = random_small(rng, 1 + (int)(rng() % 20), 10);
    SmallGroups g = geometric_group(small, eps, 4, 10);
    // bound_grouping_overflow throws internally if the closed form fails
    Rational overflow = bound_grouping_overflow(g, small, eps, 4, 10);
    CHECK(overflow >= 0);
  }
}

TEST_CASE("config LP covers a trivially feasible case and rejects a tight one") {
  Rational eps(1, 2);
  std::vector<Job> small = {{0, Rational(1), 1}, {1, Rational(1), 1}};
  SmallGroups g = geometric_group(small, eps, 2, 4);

  std::vector<SmallBox> roomy = {{Rational(4), 2, 4}};
  auto sol = solve_config_lp(roomy, g, eps);
  REQUIRE(sol.has_value());
  // covered time per group matches its demand
  std::map<size_t, Rational> covered;
  for (const auto &[cfg, t] : sol->usage[0])
    for (const auto &[gi, mult] : cfg.counts) covered[gi] += t * mult;
  for (size_t gi = 0; gi < g.groups.size(); ++gi)
    CHECK(covered[gi] >= g.groups[gi].total_p);

  std::vector<SmallBox> cramped = {{Rational(1, 4), 1, 1}};
  Rational uncovered = 0;
  CHECK(!solve_config_lp(cramped, g, eps, &uncovered));
  CHECK(uncovered > 0);
}

TEST_CASE("column generation matches full enumeration") {
  std::mt19937 rng(7);
  Rational eps(1, 2);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<Job> small = random_small(rng, 1 + (int)(rng() % 5), 4);
    SmallGroups g = geometric_group(small, eps, 3, 4);
    if (g.groups.size() > 5) continue;
    std::vector<SmallBox> boxes;
    int nb = 1 + (int)(rng() % 3);
    for (int b = 0; b < nb; ++b)
      boxes.push_back({Rational((int)(rng() % 3) + 1, 2),
                       Int(rng() % 4), Int(rng() % 5)});
    Rational u1 = 0, u2 = 0;
    auto s1 = solve_config_lp(boxes, g, eps, &u1);
    auto s2 = solve_config_lp_enumerated(boxes, g, eps, &u2);
    CHECK(s1.has_value() == s2.has_value());
    CHECK(u1 == u2);
  }
}

TEST_CASE("window solutions keep narrow mass inside their windows") {
  std::mt19937 rng(8);
  Rational eps(1, 2);
  Int m = 3, R = 8;
  for (int trial = 0; trial < 25; ++trial) {
    std::vector<Job> small = random_small(rng, 1 + (int)(rng() % 10), 7);
    SmallGroups g = geometric_group(small, eps, m, R);
    std::vector<SmallBox> boxes = {{Rational(2), m, R}, {Rational(3), m, R}};
    auto sol = solve_config_lp(boxes, g, eps);
    if (!sol) continue;
    GenConfigSolution win = to_window_solution(*sol, g, eps, m, R);
    for (const auto &entries : win.per_box) {
      for (const GenEntry &e : entries) {
        Rational y_total = 0, y_area = 0;
        for (const auto &[gi, t] : e.y) {
          CHECK(!is_wide(g.groups[gi], eps, R));
          y_total += t;
          y_area += t * g.groups[gi].rounded_r;
        }
        CHECK(y_total <= Rational(e.w_m) * e.x);
        CHECK(y_area <= e.w_r * e.x);
      }
    }

    GenConfigSolution red = reduce_windows(win, g, eps);
    for (size_t b = 0; b < red.per_box.size(); ++b) {
      Rational xsum = 0;
      for (const GenEntry &e : red.per_box[b]) {
        xsum += e.x;
        Rational y_total = 0, y_area = 0;
        for (const auto &[gi, t] : e.y) {
          y_total += t;
          y_area += t * g.groups[gi].rounded_r;
        }
        CHECK(y_total <= Rational(e.w_m) * e.x);
        CHECK(y_area <= e.w_r * e.x);
      }
      CHECK(xsum <= (1 + eps) * red.boxes[b].length);
    }
  }
}

TEST_CASE("integral schedule places every small job exactly once") {
  std::mt19937 rng(9);
  Rational eps(1, 2);
  Int m = 3, R = 8;
  int ran = 0;
  for (int trial = 0; trial < 25; ++trial) {
    std::vector<Job> small = random_small(rng, 1 + (int)(rng() % 12), 7);
    SmallGroups g = geometric_group(small, eps, m, R);
    std::vector<SmallBox> boxes = {{Rational(3), m, R}, {Rational(3), m, R}};
    auto sol = solve_config_lp(boxes, g, eps);
    if (!sol) continue;
    ++ran;
    GenConfigSolution red =
        reduce_windows(to_window_solution(*sol, g, eps, m, R), g, eps);
    SmallFragments frags = integral_small_schedule(red, g, small, eps);
    std::set<JobId> seen;
    auto collect = [&](const SmallFragments::Fragment &f) {
      for (const auto &[id, off] : f.starts) {
        CHECK(off >= 0);
        CHECK(seen.insert(id).second);
      }
    };
    for (const auto &f : frags.per_box) collect(f);
    collect(frags.end_block);
    collect(frags.tail);
    CHECK(seen.size() == small.size());
    CHECK(frags.deferred >= 0);
  }
  CHECK(ran > 0);
}
