#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "srcs/core.hpp"
#include "srcs/json_io.hpp"

using namespace srcs;

TEST_CASE("rational helpers") {
  CHECK(to_string(Rational(7)) == "7");
  CHECK(to_string(Rational(7, 3)) == "7/3");
  CHECK(*parse_rational("7/3") == Rational(7, 3));
  CHECK(*parse_rational("-2") == Rational(-2));
  CHECK(!parse_rational("1/0"));
  CHECK(!parse_rational("abc"));
  CHECK(floor_int(Rational(7, 3)) == 2);
  CHECK(floor_int(Rational(-7, 3)) == -3);
  CHECK(ceil_int(Rational(7, 3)) == 3);
  CHECK(ceil_int(Rational(6, 3)) == 2);
  CHECK(ceil_to_multiple(Rational(5, 2), Rational(1, 3)) == Rational(8, 3));
  CHECK(floor_to_multiple(Rational(5, 2), Rational(1, 3)) == Rational(7, 3));
  CHECK(pow_rat(Rational(1, 2), 3) == Rational(1, 8));
}

TEST_CASE("instance validation") {
  Instance ins;
  ins.m = 2;
  ins.R = 5;
  ins.jobs = {{0, Rational(1), 2}, {1, Rational(3, 2), 5}};
  CHECK_NOTHROW(ins.validate());
  CHECK(ins.job(1).r == 5);
  CHECK(ins.has_job(0));
  CHECK(!ins.has_job(7));

  Instance dup = ins;
  dup.jobs.push_back({0, Rational(1), 0});
  CHECK_THROWS_AS(dup.validate(), std::invalid_argument);

  Instance wide = ins;
  wide.jobs.push_back({2, Rational(1), 6});
  CHECK_THROWS_AS(wide.validate(), std::invalid_argument);

  Instance zero = ins;
  zero.jobs.push_back({3, Rational(0), 1});
  CHECK_THROWS_AS(zero.validate(), std::invalid_argument);
}

TEST_CASE("verify_schedule catches violations") {
  Instance ins;
  ins.m = 2;
  ins.R = 4;
  ins.jobs = {{0, Rational(2), 2}, {1, Rational(2), 2}, {2, Rational(2), 2}};

  Schedule all_at_once;
  all_at_once.starts = {{0, 0}, {1, 0}, {2, 0}};
  VerificationReport rep = verify_schedule(ins, all_at_once);
  CHECK(!rep.feasible);
  REQUIRE(rep.first_violation.has_value());

  Schedule staggered;
  staggered.starts = {{0, 0}, {1, 0}, {2, 2}};
  rep = verify_schedule(ins, staggered);
  CHECK(rep.feasible);
  CHECK(rep.makespan == 4);

  // resource-only violation: both machines free, resource short
  Instance tight;
  tight.m = 3;
  tight.R = 3;
  tight.jobs = {{0, Rational(1), 2}, {1, Rational(1), 2}};
  Schedule both;
  both.starts = {{0, 0}, {1, Rational(1, 2)}};
  rep = verify_schedule(tight, both);
  CHECK(!rep.feasible);
  CHECK(rep.first_violation->kind == ViolationKind::Resource);

  Schedule incomplete;
  incomplete.starts = {{0, 0}};
  CHECK_THROWS_AS(verify_schedule(ins, incomplete), std::invalid_argument);
}

TEST_CASE("lower bound takes the maximum of the three terms") {
  Instance ins;
  ins.m = 2;
  ins.R = 10;
  // p_max dominates
  ins.jobs = {{0, Rational(5), 1}, {1, Rational(1), 1}};
  CHECK(lower_bound_T(ins) == 5);
  // machine load dominates
  ins.jobs = {{0, Rational(3), 1}, {1, Rational(3), 1}, {2, Rational(3), 1},
              {3, Rational(3), 1}};
  CHECK(lower_bound_T(ins) == 6);
  // resource area dominates
  ins.jobs = {{0, Rational(2), 10}, {1, Rational(2), 10}, {2, Rational(2), 10}};
  CHECK(lower_bound_T(ins) == 6);
  Instance empty;
  CHECK(lower_bound_T(empty) == 0);
}

TEST_CASE("json round trips exactly") {
  Instance ins;
  ins.m = 3;
  ins.R = 7;
  ins.jobs = {{0, Rational(22, 7), 3}, {5, Rational(1), 0}};
  Instance back = instance_from_json(instance_to_json(ins));
  CHECK(back.m == ins.m);
  CHECK(back.R == ins.R);
  REQUIRE(back.jobs.size() == 2);
  CHECK(back.jobs[0].p == Rational(22, 7));
  CHECK(back.jobs[1].id == 5);

  Schedule sched;
  sched.starts = {{0, Rational(1, 3)}, {5, Rational(0)}};
  Schedule sback = schedule_from_json(schedule_to_json(sched));
  CHECK(sback.starts == sched.starts);

  CHECK_THROWS(instance_from_json("not json"));
}
