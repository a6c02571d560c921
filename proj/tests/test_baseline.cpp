#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "srcs/baseline.hpp"
#include "srcs/generator.hpp"

using namespace srcs;

TEST_CASE("greedy schedules are feasible and meet the load bound") {
  for (const char *family : {"uniform", "wide-heavy", "many-small", "huge-heavy"}) {
    GeneratorParams params;
    params.family = family;
    params.n_min = 0;
    params.n_max = 25;
    params.m = 3;
    params.R = 10;
    for (const Instance &ins : generate_corpus(params, 7, 100)) {
      Schedule sched = greedy_list_schedule(ins, default_order(ins));
      VerificationReport rep = verify_schedule(ins, sched);
      CHECK(rep.feasible);
      CHECK(rep.makespan <= greedy_bound(ins));
    }
  }
}

TEST_CASE("default order is a permutation by non-increasing p") {
  GeneratorParams params;
  params.n_min = params.n_max = 12;
  Instance ins = generate_instance(params, 3);
  JobOrder order = default_order(ins);
  REQUIRE(order.size() == ins.jobs.size());
  for (size_t i = 1; i < order.size(); ++i) {
    const Job &a = ins.job(order[i - 1]), &b = ins.job(order[i]);
    CHECK((a.p > b.p || (a.p == b.p && a.id < b.id)));
  }
}

TEST_CASE("oracle finds known optima") {
  Instance ins;
  ins.m = 2;
  ins.R = 2;
  // pairs must alternate on the resource; optimum staggers them
  ins.jobs = {{0, Rational(2), 2}, {1, Rational(2), 2}, {2, Rational(2), 0},
              {3, Rational(2), 0}};
  OracleResult res = oracle_optimal(ins);
  CHECK(res.makespan == 4);
  CHECK(verify_schedule(ins, res.schedule).feasible);

  Instance single;
  single.m = 1;
  single.R = 1;
  single.jobs = {{0, Rational(5, 3), 1}};
  CHECK(oracle_optimal(single).makespan == Rational(5, 3));

  Instance empty;
  empty.m = 1;
  empty.R = 1;
  CHECK(oracle_optimal(empty).makespan == 0);
}

TEST_CASE("oracle refuses oversized instances") {
  GeneratorParams params;
  params.n_min = params.n_max = 9;
  Instance ins = generate_instance(params, 1);
  CHECK_THROWS(oracle_optimal(ins, 8));
}

TEST_CASE("serial and parallel oracle sweeps agree") {
  GeneratorParams params;
  params.n_min = 1;
  params.n_max = 6;
  for (const Instance &ins : generate_corpus(params, 11, 25)) {
    OracleResult a = oracle_optimal(ins);
    OracleResult b = oracle_optimal_serial(ins);
    CHECK(a.makespan == b.makespan);
  }
}

TEST_CASE("oracle never beats a verified schedule") {
  GeneratorParams params;
  params.n_min = 1;
  params.n_max = 6;
  for (const Instance &ins : generate_corpus(params, 23, 40)) {
    Schedule sched = greedy_list_schedule(ins, default_order(ins));
    OracleResult res = oracle_optimal(ins);
    CHECK(res.makespan <= verify_schedule(ins, sched).makespan);
    CHECK(res.makespan >= lower_bound_T(ins));
  }
}
