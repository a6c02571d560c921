#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "srcs/baseline.hpp"
#include "srcs/generator.hpp"
#include "srcs/three_halves.hpp"

using namespace srcs;

namespace {

Rational p_max_of(const Instance &ins) {
  Rational p = 0;
  for (const Job &j : ins.jobs) p = std::max(p, j.p);
  return p;
}

}  // namespace

TEST_CASE("epsilon normalizes to a unit fraction") {
  CHECK(normalize_epsilon(Rational(1, 2)) == Rational(1, 2));
  CHECK(normalize_epsilon(Rational(2, 5)) == Rational(1, 3));
  CHECK(normalize_epsilon(Rational(1)) == Rational(1));
  CHECK_THROWS(normalize_epsilon(Rational(0)));
  CHECK_THROWS(normalize_epsilon(Rational(3, 2)));
}

TEST_CASE("both drivers handle trivial instances") {
  Instance empty;
  CHECK(aptas(empty, Rational(1, 2)).makespan == 0);
  CHECK(three_halves(empty, Rational(1, 2)).makespan == 0);

  Instance one;
  one.m = 1;
  one.R = 1;
  one.jobs = {{0, Rational(5, 3), 1}};
  AptasResult a = aptas(one, Rational(1, 2));
  CHECK(verify_schedule(one, a.schedule).feasible);
  AptasResult h = three_halves(one, Rational(1, 2));
  CHECK(verify_schedule(one, h.schedule).feasible);
  CHECK(!h.case_label.empty());
}

TEST_CASE("aptas output verifies and certifies on random instances") {
  for (const char *family : {"uniform", "many-small", "wide-heavy"}) {
    GeneratorParams params;
    params.family = family;
    params.n_min = 1;
    params.n_max = 9;
    for (const Instance &ins : generate_corpus(params, 31, 12)) {
      AptasResult res = aptas(ins, Rational(1, 2));
      VerificationReport rep = verify_schedule(ins, res.schedule);
      CHECK(rep.feasible);
      CHECK(rep.makespan == res.makespan);
      CertifyReport cert = certify(res, ins, Rational(1, 2));
      INFO(cert.detail);
      CHECK(cert.ok);
    }
  }
}

TEST_CASE("three-halves output verifies and labels its case") {
  for (const char *family : {"uniform", "huge-heavy"}) {
    GeneratorParams params;
    params.family = family;
    params.n_min = 1;
    params.n_max = 9;
    for (const Instance &ins : generate_corpus(params, 37, 12)) {
      AptasResult res = three_halves(ins, Rational(1, 2));
      VerificationReport rep = verify_schedule(ins, res.schedule);
      CHECK(rep.feasible);
      CHECK(rep.makespan == res.makespan);
      CHECK(!res.case_label.empty());
      CertifyReport cert = certify(res, ins, Rational(1, 2));
      INFO(cert.detail);
      CHECK(cert.ok);
    }
  }
}

TEST_CASE("aptas stays within the additive guarantee at desk scale") {
  GeneratorParams params;
  params.n_min = 1;
  params.n_max = 6;
  Rational eps(1, 2);
  for (const Instance &ins : generate_corpus(params, 41, 25)) {
    AptasResult res = aptas(ins, eps);
    Rational opt = oracle_optimal(ins).makespan;
    if (opt == 0) continue;
    CHECK(res.makespan <= (1 + 8 * eps) * opt + p_max_of(ins));
  }
}

TEST_CASE("three-halves stays within its multiplicative guarantee") {
  Rational eps(1, 2);
  for (const char *family : {"uniform", "huge-heavy"}) {
    GeneratorParams params;
    params.family = family;
    params.n_min = 1;
    params.n_max = 6;
    for (const Instance &ins : generate_corpus(params, 43, 20)) {
      AptasResult res = three_halves(ins, eps);
      Rational opt = oracle_optimal(ins).makespan;
      if (opt == 0) continue;
      CHECK(res.makespan <= (Rational(3, 2) + 8 * eps) * opt);
    }
  }
}

TEST_CASE("drivers are deterministic") {
  GeneratorParams params;
  params.n_min = params.n_max = 8;
  Instance ins = generate_instance(params, 47);
  AptasResult a1 = aptas(ins, Rational(1, 2));
  AptasResult a2 = aptas(ins, Rational(1, 2));
  CHECK(a1.schedule.starts == a2.schedule.starts);
  AptasResult h1 = three_halves(ins, Rational(1, 2));
  AptasResult h2 = three_halves(ins, Rational(1, 2));
  CHECK(h1.schedule.starts == h2.schedule.starts);
}

TEST_CASE("gap placements fit their removed jobs") {
  GeneratorParams params;
  params.family = "huge-heavy";
  params.n_min = 4;
  params.n_max = 10;
  for (const Instance &ins : generate_corpus(params, 53, 20)) {
    AptasResult res = three_halves(ins, Rational(1, 2));
    if (!res.gap_used) continue;
    CHECK(res.gap_length >= res.T_prime / 2);
    for (JobId id : res.gap_jobs) {
      CHECK(ins.job(id).p <= res.gap_length);
      // gap jobs sit at the stretched gap start
      CHECK(res.schedule.starts.at(id) ==
            (1 + Rational(1, 2)) * res.gap_start);
    }
  }
}
