#include "srcs/baseline.hpp"

#include "srcs/timeline.hpp"

#include <algorithm>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace srcs {

JobOrder default_order(const Instance &ins) {
  JobOrder order;
  for (const auto &j : ins.jobs) order.push_back(j.id);
  std::sort(order.begin(), order.end(), [&](JobId a, JobId b) {
    const Job &ja = ins.job(a), &jb = ins.job(b);
    if (ja.p != jb.p) return ja.p > jb.p;
    return a < b;
  });
  return order;
}

Schedule greedy_list_schedule(const Instance &ins, const JobOrder &order) {
  if (order.size() != ins.jobs.size())
    throw std::invalid_argument("order is not a permutation of the job set");
  Timeline tl(ins.m, ins.R);
  Schedule sched;
  for (JobId id : order) {
    const Job &j = ins.job(id);
    sched.starts[id] = tl.place(0, j.p, j.r);
  }
  return sched;
}

Rational greedy_bound(const Instance &ins) {
  if (ins.jobs.empty()) return 0;
  Rational pmax = 0;
  for (const auto &j : ins.jobs) pmax = std::max(pmax, j.p);
  return total_p(ins.jobs) / ins.m + Rational(2) * area(ins.jobs) / ins.R +
         pmax;
}

namespace {

long long factorial(int n) {
  long long f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// k-th permutation of `base` in lexicographic order (factorial number system)
JobOrder kth_permutation(std::vector<JobId> base, long long k) {
  JobOrder out;
  int n = static_cast<int>(base.size());
  for (int i = n; i >= 1; --i) {
    long long f = factorial(i - 1);
    long long idx = k / f;
    k %= f;
    out.push_back(base[static_cast<size_t>(idx)]);
    base.erase(base.begin() + idx);
  }
  return out;
}

OracleResult oracle_impl(const Instance &ins, int cap, bool parallel) {
  if (static_cast<int>(ins.jobs.size()) > cap)
    throw std::invalid_argument("oracle refused: instance exceeds cap of " +
                                std::to_string(cap) + " jobs");
  std::vector<JobId> base;
  for (const auto &j : ins.jobs) base.push_back(j.id);
  std::sort(base.begin(), base.end());
  if (base.empty()) return {Schedule{}, Rational(0)};

  long long total = factorial(static_cast<int>(base.size()));
  Rational best_ms;
  long long best_k = -1;

#ifdef _OPENMP
  if (parallel) {
#pragma omp parallel
    {
      Rational local_ms;
      long long local_k = -1;
#pragma omp for schedule(dynamic, 64)
      for (long long k = 0; k < total; ++k) {
        Schedule s = greedy_list_schedule(ins, kth_permutation(base, k));
        Rational ms = makespan(ins, s);
        if (local_k < 0 || ms < local_ms) {
          local_ms = ms;
          local_k = k;
        }
      }
#pragma omp critical
      {
        // smallest permutation index among equal makespans, so the result
        // matches the serial sweep exactly
        if (local_k >= 0 &&
            (best_k < 0 || local_ms < best_ms ||
             (local_ms == best_ms && local_k < best_k))) {
          best_ms = local_ms;
          best_k = local_k;
        }
      }
    }
  }
#else
  (void)parallel;
#endif
  if (best_k < 0) {
    for (long long k = 0; k < total; ++k) {
      Schedule s = greedy_list_schedule(ins, kth_permutation(base, k));
      Rational ms = makespan(ins, s);
      if (best_k < 0 || ms < best_ms) {
        best_ms = ms;
        best_k = k;
      }
    }
  }
  Schedule best = greedy_list_schedule(ins, kth_permutation(base, best_k));
  return {best, best_ms};
}

}  // namespace

OracleResult oracle_optimal(const Instance &ins, int cap) {
  return oracle_impl(ins, cap, true);
}

OracleResult oracle_optimal_serial(const Instance &ins, int cap) {
  return oracle_impl(ins, cap, false);
}

}  // namespace srcs
