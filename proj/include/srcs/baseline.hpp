#ifndef SRCS_BASELINE_HPP
#define SRCS_BASELINE_HPP

#include "srcs/core.hpp"

#include <vector>

namespace srcs {

/// Priority list for list scheduling; must be a permutation of the
/// instance's job ids.
using JobOrder = std::vector<JobId>;

/// Default priority: non-increasing processing time, ties by id.
JobOrder default_order(const Instance &ins);

/// Serial generation scheme: walk the list and start each job at the
/// earliest time at which a machine and its resource share are free for the
/// whole duration. Always feasible; makespan is at most
/// (1/m) p(J) + (2/R) area(J) + p_max.
Schedule greedy_list_schedule(const Instance &ins, const JobOrder &order);

/// The greedy makespan bound above, as an exact rational.
Rational greedy_bound(const Instance &ins);

struct OracleResult {
  Schedule schedule;
  Rational makespan;
};

/// Ground-truth optimum for tiny instances: minimum serial-generation
/// makespan over all job orders (the active schedules spanned by the serial
/// scheme contain an optimum). Throws if n exceeds the cap.
OracleResult oracle_optimal(const Instance &ins, int cap = 8);

/// Serial reference for the OpenMP permutation sweep; same result.
OracleResult oracle_optimal_serial(const Instance &ins, int cap = 8);

}  // namespace srcs

#endif
