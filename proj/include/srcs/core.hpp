#ifndef SRCS_CORE_HPP
#define SRCS_CORE_HPP

#include "srcs/rational.hpp"

#include <map>
#include <optional>
#include <vector>

namespace srcs {

using JobId = int;

struct Job {
  JobId id = 0;
  Rational p;  // processing time, > 0
  Int r = 0;   // resource units, 0 <= r <= R of the owning instance
};

struct Instance {
  Int m = 1;  // identical machines
  Int R = 1;  // renewable resource size
  std::vector<Job> jobs;

  const Job &job(JobId id) const;
  bool has_job(JobId id) const;
  /// Throws std::invalid_argument on duplicate ids, nonpositive p, r > R, m/R < 1.
  void validate() const;
};

/// Maps job id -> start time. Complete for an instance when the key set
/// equals the instance's job-id set; partial schedules are used internally.
struct Schedule {
  std::map<JobId, Rational> starts;
};

enum class ViolationKind { Machine, Resource };

struct Violation {
  Rational time;
  ViolationKind kind;
  Rational demand;
  Rational capacity;
};

struct VerificationReport {
  bool feasible = true;
  Rational makespan = 0;
  std::optional<Violation> first_violation;
};

Rational area(const std::vector<Job> &jobs);
Rational total_p(const std::vector<Job> &jobs);

/// Max over jobs of start + p; 0 for an empty schedule.
Rational makespan(const Instance &ins, const Schedule &sched);

/// Checks the machine and resource conditions at every event point.
/// Throws std::invalid_argument if the schedule is incomplete.
VerificationReport verify_schedule(const Instance &ins, const Schedule &sched);

/// max{p_max, area(J)/R, p(J)/m}; a lower bound on the optimal makespan.
/// Returns 0 for an empty instance.
Rational lower_bound_T(const Instance &ins);

}  // namespace srcs

#endif
