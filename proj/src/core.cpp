#include "srcs/core.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace srcs {

const Job &Instance::job(JobId id) const {
  for (const auto &j : jobs)
    if (j.id == id) return j;
  throw std::invalid_argument("unknown job id " + std::to_string(id));
}

bool Instance::has_job(JobId id) const {
  return std::any_of(jobs.begin(), jobs.end(),
                     [&](const Job &j) { return j.id == id; });
}

void Instance::validate() const {
  if (m < 1) throw std::invalid_argument("machine count must be positive");
  if (R < 1) throw std::invalid_argument("resource size must be positive");
  std::set<JobId> seen;
  for (const auto &j : jobs) {
    if (!seen.insert(j.id).second)
      throw std::invalid_argument("duplicate job id " + std::to_string(j.id));
    if (j.p <= 0)
      throw std::invalid_argument("job " + std::to_string(j.id) +
                                  " has nonpositive processing time");
    if (j.r < 0 || j.r > R)
      throw std::invalid_argument("job " + std::to_string(j.id) +
                                  " resource requirement outside [0, R]");
  }
}

Rational area(const std::vector<Job> &jobs) {
  Rational a = 0;
  for (const auto &j : jobs) a += Rational(j.r) * j.p;
  return a;
}

Rational total_p(const std::vector<Job> &jobs) {
  Rational s = 0;
  for (const auto &j : jobs) s += j.p;
  return s;
}

Rational makespan(const Instance &ins, const Schedule &sched) {
  Rational ms = 0;
  for (const auto &j : ins.jobs) {
    auto it = sched.starts.find(j.id);
    if (it == sched.starts.end())
      throw std::invalid_argument("schedule misses job " + std::to_string(j.id));
    ms = std::max(ms, Rational(it->second + j.p));
  }
  return ms;
}

VerificationReport verify_schedule(const Instance &ins, const Schedule &sched) {
  VerificationReport rep;
  // Demand is piecewise constant between event points, so checking the
  // interval starting at each event point covers all times.
  std::set<Rational> events;
  for (const auto &j : ins.jobs) {
    auto it = sched.starts.find(j.id);
    if (it == sched.starts.end())
      throw std::invalid_argument("schedule misses job " + std::to_string(j.id));
    if (it->second < 0)
      throw std::invalid_argument("negative start for job " + std::to_string(j.id));
    events.insert(it->second);
    events.insert(it->second + j.p);
  }
  rep.makespan = makespan(ins, sched);
  for (const Rational &t : events) {
    Int machines = 0;
    Int resource = 0;
    for (const auto &j : ins.jobs) {
      const Rational &s = sched.starts.at(j.id);
      if (s <= t && t < s + j.p) {
        machines += 1;
        resource += j.r;
      }
    }
    if (machines > ins.m) {
      rep.feasible = false;
      rep.first_violation = Violation{t, ViolationKind::Machine,
                                      Rational(machines), Rational(ins.m)};
      return rep;
    }
    if (resource > ins.R) {
      rep.feasible = false;
      rep.first_violation = Violation{t, ViolationKind::Resource,
                                      Rational(resource), Rational(ins.R)};
      return rep;
    }
  }
  return rep;
}

Rational lower_bound_T(const Instance &ins) {
  if (ins.jobs.empty()) return 0;
  Rational pmax = 0;
  for (const auto &j : ins.jobs) pmax = std::max(pmax, j.p);
  Rational t = pmax;
  t = std::max(t, Rational(area(ins.jobs) / ins.R));
  t = std::max(t, Rational(total_p(ins.jobs) / ins.m));
  return t;
}

}  // namespace srcs
