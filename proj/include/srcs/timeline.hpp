#ifndef SRCS_TIMELINE_HPP
#define SRCS_TIMELINE_HPP

#include "srcs/core.hpp"

#include <map>
#include <stdexcept>

namespace srcs {

/// Piecewise-constant machine/resource usage over time. Backs the serial
/// generation scheme: each job is placed at the earliest time at which one
/// machine and r resource units are free for its whole duration.
class Timeline {
 public:
  Timeline(Int machines, Int resource) : m_(machines), R_(resource) {}

  void add(const Rational &start, const Rational &p, const Int &r) {
    auto &a = deltas_[start];
    a.first += 1;
    a.second += r;
    auto &b = deltas_[start + p];
    b.first -= 1;
    b.second -= r;
  }

  /// True iff one machine and r resource units are free on [start, start+p).
  bool fits(const Rational &start, const Rational &p, const Int &r) const {
    if (m_ < 1 || r > R_) return false;
    Int cm = 0, cr = 0;
    Rational end = start + p;
    for (auto it = deltas_.begin(); it != deltas_.end(); ++it) {
      const Rational &t = it->first;
      if (t >= end) break;
      cm += it->second.first;
      cr += it->second.second;
      // usage on [t, next) — relevant once the interval reaches `start`
      auto nx = std::next(it);
      Rational nt = (nx == deltas_.end()) ? end : nx->first;
      if (nt > start && (cm + 1 > m_ || cr + r > R_)) return false;
    }
    return true;
  }

  /// Earliest start >= t0 (optionally on the grid of multiples of step)
  /// where the job fits for its whole duration.
  Rational earliest_start(const Rational &t0, const Rational &p, const Int &r,
                          const Rational &step = 0) const {
    if (m_ < 1 || r > R_)
      throw std::invalid_argument("job can never fit on this timeline");
    auto snap = [&](Rational t) {
      if (t < t0) t = t0;
      return step == 0 ? t : ceil_to_multiple(t, step);
    };
    Rational cand = snap(t0);
    while (!fits(cand, p, r)) {
      // advance to the next event strictly after cand; usage is zero after
      // the last event, so this terminates
      auto it = deltas_.upper_bound(cand);
      if (it == deltas_.end())
        throw std::logic_error("timeline search ran past all events");
      cand = snap(it->first);
    }
    return cand;
  }

  /// Place at the earliest feasible start and record the usage.
  Rational place(const Rational &t0, const Rational &p, const Int &r,
                 const Rational &step = 0) {
    Rational s = earliest_start(t0, p, r, step);
    add(s, p, r);
    return s;
  }

  const Int &machines() const { return m_; }
  const Int &resource() const { return R_; }

 private:
  Int m_, R_;
  std::map<Rational, std::pair<Int, Int>> deltas_;
};

}  // namespace srcs

#endif
