#ifndef SRCS_SIMPLIFY_HPP
#define SRCS_SIMPLIFY_HPP

#include "srcs/core.hpp"

#include <set>
#include <vector>

namespace srcs {

/// delta = gamma_{i-1}, mu = gamma_i for the selected gap index i, where
/// gamma_0 = epsilon and gamma_{i+1} = gamma_i * epsilon^4.
struct GapParams {
  Rational epsilon;
  Rational delta;
  Rational mu;
  int gap_index = 1;
};

struct Classification {
  std::set<JobId> large;
  std::set<JobId> medium;
  std::set<JobId> small;
};

struct RoundedJob {
  JobId id = 0;
  Rational rounded_p;  // k * eps^{l+1} * T
  int level = 0;       // original p in [eps^l T, eps^{l-1} T)
  Int multiplier = 0;  // k, in {1/eps, ..., 1/eps^2}
};

struct LayerGrid {
  Rational T_prime;
  Rational step;                       // eps * delta * T
  std::vector<Rational> start_points;  // multiples of step in [0, T')
};

/// Smallest i in {1..1/eps} whose medium band [gamma_i T, gamma_{i-1} T)
/// satisfies (1/m) p(band) + (2/R) area(band) <= eps ((1/m)p(J) + (2/R)area(J)).
/// Bucketing; pigeonhole guarantees existence. Requires 1/eps integral.
GapParams select_medium_gap(const Instance &ins, const Rational &epsilon,
                            const Rational &T);

/// Partition by processing time: large p >= delta T, small p < mu T,
/// medium in between.
Classification classify(const Instance &ins, const GapParams &gap,
                        const Rational &T);

/// Greedy fragment for the medium jobs alone (caller appends it at the end
/// of the main schedule).
Schedule schedule_medium(const Instance &ins, const std::set<JobId> &medium);

/// Lemma-style geometric rounding of processing times: p in
/// [eps^l T, eps^{l-1} T) becomes ceil(p / (eps^{l+1} T)) * eps^{l+1} T.
/// Throws if a job has p > T.
std::vector<RoundedJob> round_large(const std::vector<Job> &jobs,
                                    const Rational &epsilon, const Rational &T);

/// Start-point grid S = {0, step, 2*step, ...} in [0, T'); T' must be a
/// multiple of the step.
LayerGrid build_layers(const Rational &T_prime, const Rational &epsilon,
                       const Rational &delta, const Rational &T);

/// Number of distinct rounded processing-time values possible for large
/// jobs: log_eps(delta) levels times the multiplier range.
Int rounded_value_budget(const Rational &epsilon, const Rational &delta);

}  // namespace srcs

#endif
