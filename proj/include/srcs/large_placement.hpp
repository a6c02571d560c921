#ifndef SRCS_LARGE_PLACEMENT_HPP
#define SRCS_LARGE_PLACEMENT_HPP

#include "srcs/lp.hpp"
#include "srcs/simplify.hpp"

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>

namespace srcs {

/// Raised when a guess enumeration exceeds its configured budget.
struct BudgetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A large job after rounding: p is a multiple of the layer step.
struct GridJob {
  JobId id = 0;
  Rational p;
  Int r = 0;
};

/// Per-layer guess: machine count for narrow large jobs and their resource
/// bound rounded to the geometric grid R/(1+1/m)^t.
struct Profile {
  std::vector<Int> m_hat;
  std::vector<Rational> R_hat;
};

struct LargePlacement {
  std::map<JobId, Rational> starts;       // narrow large jobs kept
  std::set<JobId> removed;                // J'
  std::map<JobId, Rational> wide_starts;  // wide large jobs
};

/// Structure counters asserted on every LP_large solve.
struct LpLargeStats {
  int fractional_jobs = 0;
  int support = 0;
  int rows = 0;
  int pruned_for_profile = 0;
};

/// Shared inputs of the large-job placement for one T' guess.
struct LargeContext {
  LayerGrid grid;
  Int m = 1;
  Int R = 1;
  Rational epsilon;
  Rational gamma;                 // 1 for the APTAS path
  std::vector<GridJob> jobs;      // rounded large jobs
  // capacity already consumed per layer by fixed jobs (huge jobs in the
  // 3/2 path): (machines, resource)
  std::vector<std::pair<Int, Int>> base_usage;
};

/// alpha = gamma / (3|S| + 1); makes 3|S| alpha R < gamma R by construction.
Rational choose_alpha(const Rational &gamma, size_t layer_count);

/// Partition by the threshold alpha * R; ties go wide.
std::pair<std::vector<GridJob>, std::vector<GridJob>> split_wide_narrow(
    const std::vector<GridJob> &large, const Rational &alpha, const Int &R);

/// Geometric resource levels {R/(1+1/m)^t : t = 0..ceil(log_{1+1/m} R)},
/// with an explicit 0 when the smallest level is still >= 1.
std::vector<Rational> resource_levels(const Int &R, const Int &m);

/// All self-feasible assignments of the wide jobs to start points ending by
/// T', against the residual capacity left by base_usage. Throws BudgetError.
std::vector<std::map<JobId, Rational>> enumerate_wide_placements(
    const LargeContext &ctx, const std::vector<GridJob> &wide,
    long long budget);

/// Cartesian product of per-layer machine counts and resource levels for the
/// narrow jobs, given the residual after wide placement. Throws BudgetError.
std::vector<Profile> enumerate_profiles(
    const LargeContext &ctx, const std::map<JobId, Rational> &wide_starts,
    const std::vector<GridJob> &wide, long long budget);

/// Profile dominating an existing placement's per-layer narrow usage,
/// rounded up to the geometric grid (heuristic mode above the budget).
Profile profile_from_usage(const LargeContext &ctx,
                           const std::vector<GridJob> &narrow,
                           const std::map<JobId, Rational> &narrow_starts);

/// LP_large: per-layer resource and machine rows against the profile plus a
/// coverage row per narrow job. var_of maps (job index, layer index) to the
/// LP variable (-1 if the job cannot start there).
struct LpLargeModel {
  LpModel model;
  std::vector<std::vector<int>> var_of;
};
LpLargeModel build_lp_large(const LargeContext &ctx,
                            const std::vector<GridJob> &narrow,
                            const Profile &profile);

/// Lemma-5 pruning: fractional jobs removed, then per layer the widest job
/// removed at most once until usage <= R_hat/(1+1/m). Throws logic_error if
/// one removal per layer does not suffice.
LargePlacement prune_solution(const LargeContext &ctx,
                              const std::vector<GridJob> &narrow,
                              const Profile &profile,
                              const LpLargeModel &lp,
                              const BasicSolution &sol, LpLargeStats *stats);

/// Solve one (wide placement, profile) guess end to end; nullopt when the
/// LP is infeasible.
std::optional<LargePlacement> solve_profile(
    const LargeContext &ctx, const std::vector<GridJob> &narrow,
    const std::map<JobId, Rational> &wide_starts, const Profile &profile,
    LpLargeStats *stats);

struct LargeCandidate {
  std::map<JobId, Rational> wide_starts;
  Profile profile;
  std::vector<GridJob> narrow;
};

/// Drives the guess loop: a placement-derived candidate first (always
/// available when the jobs fit below T' at all), then full enumeration when
/// it fits the budgets. Calls fn until it returns true; returns whether any
/// call did.
bool for_each_large_candidate(const LargeContext &ctx, long long budget_guesses,
                              long long budget_profiles,
                              const std::function<bool(const LargeCandidate &)> &fn);

/// Earliest-fit placement of every job in ctx.jobs on the grid, no removals;
/// nullopt when some job has no slot below T'. Heuristic path for instances
/// whose LP would be too large.
std::optional<LargePlacement> greedy_large_placement(const LargeContext &ctx);

/// Layer indices [first, last) covered by a job starting at s.
std::pair<size_t, size_t> layer_span(const LayerGrid &grid, const Rational &start,
                                     const Rational &p);

}  // namespace srcs

#endif
