#ifndef SRCS_THREE_HALVES_HPP
#define SRCS_THREE_HALVES_HPP

#include "srcs/aptas.hpp"

#include <optional>
#include <string>

namespace srcs {

/// One guess of the shifted-schedule construction. The driver owns a
/// concrete base schedule, so every quantity of the case analysis is
/// computed from it rather than guessed.
struct ShiftContext {
  Rational T_prime;
  int k = 0;           // removed large jobs to fit into the gap
  Rational gamma;      // 1/(3|S|+4)
  Rational tau;
  std::optional<Rational> rho, rho_prime, tau_prime, iota;
  std::string case_label;  // 1.1, 1.2.1, 1.2.2, 2.1.1, 2.1.2, 2.2.1, 2.2.2
};

struct GapPlacement {
  Rational gap_start;
  Rational gap_length;  // ceil(T'/2) to the layer grid
  std::map<JobId, Rational> starts;  // removed jobs, all at gap_start
};

/// Huge iff p > T'/2 (boundary stays large).
std::pair<std::set<JobId>, std::set<JobId>> classify_huge(
    const std::vector<Job> &large, const Rational &T_prime);

/// All case-labelled contexts for a base skeleton, ascending in tau.
std::vector<ShiftContext> build_shift_candidates(
    const std::vector<SkeletonJob> &base, const LayerGrid &grid, int k,
    const Rational &gamma, const Rational &T_prime,
    const std::set<JobId> &huge_ids, const Int &m, const Int &R);

/// Executes the context's shifts on the base skeleton and scans the gap for
/// k free machines and gamma R free resource at every event point; places
/// the removed jobs at the gap start. nullopt when the scan fails.
std::optional<std::pair<std::vector<SkeletonJob>, GapPlacement>> apply_shift(
    const ShiftContext &ctx, const std::vector<SkeletonJob> &base,
    const std::set<JobId> &huge_ids, const std::vector<SkeletonJob> &removed,
    const Int &m, const Int &R, const Rational &step);

/// Absolute scheme: makespan <= (3/2 + O(eps)) OPT.
AptasResult three_halves(const Instance &ins, const Rational &epsilon,
                         const Budgets &budgets = {});

}  // namespace srcs

#endif
