#ifndef SRCS_APTAS_HPP
#define SRCS_APTAS_HPP

#include "srcs/baseline.hpp"
#include "srcs/large_placement.hpp"
#include "srcs/simplify.hpp"
#include "srcs/small_placement.hpp"

#include <optional>
#include <string>

namespace srcs {

struct Budgets {
  long long guesses = 20000;
  long long profiles = 20000;
};

/// Additive breakdown of the emitted makespan; each piece is the actual
/// length of the corresponding block.
struct BoundCertificate {
  Rational core;           // stretched layered region plus the horizontal box
  Rational end_block;      // pushed-down narrow small jobs
  Rational tail;           // deferred small jobs
  Rational removed_block;  // jobs dropped by LP pruning, stacked on top
  Rational medium_block;
};

struct AptasResult {
  Schedule schedule;
  Rational makespan;
  Rational T;        // load lower bound
  Rational T_prime;  // accepted guess
  GapParams gap;
  BoundCertificate cert;
  LpLargeStats large_stats;
  int removed_count = 0;
  int deferred_small = 0;
  std::string case_label;  // set by the 3/2 driver only
  // gap diagnostics, set when the 3/2 driver placed removed jobs in a
  // shift gap (pre-stretch coordinates)
  bool gap_used = false;
  Rational gap_start;
  Rational gap_length;
  std::vector<JobId> gap_jobs;
};

/// eps <- 1/ceil(1/eps), the largest unit fraction not above eps.
Rational normalize_epsilon(const Rational &epsilon);

/// A placed rounded job of the on-grid skeleton (large and huge jobs, plus
/// gap-placed removed jobs in the 3/2 driver).
struct SkeletonJob {
  JobId id = 0;
  Rational start;
  Rational p;  // rounded processing time
  Int r = 0;
};

/// Shared back half of both drivers: small jobs into the skeleton's
/// per-layer residual plus the 3 eps T box, (1+eps) stretch, top block,
/// medium, de-round, verify. nullopt when the small jobs do not fit or the
/// verifier rejects the assembly.
std::optional<AptasResult> assemble_with_small(
    const Instance &ins, const Rational &epsilon, const Rational &T,
    const GapParams &gap, const LayerGrid &grid,
    const std::vector<SkeletonJob> &skeleton,
    const std::vector<JobId> &top_block, const std::set<JobId> &medium,
    const std::set<JobId> &small_ids);

/// Additive scheme: makespan <= (1 + O(eps)) OPT + p_max.
AptasResult aptas(const Instance &ins, const Rational &epsilon,
                  const Budgets &budgets = {});

struct CertifyReport {
  bool ok = true;
  std::string detail;
};

/// Recomputes the certificate pieces against their bounds and re-verifies
/// the schedule.
CertifyReport certify(const AptasResult &result, const Instance &ins,
                      const Rational &epsilon);

}  // namespace srcs

#endif
