#ifndef SRCS_SMALL_PLACEMENT_HPP
#define SRCS_SMALL_PLACEMENT_HPP

#include "srcs/core.hpp"
#include "srcs/lp.hpp"

#include <map>
#include <optional>
#include <vector>

namespace srcs {

/// One rounded small-job type: a group of a dyadic resource class.
struct SmallGroup {
  int cls = 0;    // 1..ceil(log2 m); 0 is the bottom class (r <= R/2^ceil(log2 m))
  int index = 0;  // group within the class, by increasing r
  Int rounded_r = 0;   // max original r in the group
  Rational total_p;    // aggregate processing time
  std::vector<JobId> members;  // stack order (increasing r, then id)
};

struct SmallGroups {
  std::vector<SmallGroup> groups;
  std::map<JobId, size_t> group_of;
};

/// Dyadic classes, each stacked by increasing r and cut into at most 1/eps
/// groups at job boundaries; empty groups are dropped.
SmallGroups geometric_group(const std::vector<Job> &small, const Rational &epsilon,
                            const Int &m, const Int &R);

/// Exact value of sum_i eps p(class i)/2^{i-1} + eps p(bottom)/m; asserts the
/// closed-form bound 2 eps area/R + eps p/m over the grouped jobs.
Rational bound_grouping_overflow(const SmallGroups &groups,
                                 const std::vector<Job> &small,
                                 const Rational &epsilon, const Int &m,
                                 const Int &R);

/// A box is one layer's residual capacity (or the horizontal box at the end
/// of the layered region, with full capacity and length 3 eps T).
struct SmallBox {
  Rational length;
  Int m_cap = 0;
  Int R_cap = 0;
};

/// Multiset of group indices runnable simultaneously inside a box.
struct Configuration {
  std::map<size_t, int> counts;  // group index -> multiplicity

  Int resource(const std::vector<SmallGroup> &groups) const;
  Int machines() const;
  bool operator<(const Configuration &o) const { return counts < o.counts; }
  bool operator==(const Configuration &o) const { return counts == o.counts; }
};

struct ConfigSolution {
  std::vector<SmallBox> boxes;
  // per box: (configuration, processing time), zero entries dropped
  std::vector<std::vector<std::pair<Configuration, Rational>>> usage;
};

/// Fractional covering of the group processing times by configurations, box
/// time capped at (1+eps) length. Column generation; pricing is an exact
/// knapsack-with-cardinality DP per box. nullopt when infeasible, meaning
/// T' or the residual profile cannot hold the small jobs.
/// `uncovered_out`, when set, receives the optimal total uncovered
/// processing time (0 iff a full covering exists).
std::optional<ConfigSolution> solve_config_lp(const std::vector<SmallBox> &boxes,
                                              const SmallGroups &groups,
                                              const Rational &epsilon,
                                              Rational *uncovered_out = nullptr);

/// Reference solver: enumerate every configuration of every box. Intended
/// for cross-checking column generation on tiny inputs.
std::optional<ConfigSolution> solve_config_lp_enumerated(
    const std::vector<SmallBox> &boxes, const SmallGroups &groups,
    const Rational &epsilon, Rational *uncovered_out = nullptr);

/// Generalized configurations: wide part of a configuration plus the window
/// (residual capacity) next to it; narrow mass is tracked per window.
struct GenEntry {
  Configuration wide;
  Rational w_r;            // window resource
  Int w_m = 0;             // window machines
  Rational x;              // processing time of the generalized configuration
  std::map<size_t, Rational> y;  // narrow group index -> time in this window
};

struct GenConfigSolution {
  std::vector<SmallBox> boxes;
  std::vector<std::vector<GenEntry>> per_box;
  // narrow mass pushed to the end block of capacity (m, R)
  std::map<size_t, Rational> end_window;
  Int m = 0;
  Int R = 0;
};

/// Wide type threshold: rounded r >= eps R.
bool is_wide(const SmallGroup &g, const Rational &epsilon, const Int &R);

/// Aggregate equal wide parts per box into generalized configurations with
/// their main windows; narrow contributions become window mass.
GenConfigSolution to_window_solution(const ConfigSolution &sol,
                                     const SmallGroups &groups,
                                     const Rational &epsilon, const Int &m,
                                     const Int &R);

/// Per box, stacks windows of equal machine count (widest at the bottom),
/// slides the window stack down one eps P segment, pushes the bottom
/// segment's narrow mass to the end block, then re-vertexizes the support.
GenConfigSolution reduce_windows(const GenConfigSolution &sol,
                                 const SmallGroups &groups,
                                 const Rational &epsilon);

/// Statistics asserted on the reduced solution.
struct WindowStats {
  int support = 0;
  int narrow_types = 0;
  int wide_types = 0;
};
WindowStats window_stats(const GenConfigSolution &sol, const SmallGroups &groups,
                         const Rational &epsilon);

/// Concrete placement of the original small jobs.
struct SmallFragments {
  struct Fragment {
    std::map<JobId, Rational> starts;  // offsets within the fragment
    Rational length;
  };
  std::vector<Fragment> per_box;  // parallel to boxes
  Fragment end_block;             // full-capacity block for pushed-down mass
  Fragment tail;                  // deferred jobs, greedy on (m, R)
  int deferred = 0;
};

/// Walk each box's generalized configurations sequentially: wide slots are
/// filled per type queue, narrow jobs go to their windows via a capped
/// greedy; anything crossing a boundary is deferred to the tail.
SmallFragments integral_small_schedule(const GenConfigSolution &sol,
                                       const SmallGroups &groups,
                                       const std::vector<Job> &small,
                                       const Rational &epsilon);

}  // namespace srcs

#endif
