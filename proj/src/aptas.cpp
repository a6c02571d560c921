#include "srcs/aptas.hpp"

#include "srcs/timeline.hpp"

#include <algorithm>

namespace srcs {

Rational normalize_epsilon(const Rational &epsilon) {
  if (epsilon <= 0 || epsilon > 1)
    throw std::invalid_argument("epsilon must be in (0, 1]");
  return Rational(1) / Rational(ceil_int(Rational(1) / epsilon));
}

namespace {

Rational p_max_of(const Instance &ins) {
  Rational p = 0;
  for (const Job &j : ins.jobs) p = std::max(p, j.p);
  return p;
}

}  // namespace

std::optional<AptasResult> assemble_with_small(
    const Instance &ins, const Rational &epsilon, const Rational &T,
    const GapParams &gap, const LayerGrid &grid,
    const std::vector<SkeletonJob> &skeleton,
    const std::vector<JobId> &top_block, const std::set<JobId> &medium,
    const std::set<JobId> &small_ids) {
  const Rational stretch = 1 + epsilon;
  size_t n_layers = grid.start_points.size();

  // residual capacity per layer under the skeleton
  std::vector<Int> used_m(n_layers, 0), used_r(n_layers, 0);
  for (const SkeletonJob &j : skeleton) {
    auto [a, b] = layer_span(grid, j.start, j.p);
    for (size_t s = a; s < b; ++s) {
      used_m[s] += 1;
      used_r[s] += j.r;
    }
  }

  std::vector<Job> small;
  for (JobId id : small_ids) small.push_back(ins.job(id));

  SmallGroups groups;
  SmallFragments frags;
  frags.per_box.resize(n_layers + 1);
  int config_count = 0;
  if (!small.empty()) {
    groups = geometric_group(small, epsilon, ins.m, ins.R);
    std::vector<SmallBox> boxes;
    for (size_t s = 0; s < n_layers; ++s) {
      if (used_m[s] > ins.m || used_r[s] > ins.R)
        throw std::logic_error("skeleton overfills a layer");
      boxes.push_back({grid.step, Int(ins.m - used_m[s]), Int(ins.R - used_r[s])});
    }
    boxes.push_back({3 * epsilon * T, ins.m, ins.R});  // horizontal box

    auto config = solve_config_lp(boxes, groups, epsilon);
    if (!config) return std::nullopt;
    GenConfigSolution win =
        to_window_solution(*config, groups, epsilon, ins.m, ins.R);
    GenConfigSolution red = reduce_windows(win, groups, epsilon);
    for (const auto &entries : red.per_box) config_count += (int)entries.size();
    frags = integral_small_schedule(red, groups, small, epsilon);
  }

  Schedule sched;
  for (const SkeletonJob &j : skeleton) sched.starts[j.id] = stretch * j.start;

  for (size_t b = 0; b < frags.per_box.size(); ++b) {
    Rational base = b < n_layers ? Rational(stretch * grid.start_points[b])
                                 : Rational(stretch * grid.T_prime);
    Rational cap = b < n_layers ? grid.step : Rational(3 * epsilon * T);
    if (frags.per_box[b].length > stretch * cap)
      throw std::logic_error("box fragment exceeds its stretched layer");
    for (const auto &[id, off] : frags.per_box[b].starts)
      sched.starts[id] = base + off;
  }

  // everything so far fits below stretch*(T' + 3 eps T); start the appended
  // blocks right after the last job actually placed
  Rational cursor = 0;
  for (const auto &[id, s] : sched.starts)
    cursor = std::max(cursor, Rational(s + ins.job(id).p));
  if (cursor > stretch * (grid.T_prime + 3 * epsilon * T))
    throw std::logic_error("core region exceeds its stretched horizon");
  BoundCertificate cert;
  cert.core = cursor;

  for (const auto &[id, off] : frags.end_block.starts)
    sched.starts[id] = cursor + off;
  cert.end_block = frags.end_block.length;
  cursor += frags.end_block.length;

  for (const auto &[id, off] : frags.tail.starts)
    sched.starts[id] = cursor + off;
  cert.tail = frags.tail.length;
  cursor += frags.tail.length;

  if (!top_block.empty()) {
    Int rsum = 0;
    Rational pmax = 0;
    for (JobId id : top_block) {
      rsum += ins.job(id).r;
      pmax = std::max(pmax, ins.job(id).p);
    }
    if (Int(top_block.size()) <= ins.m && rsum <= ins.R) {
      for (JobId id : top_block) sched.starts[id] = cursor;
      cert.removed_block = pmax;
    } else {
      // cannot start simultaneously; stack greedily (guard, see pruning bound)
      Timeline tl(ins.m, ins.R);
      Rational len = 0;
      for (JobId id : top_block) {
        const Job &j = ins.job(id);
        Rational s = tl.place(0, j.p, j.r);
        sched.starts[id] = cursor + s;
        len = std::max(len, Rational(s + j.p));
      }
      cert.removed_block = len;
    }
    cursor += cert.removed_block;
  }

  if (!medium.empty()) {
    Schedule ms = schedule_medium(ins, medium);
    Rational len = 0;
    for (const auto &[id, s] : ms.starts) {
      sched.starts[id] = cursor + s;
      len = std::max(len, Rational(s + ins.job(id).p));
    }
    cert.medium_block = len;
    cursor += len;
  }

  VerificationReport rep = verify_schedule(ins, sched);
  if (!rep.feasible) return std::nullopt;

  AptasResult res;
  res.schedule = std::move(sched);
  res.makespan = rep.makespan;
  res.T = T;
  res.T_prime = grid.T_prime;
  res.gap = gap;
  res.cert = cert;
  res.removed_count = static_cast<int>(top_block.size());
  res.deferred_small = frags.deferred;
  return res;
}

namespace {

std::map<JobId, std::pair<Rational, Int>> rounded_lookup(
    const Instance &ins, const std::vector<RoundedJob> &rounded) {
  std::map<JobId, std::pair<Rational, Int>> out;
  for (const RoundedJob &rj : rounded)
    out[rj.id] = {rj.rounded_p, ins.job(rj.id).r};
  return out;
}

std::vector<SkeletonJob> skeleton_of(
    const LargePlacement &pl,
    const std::map<JobId, std::pair<Rational, Int>> &info) {
  std::vector<SkeletonJob> out;
  for (const auto &[id, s] : pl.wide_starts)
    out.push_back({id, s, info.at(id).first, info.at(id).second});
  for (const auto &[id, s] : pl.starts)
    out.push_back({id, s, info.at(id).first, info.at(id).second});
  return out;
}

std::optional<AptasResult> attempt(const Instance &ins, const Rational &epsilon,
                                   const Rational &T, const GapParams &gap,
                                   const Classification &cls,
                                   const std::vector<RoundedJob> &rounded,
                                   const Budgets &budgets, const Int &l) {
  LayerGrid grid = build_layers(Rational(l) * epsilon * T, epsilon, gap.delta, T);
  auto info = rounded_lookup(ins, rounded);

  LargeContext ctx;
  ctx.grid = grid;
  ctx.m = ins.m;
  ctx.R = ins.R;
  ctx.epsilon = epsilon;
  ctx.gamma = 1;
  for (const RoundedJob &rj : rounded)
    ctx.jobs.push_back({rj.id, rj.rounded_p, ins.job(rj.id).r});

  std::optional<AptasResult> found;
  auto try_placement = [&](const LargePlacement &pl,
                           const LpLargeStats &stats) -> bool {
    std::vector<JobId> top(pl.removed.begin(), pl.removed.end());
    auto res = assemble_with_small(ins, epsilon, T, gap, grid, skeleton_of(pl, info),
                                   top, cls.medium, cls.small);
    if (!res) return false;
    res->large_stats = stats;
    found = std::move(res);
    return true;
  };

  if (ctx.jobs.empty()) {
    try_placement(LargePlacement{}, LpLargeStats{});
    return found;
  }

  // LP over every (job, start) pair is only tractable on a modest grid
  bool lp_path =
      ctx.jobs.size() * grid.start_points.size() <= 4000 && ins.m <= 4096;
  if (lp_path) {
    for_each_large_candidate(
        ctx, budgets.guesses, budgets.profiles,
        [&](const LargeCandidate &cand) {
          LpLargeStats stats;
          auto pl =
              solve_profile(ctx, cand.narrow, cand.wide_starts, cand.profile, &stats);
          if (!pl) return false;
          return try_placement(*pl, stats);
        });
  }
  if (!found) {
    if (auto pl = greedy_large_placement(ctx)) try_placement(*pl, LpLargeStats{});
  }
  return found;
}

}  // namespace

AptasResult aptas(const Instance &ins, const Rational &eps_in,
                  const Budgets &budgets) {
  ins.validate();
  Rational epsilon = normalize_epsilon(eps_in);
  AptasResult empty;
  if (ins.jobs.empty()) return empty;

  Rational T = lower_bound_T(ins);
  GapParams gap = select_medium_gap(ins, epsilon, T);
  Classification cls = classify(ins, gap, T);

  std::vector<Job> large;
  for (JobId id : cls.large) large.push_back(ins.job(id));
  std::vector<RoundedJob> rounded = round_large(large, epsilon, T);

  Int linv = num(Rational(1) / epsilon);
  Int lmax = 16 * linv;

  auto probe = [&](const Int &l) {
    return attempt(ins, epsilon, T, gap, cls, rounded, budgets, l);
  };

  // ascending doubling, then binary refinement on the open interval
  Int lo = linv - 1;  // largest known-failing guess
  Int hi = linv;
  std::optional<AptasResult> best;
  while (true) {
    best = probe(hi);
    if (best) break;
    lo = hi;
    if (hi == lmax)
      throw std::runtime_error("no T' in the search range produced a schedule");
    hi = std::min(Int(2 * hi), lmax);
  }
  while (hi - lo > 1) {
    Int mid = (hi + lo) / 2;
    auto r = probe(mid);
    if (r) {
      hi = mid;
      best = std::move(r);
    } else {
      lo = mid;
    }
  }
  return std::move(*best);
}

CertifyReport certify(const AptasResult &result, const Instance &ins,
                      const Rational &eps_in) {
  CertifyReport rep;
  auto fail = [&](const std::string &msg) {
    rep.ok = false;
    if (!rep.detail.empty()) rep.detail += "; ";
    rep.detail += msg;
  };
  if (ins.jobs.empty()) return rep;
  Rational epsilon = normalize_epsilon(eps_in);

  VerificationReport ver = verify_schedule(ins, result.schedule);
  if (!ver.feasible) fail("schedule infeasible");
  if (ver.feasible && ver.makespan != result.makespan)
    fail("recorded makespan does not match the schedule");

  const BoundCertificate &c = result.cert;
  if (c.removed_block > p_max_of(ins)) fail("removed block exceeds p_max");
  if (c.medium_block > 4 * epsilon * result.T)
    fail("medium block exceeds 4 eps T");
  Rational horizon_cap =
      result.case_label.empty()
          ? Rational(result.T_prime + 3 * epsilon * result.T)
          : Rational(Rational(3, 2) * result.T_prime +
                     epsilon * result.gap.delta * result.T +
                     3 * epsilon * result.T);
  if (c.core > (1 + epsilon) * horizon_cap) fail("core exceeds its bound");
  if (result.makespan >
      c.core + c.end_block + c.tail + c.removed_block + c.medium_block)
    fail("makespan exceeds the certified sum");
  return rep;
}

}  // namespace srcs
