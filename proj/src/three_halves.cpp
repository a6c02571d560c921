#include "srcs/three_halves.hpp"

#include <algorithm>

namespace srcs {

std::pair<std::set<JobId>, std::set<JobId>> classify_huge(
    const std::vector<Job> &large, const Rational &T_prime) {
  std::set<JobId> huge, regular;
  Rational half = T_prime / 2;
  for (const Job &j : large) {
    if (j.p > half)
      huge.insert(j.id);
    else
      regular.insert(j.id);
  }
  return {huge, regular};
}

namespace {

bool is_huge(const std::set<JobId> &huge_ids, JobId id) {
  return huge_ids.count(id) > 0;
}

/// Minimum free (machines, resource) over [g, g + len) at event points.
std::pair<Int, Int> min_free(const std::vector<SkeletonJob> &sk,
                             const Rational &g, const Rational &len,
                             const Int &m, const Int &R) {
  std::vector<Rational> events{g};
  Rational hi = g + len;
  for (const SkeletonJob &j : sk)
    if (j.start > g && j.start < hi) events.push_back(j.start);
  Int fm = m, fr = R;
  for (const Rational &t : events) {
    Int um = 0, ur = 0;
    for (const SkeletonJob &j : sk) {
      if (j.start <= t && t < Rational(j.start + j.p)) {
        um += 1;
        ur += j.r;
      }
    }
    fm = std::min(fm, Int(m - um));
    fr = std::min(fr, Int(R - ur));
  }
  return {fm, fr};
}

/// Sum of r over jobs starting before T'/2 whose end satisfies cmp against t.
Int r_pre(const std::vector<SkeletonJob> &sk, const Rational &half,
          const Rational &t, bool strict) {
  Int total = 0;
  for (const SkeletonJob &j : sk) {
    if (j.start >= half) continue;
    Rational end = j.start + j.p;
    if (strict ? end > t : end >= t) total += j.r;
  }
  return total;
}

int count_pre_gt(const std::vector<SkeletonJob> &sk, const Rational &half,
                 const Rational &t) {
  int c = 0;
  for (const SkeletonJob &j : sk)
    if (j.start < half && Rational(j.start + j.p) > t) ++c;
  return c;
}

}  // namespace

std::vector<ShiftContext> build_shift_candidates(
    const std::vector<SkeletonJob> &base, const LayerGrid &grid, int k,
    const Rational &gamma, const Rational &T_prime,
    const std::set<JobId> &huge_ids, const Int &m, const Int &R) {
  std::vector<ShiftContext> out;
  const Rational step = grid.step;
  const Rational half = T_prime / 2;
  const Rational gR = gamma * R;

  auto first_grid = [&](const Rational &from, const Rational &to,
                        const std::function<bool(const Rational &)> &pred)
      -> std::optional<Rational> {
    for (Rational s = ceil_to_multiple(from, step); s <= to; s += step)
      if (pred(s)) return s;
    return std::nullopt;
  };

  for (Rational tau = ceil_to_multiple(half, step); tau <= T_prime;
       tau += step) {
    if (Int(count_pre_gt(base, half, tau)) > m - k) continue;

    ShiftContext ctx;
    ctx.T_prime = T_prime;
    ctx.k = k;
    ctx.gamma = gamma;
    ctx.tau = tau;

    // first point past which at most k early jobs still run
    auto rho = first_grid(tau, T_prime, [&](const Rational &s) {
      return count_pre_gt(base, half, s) <= k;
    });
    if (!rho) continue;  // cannot happen while the base ends by T'

    if (r_pre(base, half, tau, false) <= Rational(R - gR)) {
      // late large jobs crossing tau
      Int r_post = 0;
      std::map<Rational, Int> r_by_finish;
      for (const SkeletonJob &j : base) {
        if (is_huge(huge_ids, j.id)) continue;
        Rational end = j.start + j.p;
        if (j.start >= half && j.start < tau && end > tau) {
          r_post += j.r;
          r_by_finish[end] += j.r;
        }
      }
      if (r_post <= Rational(R - gR)) {
        ctx.case_label = "1.1";
      } else {
        std::optional<Rational> iota;
        for (const auto &[f, rsum] : r_by_finish)
          if (rsum >= gR) {
            iota = f;
            break;
          }
        if (!iota) continue;
        ctx.iota = iota;
        if (*rho >= *iota) {
          ctx.case_label = "1.2.1";
        } else {
          ctx.case_label = "1.2.2";
          ctx.rho = rho;
        }
      }
    } else {
      // large jobs running across T'/2
      Int r_half = 0;
      for (const SkeletonJob &j : base)
        if (!is_huge(huge_ids, j.id) && j.start < half &&
            Rational(j.start + j.p) > half)
          r_half += j.r;
      if (r_half >= 2 * gR) {
        auto tau2 = first_grid(tau, T_prime, [&](const Rational &s) {
          Int still = 0;
          for (const SkeletonJob &j : base)
            if (!is_huge(huge_ids, j.id) && j.start < half &&
                Rational(j.start + j.p) > s)
              still += j.r;
          return Rational(r_half - still) >= gR;
        });
        if (!tau2) continue;
        ctx.tau_prime = tau2;
        if (*rho >= *tau2) {
          ctx.case_label = "2.1.1";
        } else {
          ctx.case_label = "2.1.2";
          ctx.rho = rho;
        }
      } else {
        ctx.rho = rho;
        if (r_pre(base, half, *rho, false) >= gR) {
          ctx.case_label = "2.2.1";
        } else {
          auto rho2 = first_grid(tau, *rho, [&](const Rational &s) {
            return r_pre(base, half, s, false) <= gR;
          });
          if (!rho2) continue;
          ctx.case_label = "2.2.2";
          ctx.rho_prime = rho2;
        }
      }
    }
    out.push_back(std::move(ctx));
  }
  return out;
}

std::optional<std::pair<std::vector<SkeletonJob>, GapPlacement>> apply_shift(
    const ShiftContext &ctx, const std::vector<SkeletonJob> &base,
    const std::set<JobId> &huge_ids, const std::vector<SkeletonJob> &removed,
    const Int &m, const Int &R, const Rational &step) {
  const Rational T_prime = ctx.T_prime;
  const Rational half = T_prime / 2;
  const Rational delta = ceil_to_multiple(half, step);
  const Rational tau = ctx.tau;

  std::vector<SkeletonJob> shifted = base;
  for (SkeletonJob &j : shifted) {
    Rational end = j.start + j.p;
    if (is_huge(huge_ids, j.id)) {
      if (j.start < tau && end > tau) j.start = T_prime - j.p;
    } else if (j.start >= half && end >= tau) {
      j.start += delta;
    }
  }
  auto base_start = [&](JobId id) {
    for (const SkeletonJob &j : base)
      if (j.id == id) return j.start;
    throw std::logic_error("job missing from the base skeleton");
  };

  if (ctx.iota) {
    // crossing set with its common finish point returns to its base starts
    for (SkeletonJob &j : shifted) {
      if (is_huge(huge_ids, j.id)) continue;
      Rational bs = base_start(j.id);
      if (bs >= half && bs < tau && Rational(bs + j.p) == *ctx.iota)
        j.start = bs;
    }
  }
  if (ctx.rho && ctx.case_label != "2.2.2") {
    Rational rho = *ctx.rho;
    for (SkeletonJob &j : shifted) {
      if (is_huge(huge_ids, j.id)) {
        // late-finishing huge jobs stay; ones ended in (tau, rho] end at rho
        Rational bend = base_start(j.id) + j.p;
        if (bend > tau && bend <= rho && bend != Rational(T_prime))
          j.start = rho - j.p;
      } else if (j.start >= Rational(rho + delta)) {
        j.start = base_start(j.id);
      }
    }
  }
  if (ctx.case_label == "2.2.2") {
    Rational rho = *ctx.rho, rho2 = *ctx.rho_prime;
    // huge jobs finishing in (tau, rho], grouped by processing time
    std::map<Rational, std::vector<size_t>> by_p;
    for (size_t i = 0; i < shifted.size(); ++i) {
      const SkeletonJob &j = shifted[i];
      Rational bend = base_start(j.id) + j.p;
      if (is_huge(huge_ids, j.id) && bend > tau && bend <= rho &&
          j.p <= rho2)
        by_p[j.p].push_back(i);
    }
    const Rational gR = ctx.gamma * R;
    std::vector<size_t> chosen;
    Int best = 0;
    for (const auto &[p, idxs] : by_p) {
      Int rsum = 0;
      for (size_t i : idxs) rsum += shifted[i].r;
      if (rsum >= 3 * gR && rsum > best) {
        best = rsum;
        chosen = idxs;
      }
    }
    if (chosen.empty()) return std::nullopt;
    std::sort(chosen.begin(), chosen.end(), [&](size_t a, size_t b) {
      if (shifted[a].r != shifted[b].r) return shifted[a].r > shifted[b].r;
      return shifted[a].id < shifted[b].id;
    });
    Int taken = 0;
    for (size_t i : chosen) {
      if (taken >= gR) break;
      shifted[i].start = rho2 - shifted[i].p;
      taken += shifted[i].r;
    }
    if (taken < gR) return std::nullopt;
  }

  std::vector<Rational> gaps;
  if (ctx.case_label == "1.1")
    gaps = {tau};
  else if (ctx.case_label == "1.2.1")
    gaps = {*ctx.iota};
  else if (ctx.case_label == "2.1.1")
    gaps = {*ctx.tau_prime};
  else if (ctx.case_label == "2.2.2")
    gaps = {T_prime, *ctx.rho_prime};
  else
    gaps = {T_prime};

  Int need_r = 0;
  for (const SkeletonJob &j : removed) need_r += j.r;
  for (const Rational &g : gaps) {
    auto [fm, fr] = min_free(shifted, g, delta, m, R);
    if (fm < Int(removed.size()) || fr < need_r) continue;
    GapPlacement gp;
    gp.gap_start = g;
    gp.gap_length = delta;
    std::vector<SkeletonJob> full = shifted;
    for (const SkeletonJob &j : removed) {
      gp.starts[j.id] = g;
      full.push_back({j.id, g, j.p, j.r});
    }
    return std::make_pair(std::move(full), std::move(gp));
  }
  return std::nullopt;
}

namespace {

std::map<JobId, std::pair<Rational, Int>> rounded_lookup(
    const Instance &ins, const std::vector<RoundedJob> &rounded) {
  std::map<JobId, std::pair<Rational, Int>> out;
  for (const RoundedJob &rj : rounded)
    out[rj.id] = {rj.rounded_p, ins.job(rj.id).r};
  return out;
}

/// All self-feasible placements of the huge jobs with starts on the
/// eps^2 T grid and ends by T'. Calls fn until it returns true.
bool enumerate_huge_starts(const std::vector<SkeletonJob> &huge,
                           const Rational &coarse, const Rational &T_prime,
                           const Int &m, const Int &R, long long budget,
                           const std::function<bool(const std::vector<SkeletonJob> &)> &fn) {
  std::vector<SkeletonJob> placed;
  long long steps = 0;
  std::function<bool(size_t)> rec = [&](size_t i) -> bool {
    if (i == huge.size()) return fn(placed);
    SkeletonJob j = huge[i];
    for (Rational s = 0; Rational(s + j.p) <= T_prime; s += coarse) {
      if (++steps > budget) throw BudgetError("huge start enumeration budget");
      j.start = s;
      placed.push_back(j);
      auto [fm, fr] = min_free(placed, 0, T_prime, m, R);
      if (fm >= 0 && fr >= 0 && rec(i + 1)) return true;
      placed.pop_back();
    }
    return false;
  };
  return rec(0);
}

std::optional<AptasResult> attempt(const Instance &ins, const Rational &epsilon,
                                   const Rational &T, const GapParams &gap,
                                   const Classification &cls,
                                   const std::vector<RoundedJob> &rounded,
                                   const Budgets &budgets, const Int &l) {
  Rational T_prime = Rational(l) * epsilon * T;
  LayerGrid grid = build_layers(T_prime, epsilon, gap.delta, T);
  auto info = rounded_lookup(ins, rounded);

  std::vector<Job> large_jobs;
  for (JobId id : cls.large) large_jobs.push_back(ins.job(id));
  auto [huge_ids, regular_ids] = classify_huge(large_jobs, T_prime);

  // huge jobs pushed against T'; they pairwise overlap there
  std::vector<SkeletonJob> huge_sk;
  Int huge_r = 0;
  for (JobId id : huge_ids) {
    auto [p, r] = info.at(id);
    if (p > T_prime) return std::nullopt;
    huge_sk.push_back({id, T_prime - p, p, r});
    huge_r += r;
  }
  if (Int(huge_sk.size()) > ins.m || huge_r > ins.R) return std::nullopt;

  Rational gamma =
      Rational(1) / Rational(3 * Int(grid.start_points.size()) + 4);

  LargeContext ctx;
  ctx.grid = grid;
  ctx.m = ins.m;
  ctx.R = ins.R;
  ctx.epsilon = epsilon;
  ctx.gamma = gamma;
  for (JobId id : regular_ids) {
    auto [p, r] = info.at(id);
    ctx.jobs.push_back({id, p, r});
  }
  std::sort(ctx.jobs.begin(), ctx.jobs.end(),
            [](const GridJob &a, const GridJob &b) { return a.id < b.id; });
  ctx.base_usage.assign(grid.start_points.size(), {0, 0});
  for (const SkeletonJob &j : huge_sk) {
    auto [a, b] = layer_span(grid, j.start, j.p);
    for (size_t s = a; s < b; ++s) {
      ctx.base_usage[s].first += 1;
      ctx.base_usage[s].second += j.r;
    }
  }

  std::optional<AptasResult> found;
  auto finish = [&](std::optional<AptasResult> res, const LpLargeStats &stats,
                    const std::string &label) {
    if (!res) return false;
    res->case_label = label;
    res->large_stats = stats;
    found = std::move(res);
    return true;
  };

  auto try_base = [&](const LargePlacement &pl, const LpLargeStats &stats) {
    std::vector<SkeletonJob> base = huge_sk;
    for (const auto &[id, s] : pl.wide_starts)
      base.push_back({id, s, info.at(id).first, info.at(id).second});
    for (const auto &[id, s] : pl.starts)
      base.push_back({id, s, info.at(id).first, info.at(id).second});
    std::vector<SkeletonJob> removed;
    for (JobId id : pl.removed)
      removed.push_back({id, 0, info.at(id).first, info.at(id).second});
    int k = static_cast<int>(removed.size());

    if (k == 0)
      return finish(assemble_with_small(ins, epsilon, T, gap, grid, base, {},
                                        cls.medium, cls.small),
                    stats, "direct");

    if (4 * Int(k) <= ins.m) {
      Rational delta = ceil_to_multiple(T_prime / 2, grid.step);
      LayerGrid wide_grid =
          build_layers(Rational(T_prime + delta), epsilon, gap.delta, T);
      for (const ShiftContext &sc :
           build_shift_candidates(base, grid, k, gamma, T_prime, huge_ids,
                                  ins.m, ins.R)) {
        auto moved = apply_shift(sc, base, huge_ids, removed, ins.m, ins.R,
                                 grid.step);
        if (!moved) continue;
        if (finish(assemble_with_small(ins, epsilon, T, gap, wide_grid,
                                       moved->first, {}, cls.medium, cls.small),
                   stats, sc.case_label)) {
          const GapPlacement &gp = moved->second;
          found->gap_used = true;
          found->gap_start = gp.gap_start;
          found->gap_length = gp.gap_length;
          for (const auto &[id, s] : gp.starts) found->gap_jobs.push_back(id);
          return true;
        }
      }
    }

    if (Int(huge_sk.size()) <= 4 * Int(k) && !huge_sk.empty()) {
      // reposition the huge jobs on a coarse grid; removed jobs go on top
      Rational coarse = epsilon * epsilon * T;
      try {
        enumerate_huge_starts(
            huge_sk, coarse, T_prime, ins.m, ins.R, budgets.guesses,
            [&](const std::vector<SkeletonJob> &hs) {
              LargeContext alt = ctx;
              alt.base_usage.assign(grid.start_points.size(), {0, 0});
              for (const SkeletonJob &j : hs) {
                auto [a, b] = layer_span(grid, j.start, j.p);
                for (size_t s = a; s < b; ++s) {
                  alt.base_usage[s].first += 1;
                  alt.base_usage[s].second += j.r;
                }
              }
              auto gp = greedy_large_placement(alt);
              if (!gp) return false;
              std::vector<SkeletonJob> sk = hs;
              for (const auto &[id, s] : gp->wide_starts)
                sk.push_back({id, s, info.at(id).first, info.at(id).second});
              for (const auto &[id, s] : gp->starts)
                sk.push_back({id, s, info.at(id).first, info.at(id).second});
              std::vector<JobId> alt_top(gp->removed.begin(),
                                         gp->removed.end());
              return finish(
                  assemble_with_small(ins, epsilon, T, gap, grid, sk, alt_top,
                                      cls.medium, cls.small),
                  stats, "few-huge-direct");
            });
      } catch (const BudgetError &) {
      }
      if (found) return true;
    }

    // sound since every removed job has p <= T'/2
    std::vector<JobId> top(pl.removed.begin(), pl.removed.end());
    return finish(assemble_with_small(ins, epsilon, T, gap, grid, base, top,
                                      cls.medium, cls.small),
                  stats, "fallback-top");
  };

  if (ctx.jobs.empty() && huge_sk.empty()) {
    try_base(LargePlacement{}, LpLargeStats{});
    return found;
  }

  bool lp_path =
      ctx.jobs.size() * grid.start_points.size() <= 4000 && ins.m <= 4096;
  if (lp_path && !ctx.jobs.empty()) {
    for_each_large_candidate(
        ctx, budgets.guesses, budgets.profiles,
        [&](const LargeCandidate &cand) {
          LpLargeStats stats;
          auto pl = solve_profile(ctx, cand.narrow, cand.wide_starts,
                                  cand.profile, &stats);
          if (!pl) return false;
          return try_base(*pl, stats);
        });
  }
  if (!found) {
    if (auto pl = greedy_large_placement(ctx)) try_base(*pl, LpLargeStats{});
  }
  return found;
}

}  // namespace

AptasResult three_halves(const Instance &ins, const Rational &eps_in,
                         const Budgets &budgets) {
  ins.validate();
  Rational epsilon = normalize_epsilon(eps_in);
  AptasResult empty;
  empty.case_label = "direct";
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

  Int lo = linv - 1;
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

}  // namespace srcs
