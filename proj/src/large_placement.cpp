#include "srcs/large_placement.hpp"

#include <algorithm>

namespace srcs {

namespace {

size_t exact_index(const Rational &value, const Rational &step) {
  Rational q = value / step;
  if (den(q) != 1 || q < 0)
    throw std::logic_error("value not on the layer grid");
  return static_cast<size_t>(num(q));
}

struct LayerLedger {
  std::vector<Int> free_m;
  std::vector<Int> free_r;

  explicit LayerLedger(const LargeContext &ctx) {
    size_t n = ctx.grid.start_points.size();
    free_m.assign(n, ctx.m);
    free_r.assign(n, ctx.R);
    for (size_t s = 0; s < ctx.base_usage.size() && s < n; ++s) {
      free_m[s] -= ctx.base_usage[s].first;
      free_r[s] -= ctx.base_usage[s].second;
    }
  }

  bool fits(size_t first, size_t last, const Int &r) const {
    for (size_t s = first; s < last; ++s)
      if (free_m[s] < 1 || free_r[s] < r) return false;
    return true;
  }

  void add(size_t first, size_t last, const Int &r, int sign) {
    for (size_t s = first; s < last; ++s) {
      free_m[s] -= sign;
      free_r[s] -= sign * r;
    }
  }
};

std::vector<GridJob> sorted_by_id(std::vector<GridJob> jobs) {
  std::sort(jobs.begin(), jobs.end(),
            [](const GridJob &a, const GridJob &b) { return a.id < b.id; });
  return jobs;
}

/// Earliest-fit of every large job on the grid; nullopt when some job has no
/// slot left below T'.
std::optional<std::map<JobId, Rational>> greedy_grid_placement(
    const LargeContext &ctx) {
  std::vector<GridJob> order = ctx.jobs;
  std::sort(order.begin(), order.end(), [](const GridJob &a, const GridJob &b) {
    if (a.r != b.r) return a.r > b.r;
    if (a.p != b.p) return a.p > b.p;
    return a.id < b.id;
  });
  LayerLedger ledger(ctx);
  std::map<JobId, Rational> starts;
  for (const GridJob &j : order) {
    bool placed = false;
    for (const Rational &s : ctx.grid.start_points) {
      if (s + j.p > ctx.grid.T_prime) break;
      auto [a, b] = layer_span(ctx.grid, s, j.p);
      if (ledger.fits(a, b, j.r)) {
        ledger.add(a, b, j.r, 1);
        starts[j.id] = s;
        placed = true;
        break;
      }
    }
    if (!placed) return std::nullopt;
  }
  return starts;
}

}  // namespace

std::pair<size_t, size_t> layer_span(const LayerGrid &grid,
                                     const Rational &start, const Rational &p) {
  size_t first = exact_index(start, grid.step);
  size_t last = exact_index(Rational(start + p), grid.step);
  if (last > grid.start_points.size())
    throw std::logic_error("job extends past T'");
  return {first, last};
}

Rational choose_alpha(const Rational &gamma, size_t layer_count) {
  return gamma / Rational(3 * Int(layer_count) + 1);
}

std::pair<std::vector<GridJob>, std::vector<GridJob>> split_wide_narrow(
    const std::vector<GridJob> &large, const Rational &alpha, const Int &R) {
  Rational threshold = alpha * Rational(R);
  std::vector<GridJob> wide, narrow;
  for (const GridJob &j : large)
    (Rational(j.r) >= threshold ? wide : narrow).push_back(j);
  return {std::move(wide), std::move(narrow)};
}

std::vector<Rational> resource_levels(const Int &R, const Int &m) {
  std::vector<Rational> levels{Rational(R)};
  Rational shrink = Rational(m) / Rational(m + 1);
  while (levels.back() > 1) levels.push_back(Rational(levels.back() * shrink));
  if (levels.back() >= 1) levels.push_back(Rational(0));
  return levels;
}

std::vector<std::map<JobId, Rational>> enumerate_wide_placements(
    const LargeContext &ctx, const std::vector<GridJob> &wide,
    long long budget) {
  std::vector<GridJob> ws = sorted_by_id(wide);
  LayerLedger ledger(ctx);
  std::vector<std::map<JobId, Rational>> out;
  std::map<JobId, Rational> current;
  long long steps = 0;

  std::function<void(size_t)> rec = [&](size_t i) {
    if (i == ws.size()) {
      out.push_back(current);
      if (static_cast<long long>(out.size()) > budget)
        throw BudgetError("wide placement enumeration exceeded budget");
      return;
    }
    const GridJob &j = ws[i];
    for (const Rational &s : ctx.grid.start_points) {
      if (s + j.p > ctx.grid.T_prime) break;
      if (++steps > budget)
        throw BudgetError("wide placement enumeration exceeded budget");
      auto [a, b] = layer_span(ctx.grid, s, j.p);
      if (!ledger.fits(a, b, j.r)) continue;
      ledger.add(a, b, j.r, 1);
      current[j.id] = s;
      rec(i + 1);
      current.erase(j.id);
      ledger.add(a, b, j.r, -1);
    }
  };
  rec(0);
  return out;
}

std::vector<Profile> enumerate_profiles(
    const LargeContext &ctx, const std::map<JobId, Rational> &wide_starts,
    const std::vector<GridJob> &wide, long long budget) {
  size_t n = ctx.grid.start_points.size();
  LayerLedger ledger(ctx);
  for (const GridJob &j : wide) {
    auto it = wide_starts.find(j.id);
    if (it == wide_starts.end())
      throw std::logic_error("wide job without a start");
    auto [a, b] = layer_span(ctx.grid, it->second, j.p);
    ledger.add(a, b, j.r, 1);
  }

  std::vector<Rational> levels = resource_levels(ctx.R, ctx.m);
  std::vector<std::vector<Int>> m_choices(n);
  std::vector<std::vector<Rational>> r_choices(n);
  Int combos = 1;
  for (size_t s = 0; s < n; ++s) {
    if (ledger.free_m[s] < 0 || ledger.free_r[s] < 0)
      throw std::logic_error("wide placement overfull");
    for (Int c = 0; c <= ledger.free_m[s]; ++c) m_choices[s].push_back(c);
    for (const Rational &lv : levels)
      if (lv <= Rational(ledger.free_r[s])) r_choices[s].push_back(lv);
    if (r_choices[s].empty()) r_choices[s].push_back(Rational(0));
    combos *= Int(m_choices[s].size()) * Int(r_choices[s].size());
    if (combos > budget)
      throw BudgetError("profile enumeration exceeded budget");
  }

  std::vector<Profile> out;
  std::vector<size_t> odo(2 * n, 0);  // interleaved (m index, r index) per layer
  while (true) {
    Profile pr;
    for (size_t s = 0; s < n; ++s) {
      pr.m_hat.push_back(m_choices[s][odo[2 * s]]);
      pr.R_hat.push_back(r_choices[s][odo[2 * s + 1]]);
    }
    out.push_back(std::move(pr));
    size_t k = 0;
    for (; k < 2 * n; ++k) {
      size_t limit = (k % 2 == 0) ? m_choices[k / 2].size() : r_choices[k / 2].size();
      if (++odo[k] < limit) break;
      odo[k] = 0;
    }
    if (k == 2 * n) break;
  }
  return out;
}

Profile profile_from_usage(const LargeContext &ctx,
                           const std::vector<GridJob> &narrow,
                           const std::map<JobId, Rational> &narrow_starts) {
  size_t n = ctx.grid.start_points.size();
  std::vector<Int> count(n, 0), rsum(n, 0);
  for (const GridJob &j : narrow) {
    auto it = narrow_starts.find(j.id);
    if (it == narrow_starts.end())
      throw std::logic_error("narrow job without a start");
    auto [a, b] = layer_span(ctx.grid, it->second, j.p);
    for (size_t s = a; s < b; ++s) {
      count[s] += 1;
      rsum[s] += j.r;
    }
  }
  std::vector<Rational> levels = resource_levels(ctx.R, ctx.m);
  Profile pr;
  for (size_t s = 0; s < n; ++s) {
    pr.m_hat.push_back(count[s]);
    // smallest geometric level dominating the observed usage
    Rational best = levels.front();
    for (const Rational &lv : levels)
      if (lv >= Rational(rsum[s]) && lv < best) best = lv;
    pr.R_hat.push_back(best);
  }
  return pr;
}

LpLargeModel build_lp_large(const LargeContext &ctx,
                            const std::vector<GridJob> &narrow,
                            const Profile &profile) {
  size_t n = ctx.grid.start_points.size();
  LpLargeModel out;
  out.var_of.assign(narrow.size(), std::vector<int>(n, -1));
  for (size_t j = 0; j < narrow.size(); ++j)
    for (size_t s = 0; s < n; ++s)
      if (ctx.grid.start_points[s] + narrow[j].p <= ctx.grid.T_prime)
        out.var_of[j][s] = out.model.add_variable(
            "x_" + std::to_string(narrow[j].id) + "_" + std::to_string(s));

  for (size_t s = 0; s < n; ++s) {
    std::vector<std::pair<int, Rational>> res, mach;
    for (size_t j = 0; j < narrow.size(); ++j) {
      auto span_len = exact_index(narrow[j].p, ctx.grid.step);
      size_t lo = s >= span_len - 1 ? s - (span_len - 1) : 0;
      for (size_t s0 = lo; s0 <= s; ++s0) {
        int v = out.var_of[j][s0];
        if (v < 0) continue;
        res.emplace_back(v, Rational(narrow[j].r));
        mach.emplace_back(v, Rational(1));
      }
    }
    out.model.add_row(std::move(res), Relation::Le, profile.R_hat[s]);
    out.model.add_row(std::move(mach), Relation::Le, Rational(profile.m_hat[s]));
  }
  for (size_t j = 0; j < narrow.size(); ++j) {
    std::vector<std::pair<int, Rational>> cover;
    for (size_t s = 0; s < n; ++s)
      if (out.var_of[j][s] >= 0) cover.emplace_back(out.var_of[j][s], Rational(1));
    out.model.add_row(std::move(cover), Relation::Eq, Rational(1));
  }
  return out;
}

LargePlacement prune_solution(const LargeContext &ctx,
                              const std::vector<GridJob> &narrow,
                              const Profile &profile, const LpLargeModel &lp,
                              const BasicSolution &sol, LpLargeStats *stats) {
  size_t n = ctx.grid.start_points.size();
  LargePlacement out;
  int fractional = 0;
  std::vector<int> start_of(narrow.size(), -1);
  for (size_t j = 0; j < narrow.size(); ++j) {
    bool integral = false;
    for (size_t s = 0; s < n; ++s) {
      int v = lp.var_of[j][s];
      if (v >= 0 && sol.values[v] == 1) {
        start_of[j] = static_cast<int>(s);
        integral = true;
        break;
      }
    }
    if (!integral) {
      ++fractional;
      out.removed.insert(narrow[j].id);
    }
  }
  if (fractional > 2 * static_cast<int>(n))
    throw std::logic_error("basic LP solution with more than 2|S| fractional jobs");

  // live per-layer resource usage of the integrally kept jobs
  std::vector<Int> usage(n, 0);
  std::vector<std::vector<size_t>> in_layer(n);
  for (size_t j = 0; j < narrow.size(); ++j) {
    if (start_of[j] < 0) continue;
    auto [a, b] = layer_span(ctx.grid, ctx.grid.start_points[start_of[j]],
                             narrow[j].p);
    for (size_t s = a; s < b; ++s) {
      usage[s] += narrow[j].r;
      in_layer[s].push_back(j);
    }
  }

  int pruned = 0;
  Rational scale = Rational(ctx.m) / Rational(ctx.m + 1);
  for (size_t s = 0; s < n; ++s) {
    Rational bound = profile.R_hat[s] * scale;
    if (Rational(usage[s]) <= bound) continue;
    // widest kept job in the layer; one removal must land under the bound
    size_t pick = narrow.size();
    for (size_t j : in_layer[s]) {
      if (out.removed.count(narrow[j].id)) continue;
      if (pick == narrow.size() || narrow[j].r > narrow[pick].r ||
          (narrow[j].r == narrow[pick].r &&
           (narrow[j].p > narrow[pick].p ||
            (narrow[j].p == narrow[pick].p && narrow[j].id < narrow[pick].id))))
        pick = j;
    }
    if (pick == narrow.size())
      throw std::logic_error("overfull layer with no kept job");
    out.removed.insert(narrow[pick].id);
    ++pruned;
    auto [a, b] = layer_span(ctx.grid, ctx.grid.start_points[start_of[pick]],
                             narrow[pick].p);
    for (size_t t = a; t < b; ++t) usage[t] -= narrow[pick].r;
    if (Rational(usage[s]) > bound)
      throw std::logic_error("one removal per layer did not restore the bound");
  }

  for (size_t j = 0; j < narrow.size(); ++j)
    if (start_of[j] >= 0 && !out.removed.count(narrow[j].id))
      out.starts[narrow[j].id] = ctx.grid.start_points[start_of[j]];

  if (out.removed.size() > 3 * n)
    throw std::logic_error("more than 3|S| jobs removed");
  if (stats) {
    stats->fractional_jobs = fractional;
    stats->support = support_size(sol.values);
    stats->rows = static_cast<int>(lp.model.rows.size());
    stats->pruned_for_profile = pruned;
  }
  return out;
}

std::optional<LargePlacement> solve_profile(
    const LargeContext &ctx, const std::vector<GridJob> &narrow,
    const std::map<JobId, Rational> &wide_starts, const Profile &profile,
    LpLargeStats *stats) {
  LpLargeModel lp = build_lp_large(ctx, narrow, profile);
  BasicSolution sol = solve_feasible(lp.model);
  if (!sol.feasible) return std::nullopt;
  LargePlacement out = prune_solution(ctx, narrow, profile, lp, sol, stats);
  out.wide_starts = wide_starts;
  return out;
}

std::optional<LargePlacement> greedy_large_placement(const LargeContext &ctx) {
  auto all = greedy_grid_placement(ctx);
  if (!all) return std::nullopt;
  Rational alpha = choose_alpha(ctx.gamma, ctx.grid.start_points.size());
  Rational threshold = alpha * Rational(ctx.R);
  LargePlacement out;
  for (const GridJob &j : ctx.jobs) {
    if (Rational(j.r) >= threshold)
      out.wide_starts[j.id] = all->at(j.id);
    else
      out.starts[j.id] = all->at(j.id);
  }
  return out;
}

bool for_each_large_candidate(
    const LargeContext &ctx, long long budget_guesses, long long budget_profiles,
    const std::function<bool(const LargeCandidate &)> &fn) {
  Rational alpha = choose_alpha(ctx.gamma, ctx.grid.start_points.size());
  auto [wide, narrow] = split_wide_narrow(ctx.jobs, alpha, ctx.R);

  if (auto all = greedy_grid_placement(ctx)) {
    LargeCandidate cand;
    cand.narrow = narrow;
    std::map<JobId, Rational> narrow_starts;
    for (const GridJob &j : wide) cand.wide_starts[j.id] = all->at(j.id);
    for (const GridJob &j : narrow) narrow_starts[j.id] = all->at(j.id);
    cand.profile = profile_from_usage(ctx, narrow, narrow_starts);
    if (fn(cand)) return true;
  }

  try {
    for (const auto &ws : enumerate_wide_placements(ctx, wide, budget_guesses)) {
      for (const Profile &pr :
           enumerate_profiles(ctx, ws, wide, budget_profiles)) {
        LargeCandidate cand;
        cand.wide_starts = ws;
        cand.profile = pr;
        cand.narrow = narrow;
        if (fn(cand)) return true;
      }
    }
  } catch (const BudgetError &) {
    // fall back to the placement-derived candidate only
  }
  return false;
}

}  // namespace srcs
