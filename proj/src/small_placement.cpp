#include "srcs/small_placement.hpp"

#include "srcs/large_placement.hpp"
#include "srcs/timeline.hpp"

#include <algorithm>
#include <functional>

namespace srcs {

namespace {

int ceil_log2(const Int &m) {
  int k = 0;
  Int v = 1;
  while (v < m) {
    v *= 2;
    ++k;
  }
  return k;
}

long long small_int(const Int &v, const char *what) {
  if (v > 1 << 22) throw BudgetError(std::string(what) + " too large for DP");
  return v.convert_to<long long>();
}

}  // namespace

Int Configuration::resource(const std::vector<SmallGroup> &groups) const {
  Int r = 0;
  for (const auto &[t, a] : counts) r += Int(a) * groups[t].rounded_r;
  return r;
}

Int Configuration::machines() const {
  Int c = 0;
  for (const auto &[t, a] : counts) c += a;
  return c;
}

SmallGroups geometric_group(const std::vector<Job> &small,
                            const Rational &epsilon, const Int &m,
                            const Int &R) {
  int imax = ceil_log2(m);
  // class 0 is the bottom class r <= R/2^imax; class i >= 1 is (R/2^i, R/2^{i-1}]
  std::map<int, std::vector<Job>> classes;
  for (const Job &j : small) {
    Rational bottom_cap = Rational(R) / pow_rat(Rational(2), imax);
    if (Rational(j.r) <= bottom_cap) {
      classes[0].push_back(j);
      continue;
    }
    int i = 1;
    while (Rational(j.r) <= Rational(R) / pow_rat(Rational(2), i)) ++i;
    classes[i].push_back(j);
  }

  SmallGroups out;
  for (auto &[cls, jobs] : classes) {
    std::sort(jobs.begin(), jobs.end(), [](const Job &a, const Job &b) {
      if (a.r != b.r) return a.r < b.r;
      return a.id < b.id;
    });
    Rational P = 0;
    for (const Job &j : jobs) P += j.p;
    Rational cut = epsilon * P;  // stack cut width; 1/eps groups
    std::map<int, SmallGroup> by_index;
    Rational offset = 0;
    for (const Job &j : jobs) {
      int l = cut == 0 ? 0 : floor_int(offset / cut).convert_to<int>();
      SmallGroup &g = by_index[l];
      g.cls = cls;
      g.index = l;
      g.rounded_r = std::max(g.rounded_r, j.r);
      g.total_p += j.p;
      g.members.push_back(j.id);
      offset += j.p;
    }
    for (auto &[l, g] : by_index) {
      size_t idx = out.groups.size();
      for (JobId id : g.members) out.group_of[id] = idx;
      out.groups.push_back(std::move(g));
    }
  }
  return out;
}

Rational bound_grouping_overflow(const SmallGroups &groups,
                                 const std::vector<Job> &small,
                                 const Rational &epsilon, const Int &m,
                                 const Int &R) {
  std::map<int, Rational> class_p;
  for (const SmallGroup &g : groups.groups) class_p[g.cls] += g.total_p;
  Rational value = 0;
  for (const auto &[cls, p] : class_p) {
    if (cls == 0)
      value += epsilon * p / Rational(m);
    else
      value += epsilon * p / pow_rat(Rational(2), cls - 1);
  }
  Rational a = 0, pj = 0;
  for (const Job &j : small) {
    a += j.p * Rational(j.r);
    pj += j.p;
  }
  Rational bound = 2 * epsilon * a / Rational(R) + epsilon * pj / Rational(m);
  if (value > bound)
    throw std::logic_error("grouping overflow exceeds its closed-form bound");
  return value;
}

namespace {

struct Master {
  const std::vector<SmallBox> &boxes;
  const SmallGroups &groups;
  Rational relax;  // 1 + eps
  std::vector<std::vector<Configuration>> cols;  // per box

  LpModel build(std::vector<std::vector<int>> &var_of,
                std::vector<int> &slack_of) const {
    LpModel mdl;
    size_t B = boxes.size(), T = groups.groups.size();
    var_of.assign(B, {});
    for (size_t b = 0; b < B; ++b)
      for (size_t k = 0; k < cols[b].size(); ++k)
        var_of[b].push_back(mdl.add_variable(
            "x_" + std::to_string(b) + "_" + std::to_string(k)));
    slack_of.assign(T, -1);
    for (size_t t = 0; t < T; ++t)
      slack_of[t] = mdl.add_variable("u_" + std::to_string(t));

    // row order matters for dual extraction: boxes first, then types
    for (size_t b = 0; b < B; ++b) {
      std::vector<std::pair<int, Rational>> row;
      for (int v : var_of[b]) row.emplace_back(v, Rational(1));
      mdl.add_row(std::move(row), Relation::Le,
                  Rational(relax * boxes[b].length));
    }
    for (size_t t = 0; t < T; ++t) {
      std::vector<std::pair<int, Rational>> row;
      for (size_t b = 0; b < B; ++b)
        for (size_t k = 0; k < cols[b].size(); ++k) {
          auto it = cols[b][k].counts.find(t);
          if (it != cols[b][k].counts.end())
            row.emplace_back(var_of[b][k], Rational(it->second));
        }
      row.emplace_back(slack_of[t], Rational(1));
      mdl.add_row(std::move(row), Relation::Ge, groups.groups[t].total_p);
      mdl.objective.emplace_back(slack_of[t], Rational(1));
    }
    return mdl;
  }
};

/// Most profitable configuration for one box: unbounded knapsack with a
/// cardinality cap, exact DP over (count, resource).
std::pair<Rational, Configuration> price_box(const SmallBox &box,
                                             const std::vector<SmallGroup> &groups,
                                             const std::vector<Rational> &profit) {
  long long mc = small_int(box.m_cap, "box machine capacity");
  long long rc = small_int(box.R_cap, "box resource capacity");
  if (mc * (rc + 1) > (1 << 24))
    throw BudgetError("pricing DP table too large");
  std::vector<size_t> useful;
  for (size_t t = 0; t < groups.size(); ++t)
    if (profit[t] > 0 && groups[t].rounded_r <= box.R_cap) useful.push_back(t);
  if (useful.empty() || mc == 0) return {Rational(0), Configuration{}};

  size_t W = static_cast<size_t>(rc) + 1;
  std::vector<Rational> prev(W, 0), cur(W, 0);
  // choice[c][r]: type picked to reach dp[c][r] from dp[c-1][r - r_t], or -1
  std::vector<std::vector<int>> choice(static_cast<size_t>(mc) + 1,
                                       std::vector<int>(W, -1));
  for (long long c = 1; c <= mc; ++c) {
    cur = prev;
    for (size_t t : useful) {
      long long rt = groups[t].rounded_r.convert_to<long long>();
      for (long long r = rt; r <= rc; ++r) {
        Rational cand = prev[static_cast<size_t>(r - rt)] + profit[t];
        if (cand > cur[static_cast<size_t>(r)]) {
          cur[static_cast<size_t>(r)] = cand;
          choice[static_cast<size_t>(c)][static_cast<size_t>(r)] =
              static_cast<int>(t);
        }
      }
    }
    if (cur == prev) break;  // saturated early
    prev = cur;
  }
  Configuration best;
  long long c = mc, r = rc;
  // walk down to the first row where the cell was actually improved
  while (c > 0 && choice[static_cast<size_t>(c)][static_cast<size_t>(r)] < 0)
    --c;
  while (c > 0) {
    int t = choice[static_cast<size_t>(c)][static_cast<size_t>(r)];
    if (t < 0) {
      --c;
      continue;
    }
    best.counts[static_cast<size_t>(t)] += 1;
    r -= groups[static_cast<size_t>(t)].rounded_r.convert_to<long long>();
    --c;
  }
  return {prev[static_cast<size_t>(rc)], best};
}

std::optional<ConfigSolution> extract(const Master &master,
                                      const std::vector<std::vector<int>> &var_of,
                                      const BasicSolution &sol,
                                      Rational *opt_out) {
  if (opt_out) *opt_out = sol.objective;
  if (sol.objective != 0) return std::nullopt;
  ConfigSolution out;
  out.boxes = master.boxes;
  out.usage.resize(master.boxes.size());
  for (size_t b = 0; b < master.boxes.size(); ++b)
    for (size_t k = 0; k < master.cols[b].size(); ++k)
      if (sol.values[var_of[b][k]] != 0)
        out.usage[b].emplace_back(master.cols[b][k], sol.values[var_of[b][k]]);
  return out;
}

}  // namespace

std::optional<ConfigSolution> solve_config_lp(const std::vector<SmallBox> &boxes,
                                              const SmallGroups &groups,
                                              const Rational &epsilon,
                                              Rational *uncovered_out) {
  Master master{boxes, groups, 1 + epsilon, {}};
  master.cols.resize(boxes.size());
  // seed: one max-multiplicity singleton per fitting type and box
  for (size_t b = 0; b < boxes.size(); ++b)
    for (size_t t = 0; t < groups.groups.size(); ++t) {
      const Int &r = groups.groups[t].rounded_r;
      if (r > boxes[b].R_cap || boxes[b].m_cap < 1) continue;
      Int count = boxes[b].m_cap;
      if (r > 0) count = std::min(count, Int(boxes[b].R_cap / r));
      if (count > 1000000) count = 1000000;
      Configuration c;
      c.counts[t] = count.convert_to<int>();
      master.cols[b].push_back(std::move(c));
    }

  while (true) {
    std::vector<std::vector<int>> var_of;
    std::vector<int> slack_of;
    LpModel mdl = master.build(var_of, slack_of);
    BasicSolution sol = solve_feasible(mdl);
    if (!sol.feasible)
      throw std::logic_error("config master LP must be feasible (slacks)");
    if (sol.objective == 0) return extract(master, var_of, sol, uncovered_out);

    std::vector<Rational> type_dual(groups.groups.size());
    for (size_t t = 0; t < groups.groups.size(); ++t)
      type_dual[t] = sol.duals[boxes.size() + t];
    bool added = false;
    for (size_t b = 0; b < boxes.size(); ++b) {
      auto [profit, conf] = price_box(boxes[b], groups.groups, type_dual);
      if (conf.counts.empty()) continue;
      // improving iff profit beats the box row's dual charge
      if (profit + sol.duals[b] <= 0) continue;
      if (std::find(master.cols[b].begin(), master.cols[b].end(), conf) !=
          master.cols[b].end())
        continue;
      master.cols[b].push_back(std::move(conf));
      added = true;
    }
    if (!added) {
      // master optimal over all configurations; still uncovered
      if (uncovered_out) *uncovered_out = sol.objective;
      return std::nullopt;
    }
  }
}

std::optional<ConfigSolution> solve_config_lp_enumerated(
    const std::vector<SmallBox> &boxes, const SmallGroups &groups,
    const Rational &epsilon, Rational *uncovered_out) {
  Master master{boxes, groups, 1 + epsilon, {}};
  master.cols.resize(boxes.size());
  for (size_t b = 0; b < boxes.size(); ++b) {
    std::vector<Configuration> all;
    Configuration cur;
    std::function<void(size_t, Int, Int)> rec = [&](size_t t, Int mc, Int rc) {
      if (t == groups.groups.size()) {
        if (!cur.counts.empty()) all.push_back(cur);
        return;
      }
      rec(t + 1, mc, rc);
      const Int &r = groups.groups[t].rounded_r;
      Int a = 1;
      while (a <= mc && Int(a * r) <= rc) {
        cur.counts[t] = a.convert_to<int>();
        rec(t + 1, Int(mc - a), Int(rc - a * r));
        ++a;
      }
      cur.counts.erase(t);
    };
    rec(0, boxes[b].m_cap, boxes[b].R_cap);
    master.cols[b] = std::move(all);
  }
  std::vector<std::vector<int>> var_of;
  std::vector<int> slack_of;
  LpModel mdl = master.build(var_of, slack_of);
  BasicSolution sol = solve_feasible(mdl);
  if (!sol.feasible)
    throw std::logic_error("config master LP must be feasible (slacks)");
  return extract(master, var_of, sol, uncovered_out);
}

bool is_wide(const SmallGroup &g, const Rational &epsilon, const Int &R) {
  return Rational(g.rounded_r) >= epsilon * Rational(R);
}

GenConfigSolution to_window_solution(const ConfigSolution &sol,
                                     const SmallGroups &groups,
                                     const Rational &epsilon, const Int &m,
                                     const Int &R) {
  GenConfigSolution out;
  out.boxes = sol.boxes;
  out.per_box.resize(sol.boxes.size());
  out.m = m;
  out.R = R;
  for (size_t b = 0; b < sol.boxes.size(); ++b) {
    std::map<Configuration, GenEntry> merged;
    for (const auto &[conf, x] : sol.usage[b]) {
      Configuration wide;
      for (const auto &[t, a] : conf.counts)
        if (is_wide(groups.groups[t], epsilon, R)) wide.counts[t] = a;
      GenEntry &e = merged[wide];
      if (e.x == 0) {
        e.wide = wide;
        e.w_r = Rational(sol.boxes[b].R_cap - wide.resource(groups.groups));
        e.w_m = sol.boxes[b].m_cap - wide.machines();
      }
      e.x += x;
      for (const auto &[t, a] : conf.counts)
        if (!is_wide(groups.groups[t], epsilon, R))
          e.y[t] += Rational(a) * x;
    }
    for (auto &[w, e] : merged) out.per_box[b].push_back(std::move(e));
  }
  return out;
}

namespace {

/// LP_W restricted to the support of `sol`; `point` receives the current
/// solution in the model's variable order.
struct WindowModel {
  LpModel mdl;
  std::vector<Rational> point;
  // per box, per entry: x var, then y vars keyed by type
  std::vector<std::vector<int>> x_var;
  std::vector<std::vector<std::map<size_t, int>>> y_var;
  std::map<size_t, int> end_var;
};

WindowModel build_window_model(const GenConfigSolution &sol,
                               const SmallGroups &groups,
                               const Rational &epsilon) {
  WindowModel wm;
  size_t B = sol.boxes.size();
  wm.x_var.resize(B);
  wm.y_var.resize(B);
  for (size_t b = 0; b < B; ++b)
    for (size_t e = 0; e < sol.per_box[b].size(); ++e) {
      const GenEntry &en = sol.per_box[b][e];
      wm.x_var[b].push_back(wm.mdl.add_variable(
          "x_" + std::to_string(b) + "_" + std::to_string(e)));
      wm.point.push_back(en.x);
      wm.y_var[b].emplace_back();
      for (const auto &[t, v] : en.y) {
        if (v == 0) continue;
        wm.y_var[b][e][t] = wm.mdl.add_variable(
            "y_" + std::to_string(b) + "_" + std::to_string(e) + "_" +
            std::to_string(t));
        wm.point.push_back(v);
      }
    }
  for (const auto &[t, v] : sol.end_window) {
    if (v == 0) continue;
    wm.end_var[t] = wm.mdl.add_variable("z_" + std::to_string(t));
    wm.point.push_back(v);
  }

  // coverage per type (>=; the integral phase caps assignment at p(t))
  for (size_t t = 0; t < groups.groups.size(); ++t) {
    std::vector<std::pair<int, Rational>> row;
    bool wide = is_wide(groups.groups[t], epsilon, sol.R);
    for (size_t b = 0; b < B; ++b)
      for (size_t e = 0; e < sol.per_box[b].size(); ++e) {
        if (wide) {
          auto it = sol.per_box[b][e].wide.counts.find(t);
          if (it != sol.per_box[b][e].wide.counts.end())
            row.emplace_back(wm.x_var[b][e], Rational(it->second));
        } else {
          auto it = wm.y_var[b][e].find(t);
          if (it != wm.y_var[b][e].end()) row.emplace_back(it->second, Rational(1));
        }
      }
    if (!wide) {
      auto it = wm.end_var.find(t);
      if (it != wm.end_var.end()) row.emplace_back(it->second, Rational(1));
    }
    if (row.empty() && groups.groups[t].total_p == 0) continue;
    wm.mdl.add_row(std::move(row), Relation::Ge, groups.groups[t].total_p);
  }

  // per (box, window): machine and resource work rows, y <= cap * sum x
  for (size_t b = 0; b < B; ++b) {
    std::map<std::pair<Rational, Int>, std::vector<size_t>> by_window;
    for (size_t e = 0; e < sol.per_box[b].size(); ++e) {
      const GenEntry &en = sol.per_box[b][e];
      by_window[{en.w_r, en.w_m}].push_back(e);
    }
    for (const auto &[w, entries] : by_window) {
      std::vector<std::pair<int, Rational>> mrow, rrow;
      for (size_t e : entries) {
        mrow.emplace_back(wm.x_var[b][e], Rational(-w.second));
        rrow.emplace_back(wm.x_var[b][e], Rational(-w.first));
        for (const auto &[t, v] : wm.y_var[b][e]) {
          mrow.emplace_back(v, Rational(1));
          rrow.emplace_back(v, Rational(groups.groups[t].rounded_r));
        }
      }
      wm.mdl.add_row(std::move(mrow), Relation::Le, Rational(0));
      wm.mdl.add_row(std::move(rrow), Relation::Le, Rational(0));
    }
    // box time cap
    std::vector<std::pair<int, Rational>> trow;
    for (int v : wm.x_var[b]) trow.emplace_back(v, Rational(1));
    wm.mdl.add_row(std::move(trow), Relation::Le,
                   Rational((1 + epsilon) * sol.boxes[b].length));
  }

  // discourage end-block growth; keep total configuration time minimal
  for (size_t b = 0; b < B; ++b)
    for (int v : wm.x_var[b]) wm.mdl.objective.emplace_back(v, Rational(1));
  for (const auto &[t, v] : wm.end_var)
    wm.mdl.objective.emplace_back(v, Rational(1));
  return wm;
}

}  // namespace

GenConfigSolution reduce_windows(const GenConfigSolution &sol,
                                 const SmallGroups &groups,
                                 const Rational &epsilon) {
  GenConfigSolution red;
  red.boxes = sol.boxes;
  red.per_box.resize(sol.boxes.size());
  red.end_window = sol.end_window;
  red.m = sol.m;
  red.R = sol.R;

  for (size_t b = 0; b < sol.boxes.size(); ++b) {
    // the single widest window (empty wide part) is left in place
    std::map<Int, std::vector<GenEntry>> stacks;
    for (const GenEntry &e : sol.per_box[b]) {
      if (e.wide.counts.empty())
        red.per_box[b].push_back(e);
      else
        stacks[e.w_m].push_back(e);
    }
    for (auto &[wm_key, stack] : stacks) {
      std::sort(stack.begin(), stack.end(), [](const GenEntry &a,
                                               const GenEntry &b2) {
        if (a.w_r != b2.w_r) return a.w_r > b2.w_r;  // widest at the bottom
        return a.wide < b2.wide;
      });
      Rational P = 0;
      for (const GenEntry &e : stack) P += e.x;
      if (P == 0) continue;
      Rational seg = epsilon * P;

      // cut the stack into 1/eps segments; each piece of an entry keeps its
      // configuration and gets the narrowest window of its segment
      struct Piece {
        size_t entry;
        int segment;
        Rational x;
      };
      std::vector<Piece> pieces;
      Rational pos = 0;
      for (size_t e = 0; e < stack.size(); ++e) {
        Rational left = stack[e].x;
        while (left > 0) {
          int segi = floor_int(pos / seg).convert_to<int>();
          Rational room = (segi + 1) * seg - pos;
          Rational take = std::min(left, room);
          if (take == 0) break;  // exactly on a boundary; recompute segment
          pieces.push_back({e, segi, take});
          pos += take;
          left -= take;
        }
      }
      int nseg = pieces.empty() ? 0 : pieces.back().segment + 1;
      std::vector<Rational> narrowest(nseg, Rational(-1));
      for (const Piece &pc : pieces) {
        const Rational &wr = stack[pc.entry].w_r;
        if (narrowest[pc.segment] < 0 || wr < narrowest[pc.segment])
          narrowest[pc.segment] = wr;
      }

      // configurations keep their segment's narrowest window; narrow mass
      // moves one segment down (bottom segment: to the end block), scaled by
      // the share of the entry's time in the piece
      std::map<std::pair<Configuration, Rational>, GenEntry> merged;
      for (const Piece &pc : pieces) {
        const GenEntry &src = stack[pc.entry];
        Rational share = pc.x / src.x;
        Rational wr = narrowest[pc.segment];
        GenEntry &dst = merged[{src.wide, wr}];
        if (dst.x == 0) {
          dst.wide = src.wide;
          dst.w_r = wr;
          dst.w_m = wm_key;
        }
        dst.x += pc.x;
        for (const auto &[t, v] : src.y) {
          Rational mass = v * share;
          if (mass == 0) continue;
          if (pc.segment == 0) {
            red.end_window[t] += mass;
          } else {
            Rational target = narrowest[pc.segment - 1];
            GenEntry &down = merged[{src.wide, target}];
            if (down.x == 0 && down.y.empty()) {
              down.wide = src.wide;
              down.w_r = target;
              down.w_m = wm_key;
            }
            down.y[t] += mass;
          }
        }
      }
      // a y-only bucket must ride on a gen configuration that is actually
      // processed under that window; attach it to the widest existing one
      for (auto &[key, e] : merged) {
        if (e.x != 0 || e.y.empty()) continue;
        GenEntry *host = nullptr;
        for (auto &[k2, e2] : merged)
          if (e2.x != 0 && k2.second >= key.second &&
              (!host || k2.second < host->w_r))
            host = &e2;
        if (!host)
          throw std::logic_error("narrow mass with no window to land in");
        for (const auto &[t, v] : e.y) host->y[t] += v;
        e.y.clear();
      }
      for (auto &[key, e] : merged)
        if (e.x != 0) red.per_box[b].push_back(std::move(e));
    }
  }

  // re-vertexize over the support
  WindowModel wm = build_window_model(red, groups, epsilon);
  BasicSolution basic = to_basic(wm.mdl, wm.point);

  GenConfigSolution out;
  out.boxes = red.boxes;
  out.per_box.resize(red.boxes.size());
  out.m = red.m;
  out.R = red.R;
  for (size_t b = 0; b < red.boxes.size(); ++b)
    for (size_t e = 0; e < red.per_box[b].size(); ++e) {
      GenEntry en = red.per_box[b][e];
      en.x = basic.values[wm.x_var[b][e]];
      en.y.clear();
      for (const auto &[t, v] : wm.y_var[b][e])
        if (basic.values[v] != 0) en.y[t] = basic.values[v];
      if (en.x != 0 || !en.y.empty()) out.per_box[b].push_back(std::move(en));
    }
  for (const auto &[t, v] : wm.end_var)
    if (basic.values[v] != 0) out.end_window[t] = basic.values[v];
  return out;
}

WindowStats window_stats(const GenConfigSolution &sol, const SmallGroups &groups,
                         const Rational &epsilon) {
  WindowStats st;
  for (const SmallGroup &g : groups.groups)
    (is_wide(g, epsilon, sol.R) ? st.wide_types : st.narrow_types) += 1;
  for (const auto &entries : sol.per_box)
    for (const GenEntry &e : entries) {
      if (e.x != 0) ++st.support;
      for (const auto &[t, v] : e.y)
        if (v != 0) ++st.support;
    }
  for (const auto &[t, v] : sol.end_window)
    if (v != 0) ++st.support;
  return st;
}

namespace {

struct TypeQueue {
  std::vector<Job> jobs;  // decreasing r, then id; consumed from the front
  size_t next = 0;
};

}  // namespace

SmallFragments integral_small_schedule(const GenConfigSolution &sol,
                                       const SmallGroups &groups,
                                       const std::vector<Job> &small,
                                       const Rational &epsilon) {
  std::map<JobId, Job> by_id;
  for (const Job &j : small) by_id[j.id] = j;

  std::vector<TypeQueue> queue(groups.groups.size());
  for (size_t t = 0; t < groups.groups.size(); ++t) {
    for (JobId id : groups.groups[t].members) queue[t].jobs.push_back(by_id.at(id));
    std::sort(queue[t].jobs.begin(), queue[t].jobs.end(),
              [](const Job &a, const Job &b) {
                if (a.r != b.r) return a.r > b.r;
                return a.id < b.id;
              });
  }

  SmallFragments out;
  out.per_box.resize(sol.boxes.size());
  std::vector<Job> tail_jobs;

  auto fill_wide_slot = [&](size_t t, const Rational &slot_len,
                            SmallFragments::Fragment &frag, const Rational &t0) {
    Rational at = 0;
    TypeQueue &q = queue[t];
    while (q.next < q.jobs.size()) {
      const Job &j = q.jobs[q.next];
      if (at + j.p > slot_len) {
        // crossing job: defer and close the slot
        tail_jobs.push_back(j);
        ++q.next;
        break;
      }
      frag.starts[j.id] = t0 + at;
      at += j.p;
      ++q.next;
    }
  };

  auto take_budget = [&](size_t t, const Rational &budget) {
    std::vector<Job> got;
    Rational used = 0;
    TypeQueue &q = queue[t];
    while (q.next < q.jobs.size()) {
      const Job &j = q.jobs[q.next];
      if (used + j.p > budget) {
        if (used < budget) {  // fractional job of this window
          tail_jobs.push_back(j);
          ++q.next;
        }
        break;
      }
      got.push_back(j);
      used += j.p;
      ++q.next;
    }
    return got;
  };

  for (size_t b = 0; b < sol.boxes.size(); ++b) {
    SmallFragments::Fragment &frag = out.per_box[b];
    Rational cursor = 0;
    for (const GenEntry &e : sol.per_box[b]) {
      if (e.x == 0) continue;
      // wide slots of the configuration
      for (const auto &[t, a] : e.wide.counts)
        for (int k = 0; k < a; ++k) fill_wide_slot(t, e.x, frag, cursor);
      // narrow jobs of the window
      if (!e.y.empty()) {
        if (den(e.w_r) != 1)
          throw std::logic_error("window resource must be integral");
        Timeline window(e.w_m, num(e.w_r));
        for (const auto &[t, budget] : e.y)
          for (const Job &j : take_budget(t, budget)) {
            Rational s = window.earliest_start(0, j.p, j.r);
            if (s + j.p > e.x) {
              tail_jobs.push_back(j);
            } else {
              window.add(s, j.p, j.r);
              frag.starts[j.id] = cursor + s;
            }
          }
      }
      cursor += e.x;
    }
    frag.length = cursor;
  }

  // end block: pushed-down narrow mass on the full capacity
  {
    Timeline block(sol.m, sol.R);
    Rational len = 0;
    for (const auto &[t, budget] : sol.end_window)
      for (const Job &j : take_budget(t, budget)) {
        Rational s = block.place(0, j.p, j.r);
        out.end_block.starts[j.id] = s;
        len = std::max(len, Rational(s + j.p));
      }
    out.end_block.length = len;
  }

  // whatever is left in the queues joins the deferred jobs in the tail
  for (TypeQueue &q : queue)
    for (; q.next < q.jobs.size(); ++q.next) tail_jobs.push_back(q.jobs[q.next]);

  std::sort(tail_jobs.begin(), tail_jobs.end(), [](const Job &a, const Job &b) {
    if (a.r != b.r) return a.r > b.r;
    return a.id < b.id;
  });
  out.deferred = static_cast<int>(tail_jobs.size());
  Timeline tail(sol.m, sol.R);
  Rational len = 0;
  for (const Job &j : tail_jobs) {
    Rational s = tail.place(0, j.p, j.r);
    out.tail.starts[j.id] = s;
    len = std::max(len, Rational(s + j.p));
  }
  out.tail.length = len;

  size_t placed = out.end_block.starts.size() + out.tail.starts.size();
  for (const auto &f : out.per_box) placed += f.starts.size();
  if (placed != small.size())
    throw std::logic_error("small job lost or duplicated in integral placement");
  return out;
}

}  // namespace srcs
