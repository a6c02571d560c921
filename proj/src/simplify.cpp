#include "srcs/simplify.hpp"

#include "srcs/baseline.hpp"

#include <algorithm>
#include <stdexcept>

namespace srcs {

namespace {

int inv_eps_int(const Rational &epsilon) {
  if (epsilon <= 0 || epsilon >= 1)
    throw std::invalid_argument("epsilon must be in (0,1)");
  Rational inv = 1 / epsilon;
  if (den(inv) != 1)
    throw std::invalid_argument("1/epsilon must be an integer");
  return static_cast<int>(num(inv));
}

}  // namespace

GapParams select_medium_gap(const Instance &ins, const Rational &epsilon,
                            const Rational &T) {
  int inv = inv_eps_int(epsilon);
  Rational eps4 = pow_rat(epsilon, 4);

  // gamma_0..gamma_{1/eps}
  std::vector<Rational> gamma(static_cast<size_t>(inv) + 1);
  gamma[0] = epsilon;
  for (int i = 1; i <= inv; ++i) gamma[i] = gamma[i - 1] * eps4;

  // bucket each job into its band in one pass
  std::vector<Rational> band_p(static_cast<size_t>(inv) + 1, 0);
  std::vector<Rational> band_area(static_cast<size_t>(inv) + 1, 0);
  for (const auto &j : ins.jobs) {
    for (int i = 1; i <= inv; ++i) {
      if (j.p >= gamma[i] * T && j.p < gamma[i - 1] * T) {
        band_p[i] += j.p;
        band_area[i] += Rational(j.r) * j.p;
        break;
      }
    }
  }

  Rational budget =
      epsilon * (total_p(ins.jobs) / ins.m + Rational(2) * area(ins.jobs) / ins.R);
  for (int i = 1; i <= inv; ++i) {
    Rational load = band_p[i] / ins.m + Rational(2) * band_area[i] / ins.R;
    if (load <= budget)
      return GapParams{epsilon, gamma[i - 1], gamma[i], i};
  }
  // The 1/eps bands are disjoint, so one of them must fit the budget.
  throw std::logic_error("medium-gap pigeonhole failed");
}

Classification classify(const Instance &ins, const GapParams &gap,
                        const Rational &T) {
  Classification c;
  for (const auto &j : ins.jobs) {
    if (j.p >= gap.delta * T)
      c.large.insert(j.id);
    else if (j.p < gap.mu * T)
      c.small.insert(j.id);
    else
      c.medium.insert(j.id);
  }
  return c;
}

Schedule schedule_medium(const Instance &ins, const std::set<JobId> &medium) {
  Instance sub;
  sub.m = ins.m;
  sub.R = ins.R;
  for (const auto &j : ins.jobs)
    if (medium.count(j.id)) sub.jobs.push_back(j);
  return greedy_list_schedule(sub, default_order(sub));
}

std::vector<RoundedJob> round_large(const std::vector<Job> &jobs,
                                    const Rational &epsilon, const Rational &T) {
  int inv = inv_eps_int(epsilon);
  std::vector<RoundedJob> out;
  for (const auto &j : jobs) {
    if (j.p > T)
      throw std::invalid_argument("job " + std::to_string(j.id) +
                                  " exceeds the horizon scale T");
    // level l with p in [eps^l T, eps^{l-1} T); p == T lands on l = 0
    int level = 0;
    Rational hi = T;  // eps^{l-1} T for l = level + 1 below
    while (j.p < hi) {
      hi *= epsilon;
      ++level;
    }
    // now hi = eps^level T <= p; the half-open interval is [hi, hi/eps)
    Rational grid = hi * epsilon;  // eps^{level+1} T
    Int k = ceil_int(Rational(j.p / grid));
    RoundedJob rj;
    rj.id = j.id;
    rj.level = level;
    rj.multiplier = k;
    rj.rounded_p = Rational(k) * grid;
    // k in {1/eps, ..., 1/eps^2}; the upper boundary 1/eps^2 is reachable
    // when p sits just under eps^{l-1} T
    if (k < inv || k > Int(inv) * inv)
      throw std::logic_error("rounding multiplier out of range");
    out.push_back(rj);
  }
  return out;
}

LayerGrid build_layers(const Rational &T_prime, const Rational &epsilon,
                       const Rational &delta, const Rational &T) {
  LayerGrid grid;
  grid.T_prime = T_prime;
  grid.step = epsilon * delta * T;
  if (grid.step <= 0) throw std::invalid_argument("layer step must be positive");
  Rational ratio = T_prime / grid.step;
  if (den(ratio) != 1)
    throw std::invalid_argument("T' must be a multiple of eps*delta*T");
  for (Rational s = 0; s < T_prime; s += grid.step)
    grid.start_points.push_back(s);
  return grid;
}

Int rounded_value_budget(const Rational &epsilon, const Rational &delta) {
  // levels 0..L with eps^L >= delta, multipliers 1/eps..1/eps^2
  int inv = inv_eps_int(epsilon);
  Int levels = 0;
  Rational x = 1;
  while (x >= delta) {
    x *= epsilon;
    ++levels;
  }
  return levels * (Int(inv) * inv - inv + 1);
}

}  // namespace srcs
