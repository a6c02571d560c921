#include "srcs/lp.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace srcs {

int LpModel::add_variable(const std::string &name) {
  variables.push_back(name);
  return static_cast<int>(variables.size()) - 1;
}

void LpModel::add_row(std::vector<std::pair<int, Rational>> coeffs,
                      Relation rel, Rational rhs) {
  rows.push_back(Row{std::move(coeffs), rel, std::move(rhs)});
}

std::string LpModel::dump() const {
  std::ostringstream out;
  for (const auto &row : rows) {
    bool first = true;
    for (const auto &[i, c] : row.coeffs) {
      if (!first) out << " + ";
      out << to_string(c) << " " << variables[i];
      first = false;
    }
    if (first) out << "0";
    out << (row.rel == Relation::Le ? " <= "
            : row.rel == Relation::Eq ? " = "
                                      : " >= ")
        << to_string(row.rhs) << "\n";
  }
  return out.str();
}

bool satisfies(const LpModel &model, const std::vector<Rational> &point) {
  if (point.size() != model.variables.size()) return false;
  for (const auto &v : point)
    if (v < 0) return false;
  for (const auto &row : model.rows) {
    Rational lhs = 0;
    for (const auto &[i, c] : row.coeffs) lhs += c * point[i];
    switch (row.rel) {
      case Relation::Le:
        if (lhs > row.rhs) return false;
        break;
      case Relation::Eq:
        if (lhs != row.rhs) return false;
        break;
      case Relation::Ge:
        if (lhs < row.rhs) return false;
        break;
    }
  }
  return true;
}

int support_size(const std::vector<Rational> &values) {
  int n = 0;
  for (const auto &v : values)
    if (v != 0) ++n;
  return n;
}

namespace {

// Dense simplex tableau in equality form with rhs >= 0.
struct Tableau {
  int nrows = 0;
  int ncols = 0;  // structural + slack + artificial
  std::vector<std::vector<Rational>> a;  // nrows x ncols
  std::vector<Rational> b;               // nrows
  std::vector<int> basis;                // basic column per row
  std::vector<Rational> cost;            // ncols
  Rational cost0;                        // objective constant

  void pivot(int row, int col) {
    Rational piv = a[row][col];
    if (piv != 1) {
      for (int j = 0; j < ncols; ++j)
        if (a[row][j] != 0) a[row][j] /= piv;
      b[row] /= piv;
    }
    for (int i = 0; i < nrows; ++i) {
      if (i == row || a[i][col] == 0) continue;
      Rational f = a[i][col];
      for (int j = 0; j < ncols; ++j)
        if (a[row][j] != 0) a[i][j] -= f * a[row][j];
      if (b[row] != 0) b[i] -= f * b[row];
    }
    if (!cost.empty()) {
      Rational f = cost[col];
      if (f != 0) {
        for (int j = 0; j < ncols; ++j)
          if (a[row][j] != 0) cost[j] -= f * a[row][j];
        cost0 -= f * b[row];
      }
    }
    basis[row] = col;
  }

  // Bland's rule; `allowed` masks columns barred from entering.
  // Returns false when optimal.
  bool step(const std::vector<bool> &allowed) {
    int enter = -1;
    for (int j = 0; j < ncols; ++j) {
      if (!allowed[j]) continue;
      if (cost[j] < 0) {
        enter = j;
        break;
      }
    }
    if (enter < 0) return false;
    int leave = -1;
    Rational best;
    for (int i = 0; i < nrows; ++i) {
      if (a[i][enter] <= 0) continue;
      Rational ratio = b[i] / a[i][enter];
      if (leave < 0 || ratio < best ||
          (ratio == best && basis[i] < basis[leave])) {
        best = ratio;
        leave = i;
      }
    }
    if (leave < 0) throw std::runtime_error("LP unbounded below");
    pivot(leave, enter);
    return true;
  }
};

}  // namespace

BasicSolution solve_feasible(const LpModel &model) {
  const int n = static_cast<int>(model.variables.size());
  const int m = static_cast<int>(model.rows.size());

  Tableau t;
  t.nrows = m;
  // structural + one slack/surplus per inequality + one artificial per row
  int nslack = 0;
  for (const auto &row : model.rows)
    if (row.rel != Relation::Eq) ++nslack;
  t.ncols = n + nslack + m;
  t.a.assign(m, std::vector<Rational>(t.ncols, 0));
  t.b.assign(m, 0);
  t.basis.assign(m, -1);

  int slack_at = n;
  int art_at = n + nslack;
  std::vector<int> row_sign(m, 1);
  for (int i = 0; i < m; ++i) {
    const auto &row = model.rows[i];
    Rational sign = 1;
    Relation rel = row.rel;
    Rational rhs = row.rhs;
    if (rhs < 0) {
      sign = -1;
      row_sign[i] = -1;
      rhs = -rhs;
      rel = rel == Relation::Le ? Relation::Ge
            : rel == Relation::Ge ? Relation::Le
                                  : Relation::Eq;
    }
    for (const auto &[j, c] : row.coeffs) t.a[i][j] += sign * c;
    t.b[i] = rhs;
    if (rel == Relation::Le)
      t.a[i][slack_at++] = 1;
    else if (rel == Relation::Ge)
      t.a[i][slack_at++] = -1;
    t.a[i][art_at + i] = 1;
    t.basis[i] = art_at + i;
  }

  // Phase 1: minimize the sum of artificials.
  t.cost.assign(t.ncols, 0);
  t.cost0 = 0;
  for (int i = 0; i < m; ++i) t.cost[art_at + i] = 1;
  for (int i = 0; i < m; ++i) {  // price out the initial basis
    for (int j = 0; j < t.ncols; ++j) t.cost[j] -= t.a[i][j];
    t.cost0 -= t.b[i];
  }
  std::vector<bool> allowed(t.ncols, true);
  while (t.step(allowed)) {
  }
  Rational phase1 = -t.cost0;  // current objective value
  BasicSolution sol;
  if (phase1 != 0) {
    sol.feasible = false;
    return sol;
  }

  // Drive any residual zero-valued artificials out of the basis.
  for (int i = 0; i < m; ++i) {
    if (t.basis[i] < art_at) continue;
    int enter = -1;
    for (int j = 0; j < art_at; ++j) {
      if (t.a[i][j] != 0) {
        enter = j;
        break;
      }
    }
    if (enter >= 0) t.pivot(i, enter);
    // else the row is redundant; the artificial stays basic at value 0
  }

  // Phase 2: minimize the model objective over non-artificial columns.
  t.cost.assign(t.ncols, 0);
  t.cost0 = 0;
  for (const auto &[j, c] : model.objective) t.cost[j] = c;
  for (int i = 0; i < m; ++i) {
    if (t.cost[t.basis[i]] == 0) continue;
    Rational f = t.cost[t.basis[i]];
    for (int j = 0; j < t.ncols; ++j) t.cost[j] -= f * t.a[i][j];
    t.cost0 -= f * t.b[i];
  }
  for (int j = art_at; j < t.ncols; ++j) allowed[j] = false;
  if (!model.objective.empty()) {
    while (t.step(allowed)) {
    }
  }

  // Row duals via the artificial columns: each keeps a +1 unit column in its
  // row, so its reduced cost is -y_i in the normalized orientation.
  sol.duals.assign(m, 0);
  for (int i = 0; i < m; ++i)
    sol.duals[i] = Rational(row_sign[i]) * -t.cost[art_at + i];

  sol.values.assign(n, 0);
  for (int i = 0; i < m; ++i)
    if (t.basis[i] < n) sol.values[t.basis[i]] = t.b[i];
  for (int i = 0; i < m; ++i)
    if (t.basis[i] < n) sol.basis.push_back(t.basis[i]);
  std::sort(sol.basis.begin(), sol.basis.end());
  sol.objective = 0;
  for (const auto &[j, c] : model.objective) sol.objective += c * sol.values[j];
  return sol;
}

namespace {

// Nonzero null-space vector of `rows` restricted to `cols`, or empty.
std::vector<Rational> null_direction(
    const std::vector<std::vector<Rational>> &rows, int ncols) {
  int m = static_cast<int>(rows.size());
  std::vector<std::vector<Rational>> a = rows;
  std::vector<int> pivot_col;
  int rank = 0;
  for (int col = 0; col < ncols && rank < m; ++col) {
    int sel = -1;
    for (int i = rank; i < m; ++i)
      if (a[i][col] != 0) {
        sel = i;
        break;
      }
    if (sel < 0) continue;
    std::swap(a[rank], a[sel]);
    Rational piv = a[rank][col];
    for (int j = 0; j < ncols; ++j) a[rank][j] /= piv;
    for (int i = 0; i < m; ++i) {
      if (i == rank || a[i][col] == 0) continue;
      Rational f = a[i][col];
      for (int j = 0; j < ncols; ++j) a[i][j] -= f * a[rank][j];
    }
    pivot_col.push_back(col);
    ++rank;
  }
  std::vector<bool> is_pivot(ncols, false);
  for (int c : pivot_col) is_pivot[c] = true;
  int free_col = -1;
  for (int j = 0; j < ncols; ++j)
    if (!is_pivot[j]) {
      free_col = j;
      break;
    }
  if (free_col < 0) return {};
  std::vector<Rational> d(ncols, 0);
  d[free_col] = 1;
  for (int i = 0; i < rank; ++i) d[pivot_col[i]] = -a[i][free_col];
  return d;
}

}  // namespace

BasicSolution to_basic(const LpModel &model,
                       const std::vector<Rational> &point) {
  if (!satisfies(model, point))
    throw std::invalid_argument("to_basic: point violates the model");
  const int n = static_cast<int>(model.variables.size());
  std::vector<Rational> x = point;

  while (true) {
    // support columns are the only movable coordinates
    std::vector<int> sup;
    for (int j = 0; j < n; ++j)
      if (x[j] != 0) sup.push_back(j);
    if (sup.empty()) break;

    // tight rows restricted to the support
    std::vector<std::vector<Rational>> tight;
    for (const auto &row : model.rows) {
      Rational lhs = 0;
      for (const auto &[j, c] : row.coeffs) lhs += c * x[j];
      bool is_tight = row.rel == Relation::Eq || lhs == row.rhs;
      if (!is_tight) continue;
      std::vector<Rational> r(sup.size(), 0);
      for (const auto &[j, c] : row.coeffs) {
        auto it = std::lower_bound(sup.begin(), sup.end(), j);
        if (it != sup.end() && *it == j)
          r[static_cast<size_t>(it - sup.begin())] = c;
      }
      tight.push_back(std::move(r));
    }

    std::vector<Rational> d_sup =
        null_direction(tight, static_cast<int>(sup.size()));
    if (d_sup.empty()) break;  // vertex reached

    std::vector<Rational> d(n, 0);
    for (size_t k = 0; k < sup.size(); ++k) d[sup[k]] = d_sup[k];

    Rational obj_d = 0;
    for (const auto &[j, c] : model.objective) obj_d += c * d[j];
    if (obj_d > 0)  // objective is minimized; never move uphill
      for (auto &v : d) v = -v;

    // Largest step keeping x + t*d feasible; try the chosen direction first,
    // fall back to the opposite one if it is unblocked.
    auto max_step = [&](const std::vector<Rational> &dir,
                        bool &blocked) -> Rational {
      blocked = false;
      Rational t;
      auto update = [&](const Rational &cand) {
        if (!blocked || cand < t) {
          t = cand;
          blocked = true;
        }
      };
      for (int j = 0; j < n; ++j)
        if (dir[j] < 0) update(-x[j] / dir[j]);
      for (const auto &row : model.rows) {
        if (row.rel == Relation::Eq) continue;
        Rational lhs = 0, slope = 0;
        for (const auto &[j, c] : row.coeffs) {
          lhs += c * x[j];
          slope += c * dir[j];
        }
        if (row.rel == Relation::Le && slope > 0)
          update((row.rhs - lhs) / slope);
        if (row.rel == Relation::Ge && slope < 0)
          update((row.rhs - lhs) / slope);
      }
      return t;
    };

    bool blocked = false;
    Rational t = max_step(d, blocked);
    if (!blocked) {
      for (auto &v : d) v = -v;
      t = max_step(d, blocked);
      if (!blocked)
        throw std::runtime_error("to_basic: unbounded direction in both senses");
    }
    for (int j = 0; j < n; ++j) x[j] += t * d[j];
  }

  BasicSolution sol;
  sol.values = x;
  for (int j = 0; j < n; ++j)
    if (x[j] != 0) sol.basis.push_back(j);
  sol.objective = 0;
  for (const auto &[j, c] : model.objective) sol.objective += c * x[j];
  return sol;
}

}  // namespace srcs
