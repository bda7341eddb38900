#pragma once
// Textbook two-phase primal simplex on a full tableau with Bland's rule.
// Slow and simple on purpose: it shares no code with the library's dual
// simplex and is only meant for programs with a few dozen columns.

#include <cmath>
#include <limits>
#include <vector>

namespace oracle {

struct LpRow {
  std::vector<double> a;  // dense, one coefficient per variable
  int sense = -1;         // -1: <=, 0: =, +1: >=
  double b = 0.0;
};

struct LpOutcome {
  bool feasible = false;
  double value = 0.0;  // minimized objective
  std::vector<double> x;
};

/// min c.x subject to `rows` and lo <= x <= hi (finite bounds).
inline LpOutcome tableau_lp(const std::vector<double>& c, std::vector<LpRow> rows, const std::vector<double>& lo,
                            const std::vector<double>& hi) {
  constexpr double eps = 1e-10;
  const int n = static_cast<int>(c.size());
  for (int j = 0; j < n; ++j) {
    LpRow r;
    r.a.assign(n, 0.0);
    r.a[j] = 1.0;
    r.b = hi[j];
    rows.push_back(r);
  }
  // Shift to y = x - lo >= 0 and make every right-hand side non-negative.
  for (auto& r : rows) {
    for (int j = 0; j < n; ++j) r.b -= r.a[j] * lo[j];
    if (r.b < 0) {
      for (double& v : r.a) v = -v;
      r.b = -r.b;
      r.sense = -r.sense;
    }
  }
  const int m = static_cast<int>(rows.size());
  int slacks = 0, arts = 0;
  for (const auto& r : rows) {
    slacks += r.sense != 0;
    arts += r.sense != -1;
  }
  const int cols = n + slacks + arts;
  const int first_art = n + slacks;
  std::vector<std::vector<double>> T(m, std::vector<double>(cols + 1, 0.0));
  std::vector<int> basis(m);
  int s = n, a = first_art;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) T[i][j] = rows[i].a[j];
    T[i][cols] = rows[i].b;
    if (rows[i].sense == -1) {
      T[i][s] = 1.0;
      basis[i] = s++;
    } else {
      if (rows[i].sense == 1) T[i][s++] = -1.0;
      T[i][a] = 1.0;
      basis[i] = a++;
    }
  }

  auto pivot = [&](int r, int col) {
    const double p = T[r][col];
    for (double& v : T[r]) v /= p;
    for (int i = 0; i < m; ++i) {
      if (i == r || T[i][col] == 0.0) continue;
      const double f = T[i][col];
      for (int j = 0; j <= cols; ++j) T[i][j] -= f * T[r][j];
    }
    basis[r] = col;
  };
  auto run = [&](const std::vector<double>& cost, int allowed) {
    for (int it = 0; it < 100000; ++it) {
      int enter = -1;
      for (int j = 0; j < allowed && enter < 0; ++j) {
        double d = cost[j];
        for (int i = 0; i < m; ++i) d -= cost[basis[i]] * T[i][j];
        if (d < -1e-9) enter = j;
      }
      if (enter < 0) return;
      int leave = -1;
      double best = std::numeric_limits<double>::infinity();
      for (int i = 0; i < m; ++i) {
        if (T[i][enter] <= eps) continue;
        const double ratio = T[i][cols] / T[i][enter];
        if (ratio < best - 1e-12 || (ratio <= best + 1e-12 && leave >= 0 && basis[i] < basis[leave])) {
          best = std::min(best, ratio);
          leave = i;
        }
      }
      if (leave < 0) return;  // unbounded; impossible with finite bounds
      pivot(leave, enter);
    }
  };

  std::vector<double> cost1(cols, 0.0);
  for (int j = first_art; j < cols; ++j) cost1[j] = 1.0;
  run(cost1, cols);
  double infeas = 0.0;
  for (int i = 0; i < m; ++i)
    if (basis[i] >= first_art) infeas += T[i][cols];
  LpOutcome out;
  if (infeas > 1e-7) return out;
  // Drive leftover zero-level artificials out where possible.
  for (int i = 0; i < m; ++i) {
    if (basis[i] < first_art) continue;
    for (int j = 0; j < first_art; ++j)
      if (std::abs(T[i][j]) > 1e-9) {
        pivot(i, j);
        break;
      }
  }
  std::vector<double> cost2(cols, 0.0);
  for (int j = 0; j < n; ++j) cost2[j] = c[j];
  run(cost2, first_art);

  out.feasible = true;
  out.x = lo;
  for (int i = 0; i < m; ++i)
    if (basis[i] < n) out.x[basis[i]] += T[i][cols];
  for (int j = 0; j < n; ++j) out.value += c[j] * out.x[j];
  return out;
}

}  // namespace oracle
