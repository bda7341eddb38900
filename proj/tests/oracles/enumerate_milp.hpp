#pragma once
// Exhaustive enumeration of every integer assignment of a MilpInstance, with
// the continuous remainder of each leaf solved by the tableau oracle. Rows
// are checked as soon as all their integer columns are fixed, using the
// continuous bounds for the rest, which only discards leaves that could not
// be feasible anyway.

#include <algorithm>
#include <cmath>
#include <vector>

#include "mgswap/lp.hpp"
#include "tableau_lp.hpp"

namespace oracle {

struct EnumOutcome {
  bool feasible = false;
  double objective = 0.0;  // in the instance's own sense
  std::vector<double> x;
  long leaves = 0;  // LPs solved
};

inline EnumOutcome enumerate_milp(const mgswap::MilpInstance& m) {
  using mgswap::Sense;
  const int n = m.num_variables();
  std::vector<int> ints, conts, pos_in_ints(n, -1);
  for (int j = 0; j < n; ++j) {
    if (m.variables[j].is_integral()) {
      pos_in_ints[j] = static_cast<int>(ints.size());
      ints.push_back(j);
    } else {
      conts.push_back(j);
    }
  }
  // Rows ready for checking once the integer prefix reaches a given depth.
  std::vector<std::vector<int>> ready(ints.size() + 1);
  for (int r = 0; r < m.num_constraints(); ++r) {
    int depth = 0;
    for (const auto& t : m.constraints[r].terms)
      if (pos_in_ints[t.var] >= 0) depth = std::max(depth, pos_in_ints[t.var] + 1);
    ready[depth].push_back(r);
  }

  std::vector<double> x(n, 0.0);
  EnumOutcome best;
  const double sign = m.maximize ? -1.0 : 1.0;

  auto row_possible = [&](int r) {
    const auto& row = m.constraints[r];
    double lo = 0.0, hi = 0.0;
    for (const auto& t : row.terms) {
      const auto& v = m.variables[t.var];
      if (v.is_integral()) {
        lo += t.coef * x[t.var];
        hi += t.coef * x[t.var];
      } else {
        lo += t.coef * (t.coef > 0 ? v.lower : v.upper);
        hi += t.coef * (t.coef > 0 ? v.upper : v.lower);
      }
    }
    constexpr double tol = 1e-9;
    if (row.sense != Sense::GreaterEqual && lo > row.rhs + tol) return false;
    if (row.sense != Sense::LessEqual && hi < row.rhs - tol) return false;
    return true;
  };

  auto leaf = [&]() {
    const int k = static_cast<int>(conts.size());
    std::vector<int> col_of(n, -1);
    for (int i = 0; i < k; ++i) col_of[conts[i]] = i;
    std::vector<double> c(k), lo(k), hi(k);
    for (int i = 0; i < k; ++i) {
      c[i] = sign * m.objective[conts[i]];
      lo[i] = m.variables[conts[i]].lower;
      hi[i] = m.variables[conts[i]].upper;
    }
    std::vector<LpRow> rows;
    for (const auto& row : m.constraints) {
      LpRow r;
      r.a.assign(k, 0.0);
      r.b = row.rhs;
      bool any = false;
      for (const auto& t : row.terms) {
        if (col_of[t.var] >= 0) {
          r.a[col_of[t.var]] += t.coef;
          any = true;
        } else {
          r.b -= t.coef * x[t.var];
        }
      }
      if (!any) continue;  // fully integer rows were checked during the descent
      r.sense = row.sense == Sense::LessEqual ? -1 : row.sense == Sense::Equal ? 0 : 1;
      rows.push_back(std::move(r));
    }
    ++best.leaves;
    const auto lp = tableau_lp(c, rows, lo, hi);
    if (!lp.feasible) return;
    double value = m.objective_offset * sign;
    for (int j : ints) value += sign * m.objective[j] * x[j];
    value += lp.value;
    if (!best.feasible || value < sign * best.objective - 1e-12) {
      best.feasible = true;
      best.objective = sign * value;
      best.x = x;
      for (int i = 0; i < k; ++i) best.x[conts[i]] = lp.x[i];
    }
  };

  auto descend = [&](auto&& self, int depth) -> void {
    for (int r : ready[depth])
      if (!row_possible(r)) return;
    if (depth == static_cast<int>(ints.size())) {
      leaf();
      return;
    }
    const auto& v = m.variables[ints[depth]];
    for (long val = std::lround(std::ceil(v.lower - 1e-9)); val <= std::lround(std::floor(v.upper + 1e-9)); ++val) {
      x[ints[depth]] = static_cast<double>(val);
      self(self, depth + 1);
    }
    x[ints[depth]] = 0.0;
  };
  descend(descend, 0);
  return best;
}

}  // namespace oracle
