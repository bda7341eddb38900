#pragma once

#include <functional>
#include <vector>

#include "mgswap/lp.hpp"

namespace mgswap {

struct BbaConfig {
  long node_limit = 1'000'000;
  double abs_gap = 1e-6;          // prune when bound is within this of the incumbent
  double integrality_tol = 1e-6;
  long lp_iteration_limit = 200000;
  /// Optional problem-specific rounding: maps a fractional relaxation point to
  /// an integer assignment, which is completed by an LP and offered as an
  /// incumbent. Tried at the root and every `heuristic_every` nodes; at
  /// every node the rounded point is also offered as is, without the LP.
  std::function<std::vector<double>(const std::vector<double>&)> rounding;
  long heuristic_every = 64;
  /// Branching class per variable (empty: one class). The most fractional
  /// variable of the highest class that has any fractional one is branched.
  std::vector<int> branch_priority;
};

enum class MilpStatus { Optimal, Infeasible, NodeLimit };

const char* to_string(MilpStatus s);

struct MilpResult {
  MilpStatus status = MilpStatus::Infeasible;
  double objective = 0.0;  // instance sense
  std::vector<double> x;
  long nodes = 0;
  long branches = 0;
  double best_bound = 0.0;  // instance sense
  double gap = 0.0;         // |objective - best_bound|, 0 when proven optimal
  long lp_iterations = 0;
};

/// Branch and bound over the LP relaxation.
///
/// Best-bound node order (deeper first on ties), branching on the most
/// fractional integer variable. `hint`, when given, is a full assignment whose
/// integer part is fixed and completed by an LP to form the first incumbent.
/// Without a hint (or when it fails) rounding the root relaxation is tried.
MilpResult solve_bba(const MilpInstance& m, const BbaConfig& cfg = {},
                     const std::vector<double>* hint = nullptr);

/// Fix every integer variable to the rounded value in `x` and solve the LP
/// over the continuous ones.
LpResult complete_integer_assignment(const MilpInstance& m, const std::vector<double>& x);

}  // namespace mgswap
