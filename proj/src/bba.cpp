#include "mgswap/bba.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <queue>
#include <stdexcept>

namespace mgswap {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// A solved relaxation kept so children can re-solve from their parent's
// basis. Live copies are counted to bound memory.
struct WarmState {
  DenseDualSimplex lp;
  long* live;
  WarmState(const DenseDualSimplex& s, long* counter) : lp(s), live(counter) { ++*live; }
  ~WarmState() { --*live; }
  WarmState(const WarmState&) = delete;
  WarmState& operator=(const WarmState&) = delete;
};

constexpr long kMaxWarmStates = 48;

struct Node {
  double bound;  // minimization form
  int depth;
  long order;
  std::vector<double> lo, hi;  // integer variables only
  std::shared_ptr<const WarmState> warm;
};

struct NodeAfter {
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound > b.bound;
    if (a.depth != b.depth) return a.depth < b.depth;
    return a.order > b.order;
  }
};

}  // namespace

const char* to_string(MilpStatus s) {
  switch (s) {
    case MilpStatus::Optimal: return "optimal";
    case MilpStatus::Infeasible: return "infeasible";
    case MilpStatus::NodeLimit: return "node-limit";
  }
  return "unknown";
}

LpResult complete_integer_assignment(const MilpInstance& m, const std::vector<double>& x) {
  MilpInstance fixed = m;
  for (int j = 0; j < fixed.num_variables(); ++j) {
    auto& v = fixed.variables[j];
    if (!v.is_integral()) continue;
    const double r = std::round(x.at(j));
    if (r < v.lower - 1e-9 || r > v.upper + 1e-9) return {};
    v.lower = v.upper = r;
  }
  return lp_relax_solve(fixed);
}

MilpResult solve_bba(const MilpInstance& m, const BbaConfig& cfg, const std::vector<double>* hint) {
  m.validate();
  const double sign = m.maximize ? -1.0 : 1.0;
  std::vector<int> ints;
  for (int j = 0; j < m.num_variables(); ++j)
    if (m.variables[j].is_integral()) ints.push_back(j);

  MilpResult out;
  double incumbent = kInf;  // minimization form
  std::vector<double> best_x;

  auto consider = [&](std::vector<double> x) {
    for (int j : ints) x[j] = std::round(x[j]);
    if (m.max_violation(x) > 1e-6) return;
    const double v = sign * m.evaluate_objective(x);
    if (v < incumbent) {
      incumbent = v;
      best_x = std::move(x);
    }
  };

  DenseDualSimplex root(m);
  const LpStatus root_status = root.solve(cfg.lp_iteration_limit);
  out.lp_iterations = root.iterations();
  out.nodes = 1;
  if (root_status == LpStatus::Infeasible) {
    out.status = MilpStatus::Infeasible;
    return out;
  }
  if (root_status != LpStatus::Optimal) throw std::runtime_error("bba: root relaxation hit the iteration limit");

  // First incumbent: from the caller's heuristic, then from rounding.
  if (hint) {
    const auto lp = complete_integer_assignment(m, *hint);
    if (lp.status == LpStatus::Optimal) consider(lp.x);
  }
  auto try_rounding = [&](const std::vector<double>& x) {
    auto lp = complete_integer_assignment(m, x);
    if (lp.status == LpStatus::Optimal) consider(lp.x);
    if (cfg.rounding) {
      lp = complete_integer_assignment(m, cfg.rounding(x));
      if (lp.status == LpStatus::Optimal) consider(lp.x);
    }
  };
  try_rounding(root.primal());

  if (!cfg.branch_priority.empty() && static_cast<int>(cfg.branch_priority.size()) != m.num_variables())
    throw std::invalid_argument("bba: branch_priority needs one entry per variable");
  auto priority = [&](int k) { return cfg.branch_priority.empty() ? 0 : cfg.branch_priority[ints[k]]; };
  auto most_fractional = [&](const std::vector<double>& x) {
    int pick = -1, pick_class = std::numeric_limits<int>::min();
    double best = 0.0;
    for (int k = 0; k < static_cast<int>(ints.size()); ++k) {
      const double v = x[ints[k]];
      const double f = std::abs(v - std::round(v));
      if (f <= cfg.integrality_tol) continue;
      const int c = priority(k);
      if (c > pick_class || (c == pick_class && f > best + 1e-12)) {
        pick_class = c;
        best = f;
        pick = k;
      }
    }
    return pick;
  };

  std::priority_queue<Node, std::vector<Node>, NodeAfter> open;
  long order = 0;
  long live_states = 0;

  auto expand = [&](const DenseDualSimplex& lp, const std::vector<double>& lo,
                    const std::vector<double>& hi, int depth) {
    const std::vector<double> x = lp.primal();
    const double bound = sign * lp.objective();
    if (bound >= incumbent - cfg.abs_gap) return;
    const int k = most_fractional(x);
    if (k < 0) {
      consider(x);
      return;
    }
    if (cfg.rounding) {
      // Cheap check first: integers the objective does not see are often the
      // only fractional ones, and rounding them keeps the node's value.
      consider(cfg.rounding(x));
      if (bound >= incumbent - cfg.abs_gap) return;
    }
    if (cfg.heuristic_every > 0 && out.nodes % cfg.heuristic_every == 0) try_rounding(x);
    ++out.branches;
    const double v = x[ints[k]];
    std::shared_ptr<const WarmState> warm;
    if (live_states < kMaxWarmStates) warm = std::make_shared<const WarmState>(lp, &live_states);
    Node down{bound, depth + 1, order++, lo, hi, warm};
    down.hi[k] = std::floor(v);
    Node up{bound, depth + 1, order++, lo, hi, warm};
    up.lo[k] = std::ceil(v);
    open.push(std::move(down));
    open.push(std::move(up));
  };

  std::vector<double> root_lo, root_hi;
  for (int j : ints) {
    root_lo.push_back(m.variables[j].lower);
    root_hi.push_back(m.variables[j].upper);
  }
  expand(root, root_lo, root_hi, 0);

  bool exhausted = true;
  while (!open.empty()) {
    if (out.nodes >= cfg.node_limit) {
      exhausted = false;
      break;
    }
    Node node = open.top();
    open.pop();
    if (node.bound >= incumbent - cfg.abs_gap) continue;
    ++out.nodes;
    DenseDualSimplex lp = node.warm ? node.warm->lp : root;
    node.warm.reset();
    for (std::size_t k = 0; k < ints.size(); ++k) lp.set_bounds(ints[k], node.lo[k], node.hi[k]);
    const long before = lp.iterations();
    LpStatus st = lp.solve(cfg.lp_iteration_limit);
    out.lp_iterations += lp.iterations() - before;
    if (st == LpStatus::IterationLimit) {
      // Retry from a clean slack basis before giving up on the node.
      MilpInstance sub = m;
      for (std::size_t k = 0; k < ints.size(); ++k) {
        sub.variables[ints[k]].lower = node.lo[k];
        sub.variables[ints[k]].upper = node.hi[k];
      }
      lp = DenseDualSimplex(sub);
      st = lp.solve(cfg.lp_iteration_limit);
      out.lp_iterations += lp.iterations();
      if (st == LpStatus::IterationLimit) throw std::runtime_error("bba: node relaxation hit the iteration limit");
    }
    if (st != LpStatus::Optimal) continue;
    expand(lp, node.lo, node.hi, node.depth);
  }

  if (best_x.empty()) {
    out.status = exhausted ? MilpStatus::Infeasible : MilpStatus::NodeLimit;
    if (!exhausted) out.best_bound = sign * open.top().bound;
    return out;
  }
  out.x = best_x;
  out.objective = m.evaluate_objective(best_x);
  if (exhausted) {
    out.status = MilpStatus::Optimal;
    out.best_bound = out.objective;
    out.gap = 0.0;
  } else {
    out.status = MilpStatus::NodeLimit;
    const double bound = std::min(incumbent, open.top().bound);
    out.best_bound = sign * bound;
    out.gap = incumbent - bound;
  }
  return out;
}

}  // namespace mgswap
