#include "mgswap/lp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace mgswap {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPrimalTol = 1e-9;
constexpr double kPivotTol = 1e-9;
constexpr double kBox = 1e7;
constexpr int kDegenerateBeforeBland = 50;

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

char kind_code(VarKind k) {
  switch (k) {
    case VarKind::Continuous: return 'C';
    case VarKind::Integer: return 'I';
    case VarKind::Binary: return 'B';
  }
  return '?';
}

char sense_code(Sense s) {
  switch (s) {
    case Sense::LessEqual: return 'L';
    case Sense::GreaterEqual: return 'G';
    case Sense::Equal: return 'E';
  }
  return '?';
}
}  // namespace

const char* to_string(LpStatus s) {
  switch (s) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::Unbounded: return "unbounded";
    case LpStatus::IterationLimit: return "iteration-limit";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// MilpInstance

int MilpInstance::add_variable(std::string name, VarKind kind, double lower, double upper,
                               double cost) {
  if (kind == VarKind::Binary) {
    lower = std::max(lower, 0.0);
    upper = std::min(upper, 1.0);
  }
  variables.push_back({std::move(name), kind, lower, upper});
  objective.push_back(cost);
  return static_cast<int>(variables.size()) - 1;
}

void MilpInstance::add_constraint(std::string name, std::vector<Term> terms, Sense sense,
                                  double rhs) {
  for (const auto& t : terms)
    if (t.var < 0 || t.var >= num_variables())
      throw std::invalid_argument("constraint " + name + " references an undeclared variable");
  constraints.push_back({std::move(name), std::move(terms), sense, rhs});
}

int MilpInstance::integer_count() const {
  return static_cast<int>(
      std::count_if(variables.begin(), variables.end(), [](const Variable& v) { return v.is_integral(); }));
}

int MilpInstance::free_integer_count() const {
  int n = 0;
  for (const auto& v : variables)
    if (v.is_integral() && std::floor(v.upper + 1e-9) > std::ceil(v.lower - 1e-9)) ++n;
  return n;
}

int MilpInstance::find_variable(const std::string& name) const {
  for (int i = 0; i < num_variables(); ++i)
    if (variables[i].name == name) return i;
  return -1;
}

void MilpInstance::validate() const {
  if (objective.size() != variables.size())
    throw std::invalid_argument("objective length differs from variable count");
  for (const auto& v : variables) {
    if (!std::isfinite(v.lower) || !std::isfinite(v.upper))
      throw std::invalid_argument("variable " + v.name + " has an infinite bound");
    if (v.lower > v.upper) throw std::invalid_argument("variable " + v.name + " has lower > upper");
  }
  for (const auto& c : constraints) {
    if (!std::isfinite(c.rhs)) throw std::invalid_argument("constraint " + c.name + " has an infinite rhs");
    for (const auto& t : c.terms)
      if (t.var < 0 || t.var >= num_variables())
        throw std::invalid_argument("constraint " + c.name + " references an undeclared variable");
  }
}

double MilpInstance::evaluate_objective(const std::vector<double>& x) const {
  double acc = objective_offset;
  for (std::size_t j = 0; j < objective.size(); ++j) acc += objective[j] * x.at(j);
  return acc;
}

double MilpInstance::max_violation(const std::vector<double>& x) const {
  double worst = 0.0;
  for (int j = 0; j < num_variables(); ++j) {
    worst = std::max(worst, variables[j].lower - x.at(j));
    worst = std::max(worst, x.at(j) - variables[j].upper);
  }
  for (const auto& c : constraints) {
    double lhs = 0.0;
    for (const auto& t : c.terms) lhs += t.coef * x.at(t.var);
    switch (c.sense) {
      case Sense::LessEqual: worst = std::max(worst, lhs - c.rhs); break;
      case Sense::GreaterEqual: worst = std::max(worst, c.rhs - lhs); break;
      case Sense::Equal: worst = std::max(worst, std::abs(lhs - c.rhs)); break;
    }
  }
  return worst;
}

std::string MilpInstance::to_text() const {
  std::ostringstream out;
  out << "# mgswap milp v1\n";
  out << "sense " << (maximize ? "max" : "min") << "\n";
  out << "offset " << num(objective_offset) << "\n";
  for (int j = 0; j < num_variables(); ++j) {
    const auto& v = variables[j];
    out << "var " << v.name << ' ' << kind_code(v.kind) << ' ' << num(v.lower) << ' '
        << num(v.upper) << ' ' << num(objective[j]) << "\n";
  }
  for (const auto& c : constraints) {
    out << "con " << c.name << ' ' << sense_code(c.sense) << ' ' << num(c.rhs) << " :";
    for (const auto& t : c.terms) out << ' ' << num(t.coef) << '*' << variables[t.var].name;
    out << "\n";
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// DenseDualSimplex

DenseDualSimplex::DenseDualSimplex(const MilpInstance& m)
    : n_(m.num_variables()),
      m_(m.num_constraints()),
      cols_(n_ + m_),
      maximize_(m.maximize),
      offset_(m.objective_offset) {
  cost_.assign(cols_, 0.0);
  lo_.assign(cols_, 0.0);
  hi_.assign(cols_, 0.0);
  for (int j = 0; j < n_; ++j) {
    cost_[j] = maximize_ ? -m.objective[j] : m.objective[j];
    lo_[j] = m.variables[j].lower;
    hi_[j] = m.variables[j].upper;
    if (!std::isfinite(lo_[j]) || !std::isfinite(hi_[j]))
      throw std::invalid_argument("simplex requires finite variable bounds: " + m.variables[j].name);
  }
  tab_.assign(static_cast<std::size_t>(m_) * cols_, 0.0);
  for (int i = 0; i < m_; ++i) {
    const auto& c = m.constraints[i];
    double* row = &tab_[static_cast<std::size_t>(i) * cols_];
    for (const auto& t : c.terms) row[t.var] += t.coef;
    row[n_ + i] = 1.0;
    const int s = n_ + i;
    switch (c.sense) {
      case Sense::LessEqual: lo_[s] = 0.0; hi_[s] = kInf; break;
      case Sense::GreaterEqual: lo_[s] = -kInf; hi_[s] = 0.0; break;
      case Sense::Equal: lo_[s] = 0.0; hi_[s] = 0.0; break;
    }
  }
  state_.assign(cols_, State::AtLower);
  x_.assign(cols_, 0.0);
  for (int j = 0; j < n_; ++j) {
    if (cost_[j] < 0) {
      state_[j] = State::AtUpper;
      x_[j] = hi_[j];
    } else {
      x_[j] = lo_[j];
    }
  }
  head_.resize(m_);
  row_of_.assign(cols_, -1);
  for (int i = 0; i < m_; ++i) {
    const int s = n_ + i;
    head_[i] = s;
    row_of_[s] = i;
    state_[s] = State::Basic;
    double lhs = 0.0;
    const double* row = &tab_[static_cast<std::size_t>(i) * cols_];
    for (int j = 0; j < n_; ++j) lhs += row[j] * x_[j];
    x_[s] = m.constraints[i].rhs - lhs;
  }
  d_ = cost_;
}

void DenseDualSimplex::move_nonbasic(int col, double value) {
  const double delta = value - x_[col];
  if (delta == 0.0) return;
  for (int i = 0; i < m_; ++i) {
    const double a = tab_[static_cast<std::size_t>(i) * cols_ + col];
    if (a != 0.0) x_[head_[i]] -= a * delta;
  }
  x_[col] = value;
}

void DenseDualSimplex::set_bounds(int var, double lower, double upper) {
  lo_[var] = lower;
  hi_[var] = upper;
  if (state_[var] == State::Basic) return;
  if (state_[var] == State::AtUpper && std::isfinite(upper)) {
    move_nonbasic(var, upper);
  } else {
    state_[var] = State::AtLower;
    move_nonbasic(var, lower);
  }
}

void DenseDualSimplex::pivot(int r, int col) {
  double* prow = &tab_[static_cast<std::size_t>(r) * cols_];
  const double inv = 1.0 / prow[col];
  nz_.clear();
  for (int j = 0; j < cols_; ++j) {
    if (prow[j] == 0.0) continue;
    prow[j] *= inv;
    nz_.push_back(j);
  }
  prow[col] = 1.0;
  for (int i = 0; i < m_; ++i) {
    if (i == r) continue;
    double* row = &tab_[static_cast<std::size_t>(i) * cols_];
    const double f = row[col];
    if (f == 0.0) continue;
    for (int j : nz_) row[j] -= f * prow[j];
    row[col] = 0.0;
  }
  const double fd = d_[col];
  if (fd != 0.0) {
    for (int j : nz_) d_[j] -= fd * prow[j];
    d_[col] = 0.0;
  }
}

LpStatus DenseDualSimplex::solve(long max_iterations) {
  int degenerate_run = 0;
  for (long it = 0; it < max_iterations; ++it) {
    const bool bland = degenerate_run >= kDegenerateBeforeBland;
    // Leaving row: the most infeasible basic variable (smallest index under Bland).
    int r = -1;
    double worst = kPrimalTol;
    int best_col = cols_;
    for (int i = 0; i < m_; ++i) {
      const int b = head_[i];
      const double v = std::max(lo_[b] - x_[b], x_[b] - hi_[b]);
      if (v <= kPrimalTol) continue;
      if (bland) {
        if (b < best_col) {
          best_col = b;
          r = i;
        }
      } else if (v > worst) {
        worst = v;
        r = i;
      }
    }
    if (r < 0) return LpStatus::Optimal;

    const int leaving = head_[r];
    const bool increase = x_[leaving] < lo_[leaving];
    const double target = increase ? lo_[leaving] : hi_[leaving];
    const double* row = &tab_[static_cast<std::size_t>(r) * cols_];

    int enter = -1;
    double best_ratio = kInf;
    double best_alpha = 0.0;
    for (int j = 0; j < cols_; ++j) {
      if (state_[j] == State::Basic) continue;
      if (lo_[j] == hi_[j]) continue;
      const double a = row[j];
      if (std::abs(a) <= kPivotTol) continue;
      // Moving x_j by +delta changes the leaving variable by -a*delta.
      const bool can_raise = state_[j] == State::AtLower;
      const bool eligible = increase ? (can_raise ? a < 0 : a > 0) : (can_raise ? a > 0 : a < 0);
      if (!eligible) continue;
      const double ratio = std::abs(d_[j]) / std::abs(a);
      if (bland) {
        if (ratio < best_ratio - 1e-12) {
          best_ratio = ratio;
          enter = j;
          best_alpha = std::abs(a);
        }
      } else if (ratio < best_ratio - 1e-12 ||
                 (ratio <= best_ratio + 1e-12 && std::abs(a) > best_alpha)) {
        best_ratio = ratio;
        enter = j;
        best_alpha = std::abs(a);
      }
    }
    if (enter < 0) return LpStatus::Infeasible;

    degenerate_run = best_ratio <= 1e-12 ? degenerate_run + 1 : 0;

    const double theta = (x_[leaving] - target) / row[enter];
    for (int i = 0; i < m_; ++i) {
      const double a = tab_[static_cast<std::size_t>(i) * cols_ + enter];
      if (a != 0.0) x_[head_[i]] -= a * theta;
    }
    x_[enter] += theta;
    x_[leaving] = target;

    pivot(r, enter);
    row_of_[leaving] = -1;
    state_[leaving] = increase ? State::AtLower : State::AtUpper;
    head_[r] = enter;
    row_of_[enter] = r;
    state_[enter] = State::Basic;
    ++iterations_;
  }
  return LpStatus::IterationLimit;
}

double DenseDualSimplex::min_objective() const {
  double acc = 0.0;
  for (int j = 0; j < n_; ++j) acc += cost_[j] * x_[j];
  return acc;
}

double DenseDualSimplex::objective() const {
  const double v = min_objective();
  return (maximize_ ? -v : v) + offset_;
}

std::vector<double> DenseDualSimplex::primal() const {
  std::vector<double> out(x_.begin(), x_.begin() + n_);
  for (int j = 0; j < n_; ++j) out[j] = std::clamp(out[j], lo_[j], hi_[j]);
  return out;
}

LpResult lp_relax_solve(const MilpInstance& m) {
  MilpInstance boxed = m;
  std::vector<int> boxed_vars;
  for (int j = 0; j < boxed.num_variables(); ++j) {
    auto& v = boxed.variables[j];
    v.kind = VarKind::Continuous;
    bool touched = false;
    if (!std::isfinite(v.lower)) {
      v.lower = -kBox;
      touched = true;
    }
    if (!std::isfinite(v.upper)) {
      v.upper = kBox;
      touched = true;
    }
    if (touched) boxed_vars.push_back(j);
  }
  boxed.validate();
  DenseDualSimplex lp(boxed);
  LpResult res;
  res.status = lp.solve();
  res.iterations = lp.iterations();
  if (res.status != LpStatus::Optimal) return res;
  res.x = lp.primal();
  res.objective = m.evaluate_objective(res.x);
  for (int j : boxed_vars)
    if (std::abs(res.x[j]) >= kBox * (1 - 1e-9)) res.status = LpStatus::Unbounded;
  return res;
}

}  // namespace mgswap
