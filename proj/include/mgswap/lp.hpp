#pragma once

#include <cstddef>
#include <limits>
#include <string>
#include <vector>

namespace mgswap {

enum class VarKind { Continuous, Integer, Binary };
enum class Sense { LessEqual, GreaterEqual, Equal };

struct Variable {
  std::string name;
  VarKind kind = VarKind::Continuous;
  double lower = 0.0;
  double upper = 0.0;

  bool is_integral() const { return kind != VarKind::Continuous; }
};

struct Term {
  int var = 0;
  double coef = 0.0;
};

struct Constraint {
  std::string name;
  std::vector<Term> terms;
  Sense sense = Sense::LessEqual;
  double rhs = 0.0;
};

/// A linear (mixed-integer) program: variables with bounds, one linear
/// objective and linear rows. Every variable must have finite bounds.
struct MilpInstance {
  std::vector<Variable> variables;
  std::vector<double> objective;
  double objective_offset = 0.0;
  bool maximize = false;
  std::vector<Constraint> constraints;

  int add_variable(std::string name, VarKind kind, double lower, double upper, double cost = 0.0);
  void add_constraint(std::string name, std::vector<Term> terms, Sense sense, double rhs);

  int num_variables() const { return static_cast<int>(variables.size()); }
  int num_constraints() const { return static_cast<int>(constraints.size()); }
  int integer_count() const;
  /// Integer variables whose bounds still allow more than one value.
  int free_integer_count() const;
  int find_variable(const std::string& name) const;

  /// Throws std::invalid_argument naming the offending variable or row.
  void validate() const;
  double evaluate_objective(const std::vector<double>& x) const;
  /// Largest bound or row violation of a point (0 when feasible).
  double max_violation(const std::vector<double>& x) const;

  /// Debug text: one line per variable, objective term and constraint.
  std::string to_text() const;
};

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

const char* to_string(LpStatus s);

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  double objective = 0.0;  // in the instance's own sense (max or min)
  std::vector<double> x;
  long iterations = 0;
};

/// Dense bounded-variable dual simplex over the rows of a MilpInstance with
/// integrality ignored.
///
/// The slack basis, with every structural column parked at the bound its cost
/// prefers, is dual feasible whenever structural bounds are finite, so the
/// solver needs no phase 1. Tightening bounds preserves dual feasibility, which
/// lets branch and bound re-solve children from a copy of the root tableau.
class DenseDualSimplex {
 public:
  explicit DenseDualSimplex(const MilpInstance& m);

  void set_bounds(int var, double lower, double upper);
  double lower(int var) const { return lo_[var]; }
  double upper(int var) const { return hi_[var]; }

  LpStatus solve(long max_iterations = 200000);

  /// Objective in the instance's own sense.
  double objective() const;
  std::vector<double> primal() const;
  long iterations() const { return iterations_; }

 private:
  enum class State : unsigned char { Basic, AtLower, AtUpper };

  void pivot(int row, int col);
  void move_nonbasic(int col, double value);
  double min_objective() const;

  int n_ = 0;     // structural columns
  int m_ = 0;     // rows
  int cols_ = 0;  // n_ + m_
  bool maximize_ = false;
  double offset_ = 0.0;
  std::vector<double> cost_;   // minimization costs, all columns
  std::vector<double> tab_;    // m_ x cols_, row-major, B^-1 [A | I]
  std::vector<double> d_;      // reduced costs
  std::vector<double> x_;      // values of all columns
  std::vector<double> lo_, hi_;
  std::vector<int> head_;      // basic column per row
  std::vector<int> row_of_;    // row of a basic column, -1 otherwise
  std::vector<State> state_;
  std::vector<int> nz_;  // scratch: nonzero columns of the pivot row
  long iterations_ = 0;
};

/// Solve the linear relaxation. Infinite bounds are accepted here: they are
/// boxed at +-1e7 and a solution resting on the box reports Unbounded.
LpResult lp_relax_solve(const MilpInstance& m);

}  // namespace mgswap
