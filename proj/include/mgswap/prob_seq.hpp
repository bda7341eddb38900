#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mgswap/stochastic.hpp"

namespace mgswap {

/// Discretized probability distribution over power levels 0, q, 2q, ..., Nq.
///
/// Weights are non-negative and sum to one. Index i stands for the power
/// level i*q, so a sequence of length N+1 covers [0, Nq].
class ProbSeq {
 public:
  /// Validates the weights (non-negative, sum 1 within 1e-9) and step.
  ProbSeq(double step_q, std::vector<double> weights);

  static ProbSeq delta(double step_q, std::size_t index);

  double step() const { return step_; }
  /// Highest index N; the sequence has N+1 weights.
  std::size_t max_index() const { return weights_.size() - 1; }
  std::size_t size() const { return weights_.size(); }
  std::span<const double> weights() const { return weights_; }
  double operator[](std::size_t i) const { return i < weights_.size() ? weights_[i] : 0.0; }

  /// Expected power in kW.
  double expectation() const;
  double total() const;

 private:
  double step_;
  std::vector<double> weights_;
};

struct Discretization {
  ProbSeq seq;
  /// Probability outside [0, Nq] that was dropped before renormalizing.
  double shaved_mass = 0.0;
};

/// Bin a power distribution at step q. Bin 0 takes [0, q/2) plus atoms that
/// round to 0, interior bins take [iq - q/2, iq + q/2), the last bin takes
/// [Nq - q/2, Nq]; N = ceil(p_max / q). Throws on q <= 0 or when less than
/// half of the probability lands inside the grid.
Discretization discretize_with_report(const PowerDistribution& dist, double p_max, double q);
ProbSeq discretize(const PowerDistribution& dist, double p_max, double q);

/// Addition-type convolution: distribution of the sum of two independent
/// sequences.
ProbSeq atc(const ProbSeq& a, const ProbSeq& b);

/// Subtraction-type convolution: distribution of max(d - c, 0). Negative
/// differences accumulate in index 0; the result keeps d's length.
ProbSeq stc(const ProbSeq& d, const ProbSeq& c);

inline double expectation(const ProbSeq& s) { return s.expectation(); }

}  // namespace mgswap
