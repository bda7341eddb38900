#pragma once

#include "mgswap/prob_seq.hpp"
#include "mgswap/stochastic.hpp"

namespace mgswap {

/// Sequences of one scheduling period: wind (a), PV (b), their sum (c),
/// load (d) and the equivalent load max(d - c, 0) (e).
struct PeriodUncertainty {
  ProbSeq wt_seq;
  ProbSeq pv_seq;
  ProbSeq joint_der_seq;
  ProbSeq load_seq;
  ProbSeq el_seq;
  /// E(load) - E(wind) - E(pv) in kW. Can be negative under a renewable
  /// surplus even though el_seq is clamped at zero.
  double expected_el = 0.0;
};

PeriodUncertainty build_period_uncertainty(const WindParams& wind, const PvParams& pv,
                                           const LoadParams& load, double q);

/// Assemble a period from already discretized sequences.
PeriodUncertainty combine_sequences(ProbSeq wt, ProbSeq pv, ProbSeq load);

/// Smallest reserve R >= 0 whose covered equivalent-load levels
/// {u : u*q - expected_el <= R} carry at least alpha of the probability.
/// Throws std::invalid_argument for alpha > 1.
double min_reserve_for_confidence(const ProbSeq& e, double expected_el, double alpha);

bool chance_constraint_holds(double r_total, const ProbSeq& e, double expected_el, double alpha);

/// Probability covered by a given reserve (left side of the determinized
/// constraint).
double covered_probability(double r_total, const ProbSeq& e, double expected_el);

}  // namespace mgswap
