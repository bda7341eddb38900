#include "mgswap/prob_seq.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace mgswap {

namespace {
constexpr double kSumTolerance = 1e-9;

void require_same_step(const ProbSeq& a, const ProbSeq& b) {
  const double scale = std::max(a.step(), b.step());
  if (std::abs(a.step() - b.step()) > 1e-12 * scale)
    throw std::invalid_argument("probabilistic sequences have different step sizes");
}
}  // namespace

ProbSeq::ProbSeq(double step_q, std::vector<double> weights)
    : step_(step_q), weights_(std::move(weights)) {
  if (!(step_ > 0)) throw std::invalid_argument("step size must be positive");
  if (weights_.empty()) throw std::invalid_argument("probabilistic sequence must be non-empty");
  for (double w : weights_)
    if (!(w >= 0)) throw std::invalid_argument("probabilistic sequence has a negative weight");
  const double sum = total();
  if (std::abs(sum - 1.0) > kSumTolerance)
    throw std::invalid_argument("probabilistic sequence weights sum to " + std::to_string(sum));
}

ProbSeq ProbSeq::delta(double step_q, std::size_t index) {
  std::vector<double> w(index + 1, 0.0);
  w[index] = 1.0;
  return ProbSeq(step_q, std::move(w));
}

double ProbSeq::expectation() const {
  double acc = 0.0;
  for (std::size_t i = 1; i < weights_.size(); ++i) acc += static_cast<double>(i) * weights_[i];
  return step_ * acc;
}

double ProbSeq::total() const { return std::accumulate(weights_.begin(), weights_.end(), 0.0); }

Discretization discretize_with_report(const PowerDistribution& dist, double p_max, double q) {
  if (!(q > 0)) throw std::invalid_argument("discretize: step size must be positive");
  if (p_max < 0) throw std::invalid_argument("discretize: p_max must be non-negative");
  // 60 / 2.5 must give 24, not 25, so trim floating noise before the ceiling.
  const auto n = static_cast<std::size_t>(std::ceil(p_max / q - 1e-9));
  std::vector<double> w(n + 1, 0.0);
  const double half = 0.5 * q;
  for (std::size_t i = 0; i <= n; ++i) {
    const double centre = static_cast<double>(i) * q;
    const double lo = i == 0 ? 0.0 : centre - half;
    const double hi = i == n ? centre : centre + half;
    if (hi > lo && dist.interval_mass) w[i] += dist.interval_mass(lo, hi);
  }
  for (const auto& atom : dist.atoms) {
    if (atom.probability <= 0) continue;
    const auto idx = static_cast<long long>(std::llround(atom.location / q));
    if (idx < 0 || static_cast<std::size_t>(idx) > n) continue;
    w[static_cast<std::size_t>(idx)] += atom.probability;
  }
  for (double& x : w) x = std::max(x, 0.0);
  const double captured = std::accumulate(w.begin(), w.end(), 0.0);
  if (captured < 0.5)
    throw std::invalid_argument("discretize: distribution places only " + std::to_string(captured) +
                                " of its mass on the grid");
  for (double& x : w) x /= captured;
  return {ProbSeq(q, std::move(w)), std::max(0.0, 1.0 - captured)};
}

ProbSeq discretize(const PowerDistribution& dist, double p_max, double q) {
  return discretize_with_report(dist, p_max, q).seq;
}

ProbSeq atc(const ProbSeq& a, const ProbSeq& b) {
  require_same_step(a, b);
  std::vector<double> c(a.size() + b.size() - 1, 0.0);
  const auto wa = a.weights();
  const auto wb = b.weights();
  for (std::size_t i = 0; i < wa.size(); ++i) {
    if (wa[i] == 0.0) continue;
    for (std::size_t j = 0; j < wb.size(); ++j) c[i + j] += wa[i] * wb[j];
  }
  return ProbSeq(a.step(), std::move(c));
}

ProbSeq stc(const ProbSeq& d, const ProbSeq& c) {
  require_same_step(d, c);
  std::vector<double> e(d.size(), 0.0);
  const auto wd = d.weights();
  const auto wc = c.weights();
  for (std::size_t id = 0; id < wd.size(); ++id) {
    if (wd[id] == 0.0) continue;
    for (std::size_t ic = 0; ic < wc.size(); ++ic) {
      const double p = wd[id] * wc[ic];
      if (id > ic)
        e[id - ic] += p;
      else
        e[0] += p;
    }
  }
  return ProbSeq(d.step(), std::move(e));
}

}  // namespace mgswap
