#include "mgswap/jaya.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mgswap {

void JayaConfig::validate() const {
  if (population_size < 2) throw std::invalid_argument("jaya: population_size must be at least 2");
  if (max_generations < 1) throw std::invalid_argument("jaya: max_generations must be at least 1");
  if (penalty_weight < 0) throw std::invalid_argument("jaya: penalty_weight must be non-negative");
}

void repair_genes(std::vector<double>& x, const std::vector<Gene>& genes) {
  for (std::size_t j = 0; j < x.size(); ++j) {
    const auto& g = genes[j];
    double v = x[j];
    if (!std::isfinite(v)) v = g.lower;
    if (g.kind != GeneKind::Continuous) v = std::round(v);
    const double lo = g.kind == GeneKind::Binary ? 0.0 : g.lower;
    const double hi = g.kind == GeneKind::Binary ? 1.0 : g.upper;
    x[j] = std::clamp(v, lo, hi);
  }
}

std::vector<double> jaya_move(const std::vector<double>& x, const std::vector<double>& best,
                              const std::vector<double>& worst, const std::vector<Gene>& genes,
                              const std::vector<double>& r1, const std::vector<double>& r2) {
  const std::size_t n = x.size();
  if (best.size() != n || worst.size() != n || genes.size() != n || r1.size() != n || r2.size() != n)
    throw std::invalid_argument("jaya_move: length mismatch");
  std::vector<double> out(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double a = std::abs(x[j]);
    out[j] = x[j] + r1[j] * (best[j] - a) - r2[j] * (worst[j] - a);
  }
  repair_genes(out, genes);
  return out;
}

std::vector<double> jaya_move(const std::vector<double>& x, const std::vector<double>& best,
                              const std::vector<double>& worst, const std::vector<Gene>& genes,
                              std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> r1(x.size()), r2(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) {
    r1[j] = u(rng);
    r2[j] = u(rng);
  }
  return jaya_move(x, best, worst, genes, r1, r2);
}

JayaResult jaya_minimize(const std::vector<Gene>& genes, const JayaObjective& f,
                         const JayaConfig& cfg, const std::vector<std::vector<double>>& seeds) {
  cfg.validate();
  if (genes.empty()) throw std::invalid_argument("jaya: no genes");
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const int np = cfg.population_size;

  std::vector<std::vector<double>> pop;
  std::vector<double> val;
  pop.reserve(np);
  JayaResult res;
  for (const auto& s : seeds) {
    if (static_cast<int>(pop.size()) >= np) break;
    if (s.size() != genes.size()) throw std::invalid_argument("jaya: seed length mismatch");
    pop.push_back(s);
    repair_genes(pop.back(), genes);
  }
  while (static_cast<int>(pop.size()) < np) {
    std::vector<double> x(genes.size());
    for (std::size_t j = 0; j < genes.size(); ++j) {
      const auto& g = genes[j];
      x[j] = g.kind == GeneKind::Binary ? (u(rng) < 0.5 ? 0.0 : 1.0)
                                        : g.lower + u(rng) * (g.upper - g.lower);
    }
    repair_genes(x, genes);
    pop.push_back(std::move(x));
  }
  for (auto& x : pop) {
    val.push_back(f(x));
    ++res.evaluations;
  }

  auto best_index = [&] { return static_cast<int>(std::min_element(val.begin(), val.end()) - val.begin()); };
  res.history.reserve(cfg.max_generations);
  for (int gen = 0; gen < cfg.max_generations; ++gen) {
    const int ib = best_index();
    const int iw = static_cast<int>(std::max_element(val.begin(), val.end()) - val.begin());
    const std::vector<double> best = pop[ib];
    const std::vector<double> worst = pop[iw];
    for (int i = 0; i < np; ++i) {
      auto cand = jaya_move(pop[i], best, worst, genes, rng);
      const double v = f(cand);
      ++res.evaluations;
      if (v < val[i]) {
        pop[i] = std::move(cand);
        val[i] = v;
      }
    }
    res.history.push_back(val[best_index()]);
  }
  const int ib = best_index();
  res.best = pop[ib];
  res.best_value = val[ib];
  return res;
}

}  // namespace mgswap
