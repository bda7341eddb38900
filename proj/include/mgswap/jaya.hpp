#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace mgswap {

enum class GeneKind { Continuous, Integer, Binary };

struct Gene {
  GeneKind kind = GeneKind::Continuous;
  double lower = 0.0;
  double upper = 1.0;
};

struct JayaConfig {
  int population_size = 100;
  int max_generations = 1500;
  double penalty_weight = 1e3;  // $ per kW of violation
  std::uint64_t seed = 1;

  void validate() const;
};

/// Candidate update for one member:
/// x' = x + r1 (best - |x|) - r2 (worst - |x|), then repaired.
std::vector<double> jaya_move(const std::vector<double>& x, const std::vector<double>& best,
                              const std::vector<double>& worst, const std::vector<Gene>& genes,
                              std::mt19937_64& rng);

/// Same update with caller-supplied random factors (one pair per gene).
std::vector<double> jaya_move(const std::vector<double>& x, const std::vector<double>& best,
                              const std::vector<double>& worst, const std::vector<Gene>& genes,
                              const std::vector<double>& r1, const std::vector<double>& r2);

/// Continuous genes are clipped; integer and binary genes are rounded, then
/// clamped.
void repair_genes(std::vector<double>& x, const std::vector<Gene>& genes);

/// Objective to minimize. It may rewrite the vector (Lamarckian repair).
using JayaObjective = std::function<double(std::vector<double>&)>;

struct JayaResult {
  std::vector<double> best;
  double best_value = 0.0;
  std::vector<double> history;  // best-so-far after each generation
  long evaluations = 0;
};

/// Minimize with the JAYA population scheme. `seeds` are injected into the
/// initial population before the random members.
JayaResult jaya_minimize(const std::vector<Gene>& genes, const JayaObjective& f,
                         const JayaConfig& cfg, const std::vector<std::vector<double>>& seeds = {});

}  // namespace mgswap
