// QAOA outer loop over the configuration register.
//
// The ideal path (delta = 0) applies the cost table as an exact diagonal
// phase; the shortcut path routes each layer through the table-driven cost
// layer at finite phase resolution.  Parameters are optimized by gradient
// descent with momentum on the exact expectation.
#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "quso/amplitude.hpp"
#include "quso/circuit.hpp"
#include "quso/state.hpp"
#include "quso/thermal.hpp"

namespace quso {

struct QaoaParams {
  Eigen::VectorXd gamma;
  Eigen::VectorXd beta;

  int depth() const { return static_cast<int>(gamma.size()); }
  static QaoaParams constant(int p, double value);
};

struct OptimizerConfig {
  double learning_rate = 0.05;
  double momentum = 0.9;
  double improvement_threshold = 1e-5;
  int max_iterations = 500;
  double fd_step = 1e-4;
  // exact expectation by default; n_mc > 0 switches the reported cost to
  // seeded Monte Carlo sampling (the gradient always uses the exact value)
  int n_mc = 0;
  uint64_t seed = 0;
};

struct RankedEntry {
  std::string bitstring;
  double cost = 0;
  double probability = 0;
};

struct RunResult {
  Eigen::VectorXd trace;          // expectation per iteration
  QaoaParams params;              // final parameters
  Eigen::VectorXd distribution;   // P(x) over the c register
  double expectation = 0;         // final <H_C>
  double best_cost = 0;           // minimum of the trace
  double approximation_ratio = 0; // (c_max - best) / (c_max - c_min)
  std::vector<RankedEntry> ranking;
};

Circuit build_mixer(double beta, const std::vector<int>& c_qubits);

// p = 1 ideal-path state for explicit parameters (helper for landscapes).
Eigen::VectorXcd qaoa_state(const Eigen::VectorXd& costs,
                            const QaoaParams& params);

double expectation_cost(const Eigen::VectorXd& probabilities,
                        const CostTable& table);
// Monte Carlo estimate with an inverse-CDF sampler over P(x).
double expectation_cost_sampled(const Eigen::VectorXd& probabilities,
                                const CostTable& table, int n_mc,
                                uint64_t seed);

// Ideal-path (delta = 0) optimization on the normalized cost table.
RunResult optimize(const CostTable& table, const QaoaParams& init,
                   const OptimizerConfig& cfg);

// Evaluates the shortcut pipeline at fixed parameters and phase resolution
// delta = 2^-k.  Returns the same result shape with a single-entry trace.
RunResult evaluate_shortcut(const CostTable& table, const QaoaParams& params,
                            int k);

// Expectation over a (gamma, beta) grid at depth 1; k = 0 selects the ideal
// path.  Entry (i, j) pairs gamma_i with beta_j.
Eigen::MatrixXd cost_landscape(const CostTable& table,
                               const Eigen::VectorXd& gammas,
                               const Eigen::VectorXd& betas, int k);

std::vector<RankedEntry> ranked_distribution(
    const Eigen::VectorXd& probabilities, const CostTable& table);

}  // namespace quso
