// Classical steady-state model of a resistive cooling network.
//
// A network of N nodes is coupled through edge resistances R_ij (active only
// when the corresponding configuration bit is set) and to the environment
// through R_env.  Heat rates Q_i drive the system; the steady state solves
// A(x) * T = Q for the temperatures T relative to the environment.
#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

namespace quso {

struct Edge {
  int i = 0;
  int j = 0;
  double resistance = 0;  // K/W
};

struct ThermalNetwork {
  int node_count = 0;
  std::vector<Edge> edges;      // sorted lexicographically by (i, j)
  double r_env = 0;             // K/W
  double t_env = 0;             // K
  Eigen::VectorXd heat_rates;   // W, length node_count

  int edge_count() const { return static_cast<int>(edges.size()); }
  // Largest node degree of the full edge set (all connections present).
  int max_degree() const;
  double min_edge_resistance() const;
};

// Throws std::invalid_argument when an invariant is broken (duplicate edges,
// non-positive resistance, bad indices, ...).
void validate(const ThermalNetwork& net);

// Edge-activation bits in edge-list order.  The configuration index reads the
// bit string as a binary number with the first edge as the most significant
// bit, so "100000" (only edge 0 active) has index 32 for m = 6.
struct Configuration {
  std::vector<uint8_t> bits;

  static Configuration from_index(uint64_t index, int edge_count);
  uint64_t index() const;
  std::string bitstring() const;
};

struct SolveResult {
  Eigen::VectorXd temperatures;  // T relative to environment, K
  double residual = 0;           // ||A*T - Q||_inf / ||Q||_inf
  Eigen::VectorXd absolute(double t_env) const {
    return temperatures.array() + t_env;
  }
};

struct SpectralStats {
  double sigma_min = 0;
  double sigma_max = 0;
  double kappa_exact = 0;
  double kappa_bound = 0;
};

// Per-configuration costs c(x) = scale * T_target(x) together with the
// normalized variant c~(x) = c(x) / max_x c(x).
struct CostTable {
  int edge_count = 0;
  int target_node = 0;
  double scale = 1;
  Eigen::VectorXd costs;       // 2^m entries, indexed by configuration
  Eigen::VectorXd normalized;  // max entry is exactly 1

  double min_cost() const { return costs.minCoeff(); }
  double max_cost() const { return costs.maxCoeff(); }
  uint64_t argmin() const;
};

Eigen::MatrixXd assemble_matrix(const ThermalNetwork& net,
                                const Configuration& x);

// Dense Cholesky solve; A(x) is symmetric positive definite for every x.
SolveResult solve_direct(const ThermalNetwork& net, const Configuration& x);

SpectralStats spectral_stats(const ThermalNetwork& net,
                             const Configuration& x);

// Exhaustive solve over all 2^m configurations.  Guarded at m <= 24.
CostTable enumerate_costs(const ThermalNetwork& net, int target_node,
                          double scale);

// Deterministic ring-plus-chords family with bounded node degree, used for
// scaling studies (resistances cycle through a fixed table).
ThermalNetwork synthetic_network(int node_count);

// Parses the network JSON document:
//   {"nodes": N, "r_env_mK_per_W": .., "t_env_K": ..,
//    "edges": [{"i":..,"j":..,"r_mK_per_W":..}], "q_kW": [..]}
// Resistances are converted from mK/W to K/W and heat rates from kW to W.
ThermalNetwork parse_network(const std::string& json_text);
ThermalNetwork load_network(const std::string& path);

}  // namespace quso
