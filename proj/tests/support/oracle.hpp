// Test-only oracles, kept independent of the engine's strided sweeps:
// full-matrix circuit composition, a hand-rolled linear solver, and shared
// network fixtures.
#pragma once

#include <Eigen/Dense>
#include <random>

#include "quso/circuit.hpp"
#include "quso/layout.hpp"
#include "quso/thermal.hpp"

namespace quso::testing {

inline bool controls_satisfied(const RegisterLayout& layout,
                               const std::vector<Control>& controls,
                               uint64_t index) {
  for (const auto& c : controls) {
    const int pos = layout.total_qubits() - 1 - c.qubit;
    if (static_cast<int>((index >> pos) & 1) != c.polarity) return false;
  }
  return true;
}

// Full 2^n x 2^n matrix of a single gate, built column by column.
inline Eigen::MatrixXcd gate_to_full(const GateOp& g,
                                     const RegisterLayout& layout) {
  const int n = layout.total_qubits();
  const Eigen::Index dim = Eigen::Index(1) << n;
  const Eigen::MatrixXcd payload = gate_matrix(g);
  const int w = static_cast<int>(g.targets.size());
  Eigen::MatrixXcd full = Eigen::MatrixXcd::Zero(dim, dim);
  for (Eigen::Index col = 0; col < dim; ++col) {
    if (!controls_satisfied(layout, g.controls, col)) {
      full(col, col) = 1.0;
      continue;
    }
    if (w == 0) {  // global phase
      full(col, col) = payload(0, 0);
      continue;
    }
    uint64_t tval = 0;
    for (int t = 0; t < w; ++t) {
      const int pos = n - 1 - g.targets[t];
      tval = (tval << 1) | ((col >> pos) & 1);
    }
    for (Eigen::Index out = 0; out < payload.rows(); ++out) {
      if (payload(out, tval) == std::complex<double>(0)) continue;
      uint64_t row = col;
      for (int t = 0; t < w; ++t) {
        const int pos = n - 1 - g.targets[t];
        const uint64_t bit = uint64_t{1} << pos;
        if ((out >> (w - 1 - t)) & 1)
          row |= bit;
        else
          row &= ~bit;
      }
      full(row, col) = payload(out, tval);
    }
  }
  return full;
}

inline Eigen::MatrixXcd circuit_to_full(const Circuit& c,
                                        const RegisterLayout& layout) {
  const Eigen::Index dim = layout.dimension();
  Eigen::MatrixXcd total = Eigen::MatrixXcd::Identity(dim, dim);
  for (const auto& g : c.gates) total = gate_to_full(g, layout) * total;
  return total;
}

// Gaussian elimination with partial pivoting (independent of Eigen solves).
inline Eigen::VectorXd gaussian_solve(Eigen::MatrixXd a, Eigen::VectorXd b) {
  const int n = static_cast<int>(a.rows());
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(a(r, col)) > std::abs(a(pivot, col))) pivot = r;
    a.row(col).swap(a.row(pivot));
    std::swap(b[col], b[pivot]);
    for (int r = col + 1; r < n; ++r) {
      const double f = a(r, col) / a(col, col);
      a.row(r) -= f * a.row(col);
      b[r] -= f * b[col];
    }
  }
  Eigen::VectorXd x(n);
  for (int r = n - 1; r >= 0; --r) {
    double s = b[r];
    for (int c = r + 1; c < n; ++c) s -= a(r, c) * x[c];
    x[r] = s / a(r, r);
  }
  return x;
}

// The four-node benchmark network.
inline ThermalNetwork four_node_network() {
  ThermalNetwork net;
  net.node_count = 4;
  net.edges = {{0, 1, 0.005}, {0, 2, 0.006}, {0, 3, 0.006},
               {1, 2, 0.007}, {1, 3, 0.007}, {2, 3, 0.008}};
  net.r_env = 0.010;
  net.t_env = 293.0;
  net.heat_rates.resize(4);
  net.heat_rates << 2000.0, 4000.0, -200.0, -2000.0;
  return net;
}

// Small three-node instance used by the end-to-end cost-layer comparison.
inline ThermalNetwork three_node_network() {
  ThermalNetwork net;
  net.node_count = 3;
  net.edges = {{0, 1, 0.006}, {0, 2, 0.007}};
  net.r_env = 0.010;
  net.t_env = 293.0;
  net.heat_rates.resize(3);
  net.heat_rates << 2000.0, 1000.0, -1500.0;
  return net;
}

// Deterministic random circuits over the simple gate kinds.
inline Circuit random_circuit(int qubits, int gates, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> kind(0, 8);
  std::uniform_int_distribution<int> qubit(0, qubits - 1);
  std::uniform_real_distribution<double> angle(-3.0, 3.0);
  Circuit c;
  while (static_cast<int>(c.gates.size()) < gates) {
    const int q = qubit(rng);
    GateOp g;
    switch (kind(rng)) {
      case 0: g = gate::x(q); break;
      case 1: g = gate::h(q); break;
      case 2: g = gate::z(q); break;
      case 3: g = gate::phase1(q, angle(rng)); break;
      case 4: g = gate::phase_z(q, angle(rng)); break;
      case 5: g = gate::rot_x(q, angle(rng)); break;
      case 6: g = gate::rot_y(q, angle(rng)); break;
      case 7: {
        const int r = qubit(rng);
        if (r == q) continue;
        g = gate::swap(q, r);
        break;
      }
      default: {
        const int r = qubit(rng);
        if (r == q) continue;
        g = gate::cnot(r, q);
        break;
      }
    }
    // sprinkle extra controls on roughly a third of the gates
    if (qubits > 2 && rng() % 3 == 0) {
      const int cq = qubit(rng);
      bool clash = false;
      for (int t : g.targets) clash = clash || t == cq;
      for (const auto& ct : g.controls) clash = clash || ct.qubit == cq;
      if (!clash) g.controls.push_back({cq, static_cast<int>(rng() % 2)});
    }
    c.push(g);
  }
  return c;
}

}  // namespace quso::testing
