// Amplitude estimation, phase application, and the composed cost layer.
//
// QAE turns the good-state amplitude a = sin(pi theta) of L|0> into a k-bit
// phase register via phase estimation with the Grover operator
// G = -L S_0 L^dag S_alpha.  QPA imprints e^{-i gamma sin(pi theta)} through
// an exact Walsh (multi-Z) decomposition of the grid function, and the cost
// layer QAE^dag QPA QAE leaves e^{-i gamma c(x)} on each configuration.
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "quso/circuit.hpp"
#include "quso/layout.hpp"
#include "quso/qsvt.hpp"
#include "quso/thermal.hpp"

namespace quso {

struct PhaseEncoding {
  int k = 0;
  double delta() const { return std::pow(2.0, -k); }
  // nearest k-bit grid index of a phase in [0, 1)
  uint64_t grid_index(double theta) const;
};

// theta = arcsin(c)/pi for a cost in [0, 1]; throws outside that range.
double theta_from_cost(double cost);
double cost_from_theta(double theta);

// QPE amplitudes alpha_+/-(j) = 2^-k sum_l exp(-2 pi i l (j/2^k -/+ theta)).
struct QpeAmplitudes {
  Eigen::VectorXcd plus;
  Eigen::VectorXcd minus;
};
QpeAmplitudes qpe_amplitudes(double theta, int k);

struct WalshCoefficients {
  int k = 0;
  Eigen::VectorXd a;  // indexed by subset mask over the value bits
  double reconstruct(uint64_t j) const;
};

// Coefficients of f(theta) = sin(pi theta) on the k-bit grid under the
// character chi_S(j) = (-1)^{popcount(S & j)}.  Guarded at k <= 12.
WalshCoefficients walsh_coefficients(int k);
WalshCoefficients walsh_from_values(const Eigen::VectorXd& values);

// Diagonal phase e^{-i gamma sin(pi j / 2^k)} on the p register, built as a
// product of multi-Z rotations from the Walsh coefficients.
Circuit build_qpa(double gamma, int k, const RegisterLayout& layout);

// Grover operator for the solver circuit; reflections act on every register
// except c and p, the good state being |0...0>|alpha>_d.
Circuit build_grover(const Circuit& solver, int alpha,
                     const RegisterLayout& layout);

// Phase estimation of `grover` into the p register (Hadamards, controlled
// powers by repetition, inverse QFT).
Circuit build_qpe(const Circuit& grover, const RegisterLayout& layout);

// QFT on explicit qubits (most significant first).
Circuit build_qft(const std::vector<int>& qubits);

// L followed by phase estimation of its Grover operator.
Circuit build_qae(const Circuit& solver, int alpha,
                  const RegisterLayout& layout);

// Direct preparation of the ideal QAE output for one cost value on the
// (p, dummy) registers: the two Grover eigenbranches weighted by the QPE
// amplitudes.
Circuit build_vpsi(double theta, const RegisterLayout& layout);

enum class CostLayerMode { kFull, kShortcut };

// Shortcut cost layer on a (c, p, d) layout: per-configuration controlled
// V_psi, QPA(gamma), and the uncomputation.  `costs` must lie in [0, 1].
Circuit build_cost_layer_shortcut(double gamma, const Eigen::VectorXd& costs,
                                  const RegisterLayout& layout);

// Full cost layer QAE^dag QPA QAE on the complete register set.
Circuit build_cost_layer_full(double gamma, const ThermalNetwork& net,
                              int alpha, const InversionPolynomial& poly,
                              const PhaseSequence& phases,
                              const RegisterLayout& layout);

}  // namespace quso
