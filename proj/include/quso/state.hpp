// Dense complex statevector with register-aware helpers.
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "quso/circuit.hpp"
#include "quso/layout.hpp"

namespace quso {

struct StateVector {
  RegisterLayout layout;
  Eigen::VectorXcd amps;

  static StateVector zero_state(const RegisterLayout& layout);
  // |0...0> with the named register set to a basis value.
  static StateVector basis_state(const RegisterLayout& layout,
                                 const std::string& reg, uint64_t value);

  double norm() const { return amps.norm(); }
};

void apply(StateVector& state, const GateOp& gate);
void apply(StateVector& state, const Circuit& circuit);

// Amplitude block where every listed register reads |0>, with those registers
// removed from the layout.  The block is not renormalized; `weight` is its
// squared norm (the projection probability).
struct ProjectedState {
  RegisterLayout layout;
  Eigen::VectorXcd amps;
  double weight = 0;
};

ProjectedState project_ancilla_zero(const StateVector& state,
                                    const std::vector<std::string>& registers);

// Marginal probability distribution of one register.
Eigen::VectorXd register_distribution(const StateVector& state,
                                      const std::string& reg);

// Reduced density matrix of one register (traces out the rest).
Eigen::MatrixXcd reduced_density(const StateVector& state,
                                 const std::string& reg);

}  // namespace quso
