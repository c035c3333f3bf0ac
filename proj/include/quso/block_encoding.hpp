// Configuration-controlled block-encoding of the network matrix A(x).
//
// A(x)/2 is expressed as a linear combination of m+1 unitaries: the identity
// with weight 1/(2 R_env) and, per edge, the rank-one pair term U_ij/2 with
// weight 1/R_ij.  Each pair term is realized by permuting |i>,|j> onto
// |0>,|1>, applying the one-ancilla combination (I - X)/2 on the least
// significant data qubit, and flagging everything outside the 2x2 block.
#pragma once

#include <Eigen/Dense>
#include <vector>

#include "quso/circuit.hpp"
#include "quso/layout.hpp"
#include "quso/state.hpp"
#include "quso/thermal.hpp"

namespace quso {

struct LcuPlan {
  Eigen::VectorXd weights;     // 1/(2 R_env), then 1/R_ij per edge
  double lcu_constant = 0;     // (sum of weights)^(-1/2)
  Eigen::VectorXd prepared;    // sqrt(weight) * lcu_constant, zero padded

  double encoding_scale() const {  // block = scale * A(x) / 2
    return lcu_constant * lcu_constant;
  }
};

LcuPlan make_lcu_plan(const ThermalNetwork& net);

struct PermutationSpec {
  int i = 0;
  int j = 0;
  int n = 0;
  Circuit gates;
};

// Basis permutation on the d register sending |i> -> |0> and |j> -> |1>.
PermutationSpec build_permutation(int i, int j, const RegisterLayout& layout);

// Block-encoding of U_ij/2 on (l', f, d): projecting l' = f = 0 applies
// (|i> - |j>)(<i| - <j|)/2 to the d register.
Circuit build_pair_block(int i, int j, const RegisterLayout& layout);

// Exact preparation of a real, signed amplitude vector on the given qubits
// (most significant first) via a tree of branch rotations plus a sign flip.
Circuit build_state_prep(const std::vector<int>& qubits,
                         const Eigen::VectorXd& amplitudes);

// V |0>_l with amplitude lcu_constant * sqrt(weight_k) on |k>_l.
Circuit prepare_amplitudes(const LcuPlan& plan, const RegisterLayout& layout);

// Full block-encoding U_A controlled on the c register: for every basis
// configuration |x>_c the (l = f = l' = 0) block over d equals
// encoding_scale * A(x) / 2.
Circuit build_ua(const ThermalNetwork& net, const RegisterLayout& layout);

// Same encoding specialized to a fixed configuration (layout without c).
Circuit build_ua(const ThermalNetwork& net, const RegisterLayout& layout,
                 const Configuration& x);

// Applies `circuit` to basis states of d and reads back the ancilla-zero
// block.  When the layout carries a c register, `config` selects the branch.
Eigen::MatrixXcd extract_encoded_block(const Circuit& circuit,
                                       const RegisterLayout& layout,
                                       const Configuration* config = nullptr);

// Drops gates whose c-register controls conflict with x and strips the
// matching ones; the result no longer references c.
Circuit specialize_configuration(const Circuit& circuit,
                                 const RegisterLayout& layout,
                                 const Configuration& x);

}  // namespace quso
