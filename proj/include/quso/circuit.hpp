// Gate-level circuit representation.
//
// A GateOp acts on explicit target qubits under an optional conjunction of
// polarity controls.  Multi-qubit payloads (Diagonal, DenseUnitary) read
// their value with targets[0] as the most significant bit, consistent with
// RegisterLayout::qubits().
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace quso {

enum class GateKind {
  X,
  H,
  Z,
  Phase1,      // diag(1, e^{i a})
  PhaseZ,      // diag(e^{i a}, e^{-i a})
  RotX,        // exp(i a X)
  RotY,        // exp(-i a Y) = [[cos, -sin], [sin, cos]]
  Swap,
  GlobalPhase, // e^{i a}
  Diagonal,    // diag(e^{i phases[v]}) over the targets' value v
  MultiZRot,   // exp(-i a Z⊗...⊗Z) on the targets
  DenseUnitary
};

struct Control {
  int qubit = 0;
  int polarity = 1;  // gate fires when the qubit reads this value
};

struct GateOp {
  GateKind kind;
  std::vector<int> targets;
  std::vector<Control> controls;
  double angle = 0;
  std::vector<double> phases;  // Diagonal only, length 2^targets
  Eigen::MatrixXcd matrix;     // DenseUnitary only
  std::string tag;             // optional annotation (e.g. "qft")
};

struct Circuit {
  std::vector<GateOp> gates;

  void push(GateOp g) { gates.push_back(std::move(g)); }
  void append(const Circuit& other) {
    gates.insert(gates.end(), other.gates.begin(), other.gates.end());
  }
  size_t size() const { return gates.size(); }
};

namespace gate {
GateOp x(int target);
GateOp h(int target);
GateOp z(int target);
GateOp phase1(int target, double angle);
GateOp phase_z(int target, double angle);
GateOp rot_x(int target, double angle);
GateOp rot_y(int target, double angle);
GateOp swap(int a, int b);
GateOp cnot(int control, int target);
GateOp global_phase(double angle);
GateOp diagonal(std::vector<int> targets, std::vector<double> phases);
GateOp multi_z_rot(std::vector<int> targets, double angle);
GateOp dense(std::vector<int> targets, Eigen::MatrixXcd matrix,
             std::string tag = "");
}  // namespace gate

GateOp adjoint(const GateOp& g);
Circuit adjoint(const Circuit& c);

// Adds the given controls to every gate; a GlobalPhase becomes a Phase1 on
// the first control so the phase stays conditional.
GateOp controlled(const GateOp& g, const std::vector<Control>& controls);
Circuit controlled(const Circuit& c, const std::vector<Control>& controls);

// 2^w x 2^w matrix of the gate payload on its own targets (no controls).
Eigen::MatrixXcd gate_matrix(const GateOp& g);

struct CircuitStats {
  int qubit_count = 0;
  int64_t gate_count = 0;
  int64_t depth = 0;
  int64_t decomposed_count = 0;  // estimate in 1q + CNOT primitives
  std::vector<std::pair<std::string, int64_t>> by_kind;

  CircuitStats& operator+=(const CircuitStats& o);
};

// Decomposition estimate for one gate; the cost model is documented in the
// README (resource reports section).
int64_t decomposed_cost(const GateOp& g);

CircuitStats circuit_stats(const Circuit& c, int qubit_count);

const char* kind_name(GateKind k);

}  // namespace quso
