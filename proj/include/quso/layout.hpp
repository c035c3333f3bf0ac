// Named qubit registers over a dense amplitude vector.
//
// Registers occupy consecutive qubit offsets in declaration order, and the
// amplitude index assigns qubit offset 0 to its most significant bit (the
// circuit-diagram convention: top wire first).  Within a register, the qubit
// at the largest offset therefore carries the least significant bit of the
// register value, and a register's value sits in one contiguous bit field of
// the amplitude index.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace quso {

struct ThermalNetwork;

struct Register {
  std::string name;
  int width = 0;
  int offset = 0;
};

class RegisterLayout {
 public:
  RegisterLayout() = default;
  explicit RegisterLayout(std::vector<std::pair<std::string, int>> regs);

  int total_qubits() const { return total_; }
  uint64_t dimension() const { return uint64_t{1} << total_; }
  const std::vector<Register>& registers() const { return regs_; }
  bool has(const std::string& name) const;
  const Register& reg(const std::string& name) const;

  // Global offset of the qubit carrying bit `bit` (0 = least significant)
  // of the register's value.
  int qubit_for_bit(const std::string& name, int bit) const;
  // All qubit offsets of a register, most significant bit first.
  std::vector<int> qubits(const std::string& name) const;

  // Value of a register inside a global amplitude index.
  uint64_t register_value(const std::string& name, uint64_t index) const;
  uint64_t with_register_value(const std::string& name, uint64_t index,
                               uint64_t value) const;

 private:
  std::vector<Register> regs_;
  int total_ = 0;
};

// Registers used by the full pipeline:
//   c (m), p (k), q (1), l (ceil(log2(m+1))), f (1), l' (1), d (ceil(log2 N)).
RegisterLayout full_layout(const ThermalNetwork& net, int phase_bits);

// Block-encoding / linear-solver registers for a fixed configuration
// (no c, no p):  q, l, f, l', d.
RegisterLayout solver_layout(const ThermalNetwork& net, bool with_q = true);

// Same as full_layout but without the phase register (block-encoding tests).
RegisterLayout encoding_layout(const ThermalNetwork& net);

// Reduced registers for the table-driven cost layer: c (m), p (k), d (1).
RegisterLayout shortcut_layout(int edge_count, int phase_bits);

int bits_for(int count);  // ceil(log2(count)), at least 0

}  // namespace quso
