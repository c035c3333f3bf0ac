#include "quso/state.hpp"

#include <cmath>
#include <stdexcept>

namespace quso {

namespace {

// Bit position of qubit offset q inside an amplitude index.
inline int bitpos(const RegisterLayout& layout, int q) {
  return layout.total_qubits() - 1 - q;
}

struct ControlMask {
  uint64_t mask = 0;
  uint64_t value = 0;
};

ControlMask control_mask(const RegisterLayout& layout,
                         const std::vector<Control>& controls) {
  ControlMask cm;
  for (const auto& c : controls) {
    const uint64_t bit = uint64_t{1} << bitpos(layout, c.qubit);
    cm.mask |= bit;
    if (c.polarity) cm.value |= bit;
  }
  return cm;
}

void check_gate(const StateVector& s, const GateOp& g) {
  const int n = s.layout.total_qubits();
  for (int t : g.targets) {
    if (t < 0 || t >= n) throw std::invalid_argument("target qubit out of range");
    for (const auto& c : g.controls)
      if (c.qubit == t)
        throw std::invalid_argument("control overlaps target qubit");
  }
  for (const auto& c : g.controls)
    if (c.qubit < 0 || c.qubit >= n)
      throw std::invalid_argument("control qubit out of range");
}

}  // namespace

StateVector StateVector::zero_state(const RegisterLayout& layout) {
  StateVector s;
  s.layout = layout;
  s.amps = Eigen::VectorXcd::Zero(layout.dimension());
  s.amps[0] = 1.0;
  return s;
}

StateVector StateVector::basis_state(const RegisterLayout& layout,
                                     const std::string& reg, uint64_t value) {
  StateVector s;
  s.layout = layout;
  s.amps = Eigen::VectorXcd::Zero(layout.dimension());
  s.amps[layout.with_register_value(reg, 0, value)] = 1.0;
  return s;
}

void apply(StateVector& state, const GateOp& g) {
  using cd = std::complex<double>;
  check_gate(state, g);
  const auto cm = control_mask(state.layout, g.controls);
  const uint64_t dim = state.layout.dimension();
  cd* a = state.amps.data();

  switch (g.kind) {
    case GateKind::GlobalPhase: {
      const cd ph = std::exp(cd(0, g.angle));
      if (cm.mask == 0) {
        state.amps *= ph;
      } else {
        for (uint64_t i = 0; i < dim; ++i)
          if ((i & cm.mask) == cm.value) a[i] *= ph;
      }
      return;
    }
    case GateKind::Diagonal: {
      const int w = static_cast<int>(g.targets.size());
      std::vector<int> shift(w);
      for (int t = 0; t < w; ++t)
        shift[t] = bitpos(state.layout, g.targets[t]);
      std::vector<cd> ph(g.phases.size());
      for (size_t v = 0; v < g.phases.size(); ++v)
        ph[v] = std::exp(cd(0, g.phases[v]));
      for (uint64_t i = 0; i < dim; ++i) {
        if ((i & cm.mask) != cm.value) continue;
        uint64_t v = 0;
        for (int t = 0; t < w; ++t) v = (v << 1) | ((i >> shift[t]) & 1);
        a[i] *= ph[v];
      }
      return;
    }
    case GateKind::MultiZRot: {
      uint64_t zmask = 0;
      for (int t : g.targets) zmask |= uint64_t{1} << bitpos(state.layout, t);
      const cd ph_even = std::exp(cd(0, -g.angle));
      const cd ph_odd = std::exp(cd(0, g.angle));
      for (uint64_t i = 0; i < dim; ++i) {
        if ((i & cm.mask) != cm.value) continue;
        a[i] *= (__builtin_popcountll(i & zmask) & 1) ? ph_odd : ph_even;
      }
      return;
    }
    case GateKind::Swap: {
      const uint64_t b0 = uint64_t{1} << bitpos(state.layout, g.targets[0]);
      const uint64_t b1 = uint64_t{1} << bitpos(state.layout, g.targets[1]);
      for (uint64_t i = 0; i < dim; ++i) {
        if ((i & cm.mask) != cm.value) continue;
        if ((i & b0) && !(i & b1)) std::swap(a[i], a[(i ^ b0) ^ b1]);
      }
      return;
    }
    case GateKind::DenseUnitary: {
      const int w = static_cast<int>(g.targets.size());
      const uint64_t sub = uint64_t{1} << w;
      std::vector<uint64_t> tbit(w);
      uint64_t tmask = 0;
      for (int t = 0; t < w; ++t) {
        tbit[t] = uint64_t{1} << bitpos(state.layout, g.targets[t]);
        tmask |= tbit[t];
      }
      Eigen::VectorXcd in(sub), out(sub);
      for (uint64_t i = 0; i < dim; ++i) {
        if ((i & tmask) != 0) continue;
        if ((i & cm.mask) != cm.value) continue;
        for (uint64_t v = 0; v < sub; ++v) {
          uint64_t idx = i;
          for (int t = 0; t < w; ++t)
            if ((v >> (w - 1 - t)) & 1) idx |= tbit[t];
          in[v] = a[idx];
        }
        out.noalias() = g.matrix * in;
        for (uint64_t v = 0; v < sub; ++v) {
          uint64_t idx = i;
          for (int t = 0; t < w; ++t)
            if ((v >> (w - 1 - t)) & 1) idx |= tbit[t];
          a[idx] = out[v];
        }
      }
      return;
    }
    default:
      break;
  }

  // single-qubit kinds
  const Eigen::Matrix2cd m = gate_matrix(g);
  const uint64_t tb = uint64_t{1} << bitpos(state.layout, g.targets[0]);
  const cd m00 = m(0, 0), m01 = m(0, 1), m10 = m(1, 0), m11 = m(1, 1);
  const bool diag = (m01 == cd(0) && m10 == cd(0));
  for (uint64_t i = 0; i < dim; ++i) {
    if (i & tb) continue;
    if ((i & cm.mask) != cm.value) {
      // the |1> half may still satisfy the controls when the target bit
      // is part of no control; controls never overlap targets, so if the
      // |0> half fails, the |1> half fails too.
      continue;
    }
    const uint64_t j = i | tb;
    const cd a0 = a[i], a1 = a[j];
    if (diag) {
      a[i] = m00 * a0;
      a[j] = m11 * a1;
    } else {
      a[i] = m00 * a0 + m01 * a1;
      a[j] = m10 * a0 + m11 * a1;
    }
  }
}

void apply(StateVector& state, const Circuit& circuit) {
  for (const auto& g : circuit.gates) apply(state, g);
}

ProjectedState project_ancilla_zero(
    const StateVector& state, const std::vector<std::string>& registers) {
  const auto& layout = state.layout;
  uint64_t zmask = 0;
  std::vector<std::pair<std::string, int>> kept;
  for (const auto& r : layout.registers()) {
    bool drop = false;
    for (const auto& name : registers)
      if (r.name == name) drop = true;
    if (drop) {
      for (int q = r.offset; q < r.offset + r.width; ++q)
        zmask |= uint64_t{1} << (layout.total_qubits() - 1 - q);
    } else if (r.width > 0) {
      kept.push_back({r.name, r.width});
    }
  }
  ProjectedState p;
  p.layout = RegisterLayout(kept);
  p.amps = Eigen::VectorXcd::Zero(p.layout.dimension());
  const uint64_t dim = layout.dimension();
  for (uint64_t i = 0; i < dim; ++i) {
    if (i & zmask) continue;
    // compact the surviving bits in order
    uint64_t out = 0;
    for (int q = 0; q < layout.total_qubits(); ++q) {
      const uint64_t bit = uint64_t{1} << (layout.total_qubits() - 1 - q);
      if (bit & zmask) continue;
      out = (out << 1) | ((i & bit) ? 1 : 0);
    }
    p.amps[out] = state.amps[i];
  }
  p.weight = p.amps.squaredNorm();
  return p;
}

Eigen::VectorXd register_distribution(const StateVector& state,
                                      const std::string& reg) {
  const auto& layout = state.layout;
  const int w = layout.reg(reg).width;
  Eigen::VectorXd probs = Eigen::VectorXd::Zero(uint64_t{1} << w);
  for (uint64_t i = 0; i < layout.dimension(); ++i)
    probs[layout.register_value(reg, i)] += std::norm(state.amps[i]);
  return probs;
}

Eigen::MatrixXcd reduced_density(const StateVector& state,
                                 const std::string& reg) {
  const auto& layout = state.layout;
  const int w = layout.reg(reg).width;
  const uint64_t sub = uint64_t{1} << w;
  const uint64_t rest = layout.dimension() >> w;
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(sub, sub);
  // gather amplitudes into a (register value) x (remaining bits) table
  Eigen::MatrixXcd table = Eigen::MatrixXcd::Zero(sub, rest);
  const auto& r = layout.reg(reg);
  for (uint64_t i = 0; i < layout.dimension(); ++i) {
    const uint64_t v = layout.register_value(reg, i);
    uint64_t o = 0;
    for (int q = 0; q < layout.total_qubits(); ++q) {
      if (q >= r.offset && q < r.offset + r.width) continue;
      const uint64_t bit = uint64_t{1} << (layout.total_qubits() - 1 - q);
      o = (o << 1) | ((i & bit) ? 1 : 0);
    }
    table(v, o) = state.amps[i];
  }
  rho.noalias() = table * table.adjoint();
  return rho;
}

}  // namespace quso
