#include "quso/block_encoding.hpp"

#include <cmath>
#include <stdexcept>

namespace quso {

LcuPlan make_lcu_plan(const ThermalNetwork& net) {
  const int m = net.edge_count();
  LcuPlan plan;
  plan.weights.resize(m + 1);
  plan.weights[0] = 1.0 / (2.0 * net.r_env);
  for (int e = 0; e < m; ++e)
    plan.weights[e + 1] = 1.0 / net.edges[e].resistance;
  plan.lcu_constant = 1.0 / std::sqrt(plan.weights.sum());
  const int slots = 1 << bits_for(m + 1);
  plan.prepared = Eigen::VectorXd::Zero(slots);
  for (int k = 0; k <= m; ++k)
    plan.prepared[k] = std::sqrt(plan.weights[k]) * plan.lcu_constant;
  return plan;
}

PermutationSpec build_permutation(int i, int j,
                                  const RegisterLayout& layout) {
  const int n = layout.reg("d").width;
  if (i == j) throw std::invalid_argument("permutation needs i != j");
  if (i < 0 || j < 0 || i >= (1 << n) || j >= (1 << n))
    throw std::invalid_argument("permutation index out of range");
  PermutationSpec spec;
  spec.i = i;
  spec.j = j;
  spec.n = n;
  // flip the 1-bits of i: |i> -> |0>, |j> -> |j xor i>
  for (int t = 0; t < n; ++t)
    if ((i >> t) & 1) spec.gates.push(gate::x(layout.qubit_for_bit("d", t)));
  const int y = i ^ j;
  // clear all but one 1-bit of j xor i, controlled on the lowest set bit
  const int t0 = __builtin_ctz(y);
  for (int t = 0; t < n; ++t) {
    if (t == t0 || !((y >> t) & 1)) continue;
    spec.gates.push(gate::cnot(layout.qubit_for_bit("d", t0),
                               layout.qubit_for_bit("d", t)));
  }
  // move the remaining 1 to the least significant position
  if (t0 != 0)
    spec.gates.push(gate::swap(layout.qubit_for_bit("d", t0),
                               layout.qubit_for_bit("d", 0)));
  return spec;
}

Circuit build_pair_block(int i, int j, const RegisterLayout& layout) {
  const int n = layout.reg("d").width;
  const auto perm = build_permutation(i, j, layout);
  const int lp = layout.qubit_for_bit("l'", 0);
  const int fq = layout.qubit_for_bit("f", 0);
  const int d_ls = layout.qubit_for_bit("d", 0);

  Circuit c;
  c.append(perm.gates);
  // one-qubit LCU of (I - X)/2: the -X branch is a CX with a conditional sign
  c.push(gate::h(lp));
  c.push(gate::cnot(lp, d_ls));
  c.push(gate::z(lp));
  c.push(gate::h(lp));
  // flag everything outside the top 2x2 block: f flips unless all data
  // qubits above the least significant read |0>
  if (n > 1) {
    c.push(gate::x(fq));
    GateOp undo = gate::x(fq);
    for (int t = 1; t < n; ++t)
      undo.controls.push_back({layout.qubit_for_bit("d", t), 0});
    c.push(undo);
  }
  c.append(adjoint(perm.gates));
  return c;
}

Circuit build_state_prep(const std::vector<int>& qubits,
                         const Eigen::VectorXd& amplitudes) {
  const int w = static_cast<int>(qubits.size());
  if (amplitudes.size() != (Eigen::Index(1) << w))
    throw std::invalid_argument("state prep amplitude count mismatch");
  Circuit c;
  if (w == 0) return c;

  // subtree masses, leaves up
  const Eigen::VectorXd sq = amplitudes.array().square();
  for (int level = 0; level < w; ++level) {
    const int prefix_count = 1 << level;
    const int span = 1 << (w - level);
    for (int b = 0; b < prefix_count; ++b) {
      double m0 = 0, m1 = 0;
      for (int s = 0; s < span / 2; ++s) {
        m0 += sq[b * span + s];
        m1 += sq[b * span + span / 2 + s];
      }
      if (m0 + m1 < 1e-300) continue;
      const double angle = std::atan2(std::sqrt(m1), std::sqrt(m0));
      if (angle == 0) continue;
      GateOp rot = gate::rot_y(qubits[level], angle);
      for (int s = 0; s < level; ++s)
        rot.controls.push_back({qubits[s], (b >> (level - 1 - s)) & 1});
      c.push(rot);
    }
  }
  bool any_negative = false;
  for (Eigen::Index v = 0; v < amplitudes.size(); ++v)
    if (amplitudes[v] < 0) any_negative = true;
  if (any_negative) {
    std::vector<double> phases(amplitudes.size(), 0.0);
    for (Eigen::Index v = 0; v < amplitudes.size(); ++v)
      if (amplitudes[v] < 0) phases[v] = M_PI;
    c.push(gate::diagonal(qubits, phases));
  }
  return c;
}

Circuit prepare_amplitudes(const LcuPlan& plan,
                           const RegisterLayout& layout) {
  const int w = layout.reg("l").width;
  if (plan.prepared.size() > (Eigen::Index(1) << w))
    throw std::invalid_argument("l register too narrow for the LCU plan");
  return build_state_prep(layout.qubits("l"), plan.prepared);
}

namespace {

std::vector<Control> l_value_controls(const RegisterLayout& layout,
                                      int value) {
  std::vector<Control> ctrls;
  const int w = layout.reg("l").width;
  for (int t = 0; t < w; ++t)
    ctrls.push_back({layout.qubit_for_bit("l", t), (value >> t) & 1});
  return ctrls;
}

Circuit build_ua_impl(const ThermalNetwork& net, const RegisterLayout& layout,
                      const Configuration* x) {
  const int m = net.edge_count();
  if (x && static_cast<int>(x->bits.size()) != m)
    throw std::invalid_argument("configuration length != edge count");
  const bool controlled_on_c = (x == nullptr);
  if (controlled_on_c && !layout.has("c"))
    throw std::invalid_argument("layout lacks the c register");
  if (layout.reg("l").width < bits_for(m + 1))
    throw std::invalid_argument("layout/network mismatch on l width");
  if (layout.reg("d").width < bits_for(net.node_count))
    throw std::invalid_argument("layout/network mismatch on d width");

  const LcuPlan plan = make_lcu_plan(net);
  const Circuit prep = prepare_amplitudes(plan, layout);
  const int fq = layout.qubit_for_bit("f", 0);

  Circuit ua;
  ua.append(prep);
  // slot 0 is the identity term: nothing to apply
  for (int e = 0; e < m; ++e) {
    const auto slot = l_value_controls(layout, e + 1);
    const Circuit block =
        build_pair_block(net.edges[e].i, net.edges[e].j, layout);
    if (controlled_on_c) {
      const int cq = layout.qubit_for_bit("c", m - 1 - e);
      auto with_edge = slot;
      with_edge.push_back({cq, 1});
      ua.append(controlled(block, with_edge));
      // inactive edge: eject the slot's amplitude from the f = 0 block so
      // it contributes zero instead of an identity term
      GateOp eject = gate::x(fq);
      eject.controls = slot;
      eject.controls.push_back({cq, 0});
      ua.push(eject);
    } else if (x->bits[e]) {
      ua.append(controlled(block, slot));
    } else {
      GateOp eject = gate::x(fq);
      eject.controls = slot;
      ua.push(eject);
    }
  }
  ua.append(adjoint(prep));
  return ua;
}

}  // namespace

Circuit build_ua(const ThermalNetwork& net, const RegisterLayout& layout) {
  return build_ua_impl(net, layout, nullptr);
}

Circuit build_ua(const ThermalNetwork& net, const RegisterLayout& layout,
                 const Configuration& x) {
  return build_ua_impl(net, layout, &x);
}

Eigen::MatrixXcd extract_encoded_block(const Circuit& circuit,
                                       const RegisterLayout& layout,
                                       const Configuration* config) {
  const int nd = layout.reg("d").width;
  const Eigen::Index dim = Eigen::Index(1) << nd;
  Eigen::MatrixXcd block(dim, dim);
  std::vector<std::string> ancillas = {"l", "f", "l'"};
  if (layout.has("q")) ancillas.push_back("q");
  for (Eigen::Index k = 0; k < dim; ++k) {
    StateVector s = StateVector::zero_state(layout);
    uint64_t idx = layout.with_register_value("d", 0, k);
    if (config) idx = layout.with_register_value("c", idx, config->index());
    s.amps[0] = 0;
    s.amps[idx] = 1;
    apply(s, circuit);
    const auto proj = project_ancilla_zero(s, ancillas);
    for (Eigen::Index r = 0; r < dim; ++r) {
      uint64_t out = proj.layout.with_register_value("d", 0, r);
      if (config)
        out = proj.layout.with_register_value("c", out, config->index());
      block(r, k) = proj.amps[out];
    }
  }
  return block;
}

Circuit specialize_configuration(const Circuit& circuit,
                                 const RegisterLayout& layout,
                                 const Configuration& x) {
  const auto& creg = layout.reg("c");
  const uint64_t value = x.index();
  Circuit out;
  for (const auto& g : circuit.gates) {
    bool keep = true;
    GateOp stripped = g;
    stripped.controls.clear();
    for (const auto& ctl : g.controls) {
      if (ctl.qubit >= creg.offset && ctl.qubit < creg.offset + creg.width) {
        const int bit = creg.offset + creg.width - 1 - ctl.qubit;
        if (static_cast<int>((value >> bit) & 1) != ctl.polarity) keep = false;
      } else {
        stripped.controls.push_back(ctl);
      }
    }
    for (int t : g.targets)
      if (t >= creg.offset && t < creg.offset + creg.width)
        throw std::invalid_argument("cannot specialize a gate targeting c");
    if (keep) out.push(stripped);
  }
  return out;
}

}  // namespace quso
