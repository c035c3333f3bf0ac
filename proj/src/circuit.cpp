#include "quso/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace quso {

namespace gate {

GateOp x(int t) { return {GateKind::X, {t}, {}, 0, {}, {}, {}}; }
GateOp h(int t) { return {GateKind::H, {t}, {}, 0, {}, {}, {}}; }
GateOp z(int t) { return {GateKind::Z, {t}, {}, 0, {}, {}, {}}; }
GateOp phase1(int t, double a) {
  return {GateKind::Phase1, {t}, {}, a, {}, {}, {}};
}
GateOp phase_z(int t, double a) {
  return {GateKind::PhaseZ, {t}, {}, a, {}, {}, {}};
}
GateOp rot_x(int t, double a) {
  return {GateKind::RotX, {t}, {}, a, {}, {}, {}};
}
GateOp rot_y(int t, double a) {
  return {GateKind::RotY, {t}, {}, a, {}, {}, {}};
}
GateOp swap(int a, int b) { return {GateKind::Swap, {a, b}, {}, 0, {}, {}, {}}; }
GateOp cnot(int c, int t) {
  return {GateKind::X, {t}, {{c, 1}}, 0, {}, {}, {}};
}
GateOp global_phase(double a) {
  return {GateKind::GlobalPhase, {}, {}, a, {}, {}, {}};
}
GateOp diagonal(std::vector<int> targets, std::vector<double> phases) {
  if (phases.size() != (size_t{1} << targets.size()))
    throw std::invalid_argument("diagonal phase table size mismatch");
  return {GateKind::Diagonal, std::move(targets), {}, 0, std::move(phases),
          {}, {}};
}
GateOp multi_z_rot(std::vector<int> targets, double a) {
  if (targets.empty())
    throw std::invalid_argument("multi_z_rot needs at least one target");
  return {GateKind::MultiZRot, std::move(targets), {}, a, {}, {}, {}};
}
GateOp dense(std::vector<int> targets, Eigen::MatrixXcd m, std::string tag) {
  const auto dim = Eigen::Index(1) << targets.size();
  if (m.rows() != dim || m.cols() != dim)
    throw std::invalid_argument("dense gate matrix dimension mismatch");
  GateOp g{GateKind::DenseUnitary, std::move(targets), {}, 0, {}, std::move(m),
           std::move(tag)};
  return g;
}

}  // namespace gate

GateOp adjoint(const GateOp& g) {
  GateOp a = g;
  switch (g.kind) {
    case GateKind::X:
    case GateKind::H:
    case GateKind::Z:
    case GateKind::Swap:
      break;
    case GateKind::Phase1:
    case GateKind::PhaseZ:
    case GateKind::RotX:
    case GateKind::RotY:
    case GateKind::GlobalPhase:
    case GateKind::MultiZRot:
      a.angle = -g.angle;
      break;
    case GateKind::Diagonal:
      for (auto& p : a.phases) p = -p;
      break;
    case GateKind::DenseUnitary:
      a.matrix = g.matrix.adjoint();
      break;
  }
  return a;
}

Circuit adjoint(const Circuit& c) {
  Circuit r;
  r.gates.reserve(c.gates.size());
  for (auto it = c.gates.rbegin(); it != c.gates.rend(); ++it)
    r.gates.push_back(adjoint(*it));
  return r;
}

GateOp controlled(const GateOp& g, const std::vector<Control>& controls) {
  if (controls.empty()) return g;
  GateOp c = g;
  if (g.kind == GateKind::GlobalPhase) {
    c.kind = GateKind::Phase1;
    c.targets = {controls[0].qubit};
    if (controls[0].polarity == 0) {
      // phase on the |0> branch: conjugate with X
      c.kind = GateKind::Diagonal;
      c.phases = {g.angle, 0};
      c.angle = 0;
    }
    c.controls = g.controls;
    c.controls.insert(c.controls.end(), controls.begin() + 1, controls.end());
    return c;
  }
  c.controls.insert(c.controls.end(), controls.begin(), controls.end());
  return c;
}

Circuit controlled(const Circuit& c, const std::vector<Control>& controls) {
  Circuit r;
  r.gates.reserve(c.gates.size());
  for (const auto& g : c.gates) r.gates.push_back(controlled(g, controls));
  return r;
}

Eigen::MatrixXcd gate_matrix(const GateOp& g) {
  using cd = std::complex<double>;
  const cd i1(0, 1);
  const int w = static_cast<int>(g.targets.size());
  const Eigen::Index dim = Eigen::Index(1) << w;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  switch (g.kind) {
    case GateKind::X:
      m << 0, 1, 1, 0;
      break;
    case GateKind::H:
      m << 1, 1, 1, -1;
      m /= std::sqrt(2.0);
      break;
    case GateKind::Z:
      m << 1, 0, 0, -1;
      break;
    case GateKind::Phase1:
      m << 1, 0, 0, std::exp(i1 * g.angle);
      break;
    case GateKind::PhaseZ:
      m << std::exp(i1 * g.angle), 0, 0, std::exp(-i1 * g.angle);
      break;
    case GateKind::RotX:
      m << std::cos(g.angle), i1 * std::sin(g.angle), i1 * std::sin(g.angle),
          std::cos(g.angle);
      break;
    case GateKind::RotY:
      m << std::cos(g.angle), -std::sin(g.angle), std::sin(g.angle),
          std::cos(g.angle);
      break;
    case GateKind::Swap:
      m(0, 0) = 1;
      m(1, 2) = 1;
      m(2, 1) = 1;
      m(3, 3) = 1;
      break;
    case GateKind::GlobalPhase:
      m.resize(1, 1);
      m(0, 0) = std::exp(i1 * g.angle);
      break;
    case GateKind::Diagonal:
      for (Eigen::Index v = 0; v < dim; ++v)
        m(v, v) = std::exp(i1 * g.phases[v]);
      break;
    case GateKind::MultiZRot:
      for (Eigen::Index v = 0; v < dim; ++v) {
        const int parity = __builtin_popcountll(v) & 1;
        m(v, v) = std::exp(-i1 * g.angle * (parity ? -1.0 : 1.0));
      }
      break;
    case GateKind::DenseUnitary:
      m = g.matrix;
      break;
  }
  return m;
}

CircuitStats& CircuitStats::operator+=(const CircuitStats& o) {
  gate_count += o.gate_count;
  depth += o.depth;
  decomposed_count += o.decomposed_count;
  for (const auto& [k, n] : o.by_kind) {
    bool found = false;
    for (auto& [mk, mn] : by_kind)
      if (mk == k) {
        mn += n;
        found = true;
      }
    if (!found) by_kind.push_back({k, n});
  }
  return *this;
}

int64_t decomposed_cost(const GateOp& g) {
  const int64_t c = static_cast<int64_t>(g.controls.size());
  // 1q + CNOT primitive estimate:
  //   plain 1q gate 1, singly controlled 5, c >= 2 controls 16(c-1).
  auto ctrl_1q = [](int64_t nc) -> int64_t {
    if (nc == 0) return 1;
    if (nc == 1) return 5;
    return 16 * (nc - 1);
  };
  switch (g.kind) {
    case GateKind::X:
      if (c == 1) return 1;  // CNOT is itself a primitive
      return ctrl_1q(c);
    case GateKind::GlobalPhase:
      return c == 0 ? 0 : ctrl_1q(c - 1);
    case GateKind::Swap:
      return 3 * std::max<int64_t>(ctrl_1q(c), 1);
    case GateKind::Diagonal:
      return (int64_t{1} << g.targets.size()) * std::max<int64_t>(1, ctrl_1q(c));
    case GateKind::MultiZRot:
      return 2 * (static_cast<int64_t>(g.targets.size()) - 1) + ctrl_1q(c);
    case GateKind::DenseUnitary: {
      const int w = static_cast<int>(g.targets.size());
      if (g.tag == "qft")
        return int64_t(w) * (w + 1) / 2 + 3 * (w / 2) +
               (c > 0 ? ctrl_1q(c) * w : 0);
      // generic quantum Shannon decomposition scale
      const int64_t base = int64_t{1} << (2 * w);
      return base * std::max<int64_t>(1, ctrl_1q(c));
    }
    default:
      return ctrl_1q(c);
  }
}

CircuitStats circuit_stats(const Circuit& c, int qubit_count) {
  CircuitStats s;
  s.qubit_count = qubit_count;
  std::vector<int64_t> level(qubit_count, 0);
  std::map<std::string, int64_t> kinds;
  for (const auto& g : c.gates) {
    s.gate_count++;
    s.decomposed_count += decomposed_cost(g);
    kinds[kind_name(g.kind)]++;
    int64_t lv = 0;
    auto touch = [&](int q) { lv = std::max(lv, level[q]); };
    for (int t : g.targets) touch(t);
    for (const auto& ct : g.controls) touch(ct.qubit);
    ++lv;
    for (int t : g.targets) level[t] = lv;
    for (const auto& ct : g.controls) level[ct.qubit] = lv;
    if (g.targets.empty() && g.controls.empty())
      s.depth = std::max(s.depth, lv);  // global phase: no wires
  }
  for (int64_t l : level) s.depth = std::max(s.depth, l);
  for (const auto& [k, n] : kinds) s.by_kind.push_back({k, n});
  return s;
}

const char* kind_name(GateKind k) {
  switch (k) {
    case GateKind::X: return "x";
    case GateKind::H: return "h";
    case GateKind::Z: return "z";
    case GateKind::Phase1: return "phase1";
    case GateKind::PhaseZ: return "phase_z";
    case GateKind::RotX: return "rot_x";
    case GateKind::RotY: return "rot_y";
    case GateKind::Swap: return "swap";
    case GateKind::GlobalPhase: return "global_phase";
    case GateKind::Diagonal: return "diagonal";
    case GateKind::MultiZRot: return "multi_z_rot";
    case GateKind::DenseUnitary: return "dense";
  }
  return "?";
}

}  // namespace quso
