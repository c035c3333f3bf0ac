#include <cmath>
#include <random>

#include "doctest.h"
#include "quso/state.hpp"
#include "support/oracle.hpp"

using namespace quso;
namespace qt = quso::testing;

namespace {

RegisterLayout plain(int n) { return RegisterLayout({{"r", n}}); }

}  // namespace

TEST_CASE("layout bit conventions") {
  RegisterLayout layout({{"c", 2}, {"d", 3}});
  CHECK(layout.total_qubits() == 5);
  CHECK(layout.reg("d").offset == 2);
  // least significant bit of d sits at the largest offset
  CHECK(layout.qubit_for_bit("d", 0) == 4);
  CHECK(layout.qubit_for_bit("d", 2) == 2);
  const uint64_t idx = layout.with_register_value("d", 0, 5);
  CHECK(layout.register_value("d", idx) == 5);
  CHECK(layout.register_value("c", idx) == 0);
  const uint64_t both = layout.with_register_value("c", idx, 2);
  CHECK(both == (uint64_t{2} << 3 | 5));
}

TEST_CASE("hadamard on |0>") {
  auto s = StateVector::zero_state(plain(1));
  apply(s, gate::h(0));
  CHECK(std::abs(s.amps[0] - 1.0 / std::sqrt(2.0)) < 1e-15);
  CHECK(std::abs(s.amps[1] - 1.0 / std::sqrt(2.0)) < 1e-15);
}

TEST_CASE("unsatisfied control acts as identity") {
  auto s = StateVector::zero_state(plain(2));
  GateOp g = gate::x(1);
  g.controls = {{0, 1}};
  apply(s, g);  // control qubit reads |0>
  CHECK(std::abs(s.amps[0] - 1.0) < 1e-15);

  GateOp g0 = gate::x(1);
  g0.controls = {{0, 0}};
  auto s2 = StateVector::basis_state(plain(2), "r", 2);  // control in |1>
  apply(s2, g0);
  CHECK(std::abs(s2.amps[2] - 1.0) < 1e-15);  // polarity-0 control on |1>
}

TEST_CASE("random circuits match the dense composition oracle") {
  for (uint64_t seed = 0; seed < 100; ++seed) {
    const int n = 3 + static_cast<int>(seed % 2);
    const auto layout = plain(n);
    const auto circuit = qt::random_circuit(n, 50, seed);
    auto s = StateVector::zero_state(layout);
    // random initial state
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
    std::normal_distribution<double> g;
    for (Eigen::Index i = 0; i < s.amps.size(); ++i)
      s.amps[i] = {g(rng), g(rng)};
    s.amps /= s.amps.norm();
    const Eigen::VectorXcd before = s.amps;
    apply(s, circuit);
    const Eigen::MatrixXcd u = qt::circuit_to_full(circuit, layout);
    CHECK((s.amps - u * before).lpNorm<Eigen::Infinity>() < 1e-12);
  }
}

TEST_CASE("norm is preserved across long circuits") {
  const auto layout = plain(4);
  auto s = StateVector::zero_state(layout);
  const auto circuit = qt::random_circuit(4, 20000, 7);
  apply(s, circuit);
  CHECK(std::abs(s.norm() - 1.0) < 1e-10);
}

TEST_CASE("circuit followed by its adjoint is the identity") {
  const auto layout = plain(4);
  const auto circuit = qt::random_circuit(4, 120, 11);
  auto s = StateVector::basis_state(layout, "r", 9);
  apply(s, circuit);
  apply(s, adjoint(circuit));
  CHECK(std::abs(s.amps[9] - 1.0) < 1e-11);
}

TEST_CASE("controlled subcircuit fires only on the matching branch") {
  RegisterLayout layout({{"c", 1}, {"r", 2}});
  const auto sub = qt::random_circuit(2, 30, 3);
  Circuit shifted;  // retarget the subcircuit onto the r register
  for (auto g : sub.gates) {
    for (auto& t : g.targets) t += 1;
    for (auto& c : g.controls) c.qubit += 1;
    shifted.push(g);
  }
  const auto wrapped = controlled(shifted, {{0, 1}});
  auto s0 = StateVector::zero_state(layout);
  apply(s0, wrapped);
  CHECK(std::abs(s0.amps[0] - 1.0) < 1e-12);  // c=0: untouched

  auto s1 = StateVector::basis_state(layout, "c", 1);
  apply(s1, wrapped);
  auto direct = StateVector::zero_state(RegisterLayout({{"r", 2}}));
  apply(direct, sub);
  for (int v = 0; v < 4; ++v) {
    const uint64_t idx = layout.with_register_value(
        "r", layout.with_register_value("c", 0, 1), v);
    CHECK(std::abs(s1.amps[idx] - direct.amps[v]) < 1e-12);
  }
}

TEST_CASE("global phase becomes conditional under control") {
  RegisterLayout layout({{"r", 2}});
  Circuit minus;
  minus.push(gate::global_phase(M_PI));
  const auto cminus = controlled(minus, {{0, 1}});
  auto s = StateVector::zero_state(layout);
  apply(s, gate::h(0));
  apply(s, cminus);
  CHECK(std::abs(s.amps[0] - 1.0 / std::sqrt(2.0)) < 1e-14);
  CHECK(std::abs(s.amps[2] + 1.0 / std::sqrt(2.0)) < 1e-14);
}

TEST_CASE("projection onto zeroed ancillas") {
  RegisterLayout layout({{"l", 1}, {"d", 2}});
  SUBCASE("product state passes through") {
    auto s = StateVector::zero_state(layout);
    apply(s, gate::h(1));
    apply(s, gate::h(2));
    const auto p = project_ancilla_zero(s, {"l"});
    CHECK(p.layout.total_qubits() == 2);
    CHECK(p.weight == doctest::Approx(1.0));
    for (int v = 0; v < 4; ++v)
      CHECK(std::abs(p.amps[v] - 0.5) < 1e-14);
  }
  SUBCASE("orthogonal state projects to zero") {
    auto s = StateVector::basis_state(layout, "l", 1);
    const auto p = project_ancilla_zero(s, {"l"});
    CHECK(p.amps.norm() == 0.0);
    CHECK(p.weight == 0.0);
  }
}

TEST_CASE("register distributions") {
  RegisterLayout layout({{"c", 2}, {"d", 1}});
  SUBCASE("uniform after hadamards") {
    auto s = StateVector::zero_state(layout);
    apply(s, gate::h(0));
    apply(s, gate::h(1));
    const auto probs = register_distribution(s, "c");
    for (int v = 0; v < 4; ++v) CHECK(probs[v] == doctest::Approx(0.25));
    CHECK(probs.sum() == doctest::Approx(1.0).epsilon(1e-10));
  }
  SUBCASE("basis state is an indicator") {
    auto s = StateVector::basis_state(layout, "c", 2);
    const auto probs = register_distribution(s, "c");
    CHECK(probs[2] == doctest::Approx(1.0));
    CHECK(probs.sum() == doctest::Approx(1.0));
  }
}

TEST_CASE("stats are additive over concatenation") {
  const auto a = qt::random_circuit(3, 40, 21);
  const auto b = qt::random_circuit(3, 25, 22);
  Circuit ab = a;
  ab.append(b);
  const auto sa = circuit_stats(a, 3);
  const auto sb = circuit_stats(b, 3);
  const auto sab = circuit_stats(ab, 3);
  CHECK(sab.gate_count == sa.gate_count + sb.gate_count);
  CHECK(sab.decomposed_count == sa.decomposed_count + sb.decomposed_count);
  CHECK(sab.depth <= sa.depth + sb.depth);
  CHECK(sab.depth >= std::max(sa.depth, sb.depth));
}

TEST_CASE("gate validation") {
  auto s = StateVector::zero_state(plain(2));
  GateOp g = gate::x(0);
  g.controls = {{0, 1}};
  CHECK_THROWS_AS(apply(s, g), std::invalid_argument);
  CHECK_THROWS_AS(apply(s, gate::x(5)), std::invalid_argument);
}
