#include "quso/amplitude.hpp"

#include <cmath>
#include <stdexcept>

namespace quso {

using cd = std::complex<double>;

uint64_t PhaseEncoding::grid_index(double theta) const {
  const uint64_t n = uint64_t{1} << k;
  return static_cast<uint64_t>(std::llround(theta * n)) % n;
}

double theta_from_cost(double cost) {
  if (cost < 0 || cost > 1)
    throw std::domain_error("cost must lie in [0, 1] for phase encoding");
  return std::asin(cost) / M_PI;
}

double cost_from_theta(double theta) { return std::sin(M_PI * theta); }

QpeAmplitudes qpe_amplitudes(double theta, int k) {
  if (theta < 0 || theta >= 1)
    throw std::domain_error("theta must lie in [0, 1)");
  const int n = 1 << k;
  QpeAmplitudes amps;
  amps.plus.resize(n);
  amps.minus.resize(n);
  for (int j = 0; j < n; ++j) {
    for (int sign = 0; sign < 2; ++sign) {
      const double det = static_cast<double>(j) / n - (sign ? -theta : theta);
      cd value;
      if (std::abs(std::remainder(det, 1.0)) < 1e-15) {
        value = 1.0;
      } else {
        // geometric series: ratio exp(-2 pi i det)
        const cd ratio = std::exp(cd(0, -2.0 * M_PI * det));
        const cd top = 1.0 - std::exp(cd(0, -2.0 * M_PI * det * n));
        value = top / (1.0 - ratio) / static_cast<double>(n);
      }
      (sign ? amps.minus : amps.plus)[j] = value;
    }
  }
  return amps;
}

double WalshCoefficients::reconstruct(uint64_t j) const {
  double sum = 0;
  for (uint64_t s = 0; s < static_cast<uint64_t>(a.size()); ++s)
    sum += a[s] * ((__builtin_popcountll(s & j) & 1) ? -1.0 : 1.0);
  return sum;
}

WalshCoefficients walsh_from_values(const Eigen::VectorXd& values) {
  const auto n = values.size();
  if (n == 0 || (n & (n - 1)))
    throw std::invalid_argument("walsh transform needs a power-of-two grid");
  WalshCoefficients w;
  w.k = bits_for(static_cast<int>(n));
  w.a = values;
  // in-place fast Walsh-Hadamard butterfly
  for (Eigen::Index h = 1; h < n; h <<= 1) {
    for (Eigen::Index base = 0; base < n; base += h << 1) {
      for (Eigen::Index i = base; i < base + h; ++i) {
        const double u = w.a[i];
        const double v = w.a[i + h];
        w.a[i] = u + v;
        w.a[i + h] = u - v;
      }
    }
  }
  w.a /= static_cast<double>(n);
  return w;
}

WalshCoefficients walsh_coefficients(int k) {
  if (k < 1 || k > 12)
    throw std::invalid_argument("walsh table limited to 1 <= k <= 12");
  const Eigen::Index n = Eigen::Index(1) << k;
  Eigen::VectorXd values(n);
  for (Eigen::Index j = 0; j < n; ++j)
    values[j] = std::sin(M_PI * static_cast<double>(j) / n);
  return walsh_from_values(values);
}

Circuit build_qpa(double gamma, int k, const RegisterLayout& layout) {
  const WalshCoefficients w = walsh_coefficients(k);
  if (layout.reg("p").width != k)
    throw std::invalid_argument("p register width does not match k");
  Circuit c;
  c.push(gate::global_phase(-gamma * w.a[0]));
  for (uint64_t s = 1; s < static_cast<uint64_t>(w.a.size()); ++s) {
    std::vector<int> targets;
    for (int t = 0; t < k; ++t)
      if ((s >> t) & 1) targets.push_back(layout.qubit_for_bit("p", t));
    c.push(gate::multi_z_rot(std::move(targets), gamma * w.a[s]));
  }
  return c;
}

namespace {

std::vector<std::string> system_registers(const RegisterLayout& layout) {
  std::vector<std::string> regs;
  for (const auto& r : layout.registers())
    if (r.name != "c" && r.name != "p" && r.width > 0) regs.push_back(r.name);
  return regs;
}

}  // namespace

Circuit build_grover(const Circuit& solver, int alpha,
                     const RegisterLayout& layout) {
  const int nd = layout.reg("d").width;
  if (alpha < 0 || alpha >= (1 << nd))
    throw std::invalid_argument("reflection target out of range");
  const auto sys = system_registers(layout);

  GateOp s_alpha = gate::global_phase(M_PI);
  for (const auto& name : sys) {
    const auto& r = layout.reg(name);
    for (int t = 0; t < r.width; ++t) {
      const int bit_value =
          name == "d" ? static_cast<int>((alpha >> t) & 1) : 0;
      s_alpha.controls.push_back({layout.qubit_for_bit(name, t), bit_value});
    }
  }
  GateOp s_zero = gate::global_phase(M_PI);
  for (const auto& name : sys)
    for (int q : layout.qubits(name)) s_zero.controls.push_back({q, 0});

  Circuit g;
  g.push(s_alpha);
  g.append(adjoint(solver));
  g.push(s_zero);
  g.append(solver);
  g.push(gate::global_phase(M_PI));
  return g;
}

Circuit build_qft(const std::vector<int>& qubits) {
  const int k = static_cast<int>(qubits.size());
  Circuit c;
  for (int i = 0; i < k; ++i) {
    c.push(gate::h(qubits[i]));
    for (int j = i + 1; j < k; ++j) {
      GateOp cp = gate::phase1(qubits[i], M_PI / (1 << (j - i)));
      cp.controls.push_back({qubits[j], 1});
      c.push(cp);
    }
  }
  for (int i = 0; i < k / 2; ++i)
    c.push(gate::swap(qubits[i], qubits[k - 1 - i]));
  return c;
}

Circuit build_qpe(const Circuit& grover, const RegisterLayout& layout) {
  const int k = layout.reg("p").width;
  Circuit c;
  for (int q : layout.qubits("p")) c.push(gate::h(q));
  for (int t = 0; t < k; ++t) {
    const Control ctl{layout.qubit_for_bit("p", t), 1};
    const Circuit controlled_g = controlled(grover, {ctl});
    for (int rep = 0; rep < (1 << t); ++rep) c.append(controlled_g);
  }
  c.append(adjoint(build_qft(layout.qubits("p"))));
  return c;
}

Circuit build_qae(const Circuit& solver, int alpha,
                  const RegisterLayout& layout) {
  Circuit c = solver;
  c.append(build_qpe(build_grover(solver, alpha, layout), layout));
  return c;
}

Circuit build_vpsi(double theta, const RegisterLayout& layout) {
  const int k = layout.reg("p").width;
  const int nd = layout.reg("d").width;
  const Eigen::Index dim = Eigen::Index(1) << (k + nd);
  const auto amps = qpe_amplitudes(theta, k);

  // target column: c+ a+(j)|j>|psi+> + c- a-(j)|j>|psi->, with
  // |psi+-> = (|0> +- i|1>)/sqrt(2) on the dummy qubit and
  // c+- = -+ (i/sqrt 2) e^{-+ i pi theta}
  const cd cp = cd(0, -1) / std::sqrt(2.0) * std::exp(cd(0, -M_PI * theta));
  const cd cm = cd(0, 1) / std::sqrt(2.0) * std::exp(cd(0, M_PI * theta));
  Eigen::VectorXcd column = Eigen::VectorXcd::Zero(dim);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (int j = 0; j < (1 << k); ++j) {
    const Eigen::Index base = Eigen::Index(j) << nd;
    const cd wp = cp * amps.plus[j] * inv_sqrt2;
    const cd wm = cm * amps.minus[j] * inv_sqrt2;
    column[base + 0] += wp + wm;
    column[base + 1] += cd(0, 1) * (wp - wm);
  }

  // complete to a unitary: phase out the leading entry, then a Householder
  // reflection maps e_0 onto the column
  const double nrm = column.norm();
  column /= nrm;
  cd lead = column[0];
  double chi = std::abs(lead) > 1e-14 ? std::arg(lead) : 0.0;
  Eigen::VectorXcd real_lead = column * std::exp(cd(0, -chi));
  Eigen::VectorXcd w = -real_lead;
  w[0] += 1.0;
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(dim, dim);
  const double wsq = w.squaredNorm();
  if (wsq > 1e-28) u -= (2.0 / wsq) * (w * w.adjoint());
  u *= std::exp(cd(0, chi));

  std::vector<int> qubits = layout.qubits("p");
  for (int q : layout.qubits("d")) qubits.push_back(q);
  Circuit c;
  c.push(gate::dense(qubits, u, "state-prep"));
  return c;
}

Circuit build_cost_layer_shortcut(double gamma, const Eigen::VectorXd& costs,
                                  const RegisterLayout& layout) {
  const int m = layout.reg("c").width;
  const int k = layout.reg("p").width;
  if (costs.size() != Eigen::Index(1) << m)
    throw std::invalid_argument("cost table size does not match c register");

  Circuit prep;
  for (uint64_t x = 0; x < static_cast<uint64_t>(costs.size()); ++x) {
    const double theta = theta_from_cost(costs[x]);
    std::vector<Control> on_x;
    for (int t = 0; t < m; ++t)
      on_x.push_back(
          {layout.qubit_for_bit("c", t), static_cast<int>((x >> t) & 1)});
    prep.append(controlled(build_vpsi(theta, layout), on_x));
  }
  Circuit c = prep;
  c.append(build_qpa(gamma, k, layout));
  c.append(adjoint(prep));
  return c;
}

Circuit build_cost_layer_full(double gamma, const ThermalNetwork& net,
                              int alpha, const InversionPolynomial& poly,
                              const PhaseSequence& phases,
                              const RegisterLayout& layout) {
  const Circuit solver = build_linear_solver(net, poly, phases, layout);
  const Circuit qae = build_qae(solver, alpha, layout);
  Circuit c = qae;
  c.append(build_qpa(gamma, layout.reg("p").width, layout));
  c.append(adjoint(qae));
  return c;
}

}  // namespace quso
