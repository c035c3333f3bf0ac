#include "quso/qaoa.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace quso {

using cd = std::complex<double>;

QaoaParams QaoaParams::constant(int p, double value) {
  QaoaParams q;
  q.gamma = Eigen::VectorXd::Constant(p, value);
  q.beta = Eigen::VectorXd::Constant(p, value);
  return q;
}

Circuit build_mixer(double beta, const std::vector<int>& c_qubits) {
  Circuit c;
  for (int q : c_qubits) c.push(gate::rot_x(q, beta));
  return c;
}

namespace {

// In-place e^{i beta X} sweep on an m-qubit amplitude vector.
void apply_mixer_dense(Eigen::VectorXcd& amps, int m, double beta) {
  const cd c = std::cos(beta);
  const cd is = cd(0, std::sin(beta));
  for (int q = 0; q < m; ++q) {
    const uint64_t bit = uint64_t{1} << q;
    for (uint64_t i = 0; i < static_cast<uint64_t>(amps.size()); ++i) {
      if (i & bit) continue;
      const cd a0 = amps[i];
      const cd a1 = amps[i | bit];
      amps[i] = c * a0 + is * a1;
      amps[i | bit] = is * a0 + c * a1;
    }
  }
}

}  // namespace

Eigen::VectorXcd qaoa_state(const Eigen::VectorXd& costs,
                            const QaoaParams& params) {
  const auto dim = costs.size();
  const int m = bits_for(static_cast<int>(dim));
  Eigen::VectorXcd amps =
      Eigen::VectorXcd::Constant(dim, 1.0 / std::sqrt(double(dim)));
  for (int layer = 0; layer < params.depth(); ++layer) {
    const double g = params.gamma[layer];
    for (Eigen::Index x = 0; x < dim; ++x)
      amps[x] *= std::exp(cd(0, -g * costs[x]));
    apply_mixer_dense(amps, m, params.beta[layer]);
  }
  return amps;
}

double expectation_cost(const Eigen::VectorXd& probabilities,
                        const CostTable& table) {
  if (probabilities.size() != table.normalized.size())
    throw std::invalid_argument("distribution length != cost table size");
  return probabilities.dot(table.normalized);
}

double expectation_cost_sampled(const Eigen::VectorXd& probabilities,
                                const CostTable& table, int n_mc,
                                uint64_t seed) {
  if (n_mc <= 0) throw std::invalid_argument("n_mc must be positive");
  Eigen::VectorXd cdf(probabilities.size());
  double acc = 0;
  for (Eigen::Index i = 0; i < probabilities.size(); ++i) {
    acc += probabilities[i];
    cdf[i] = acc;
  }
  std::mt19937_64 rng(seed);
  const double norm = 1.0 / 18446744073709551616.0;  // 2^-64
  double sum = 0;
  for (int s = 0; s < n_mc; ++s) {
    const double u = static_cast<double>(rng()) * norm * acc;
    const auto it = std::lower_bound(cdf.data(), cdf.data() + cdf.size(), u);
    Eigen::Index idx = it - cdf.data();
    if (idx >= cdf.size()) idx = cdf.size() - 1;
    sum += table.normalized[idx];
  }
  return sum / n_mc;
}

namespace {

double exact_expectation(const CostTable& table, const QaoaParams& params) {
  const Eigen::VectorXcd amps = qaoa_state(table.normalized, params);
  double e = 0;
  for (Eigen::Index x = 0; x < amps.size(); ++x)
    e += std::norm(amps[x]) * table.normalized[x];
  return e;
}

double ratio_from_best(const CostTable& table, double best) {
  const double cmin = table.normalized.minCoeff();
  const double cmax = table.normalized.maxCoeff();
  return (cmax - best) / (cmax - cmin);
}

}  // namespace

RunResult optimize(const CostTable& table, const QaoaParams& init,
                   const OptimizerConfig& cfg) {
  if (cfg.improvement_threshold <= 0)
    throw std::invalid_argument("improvement threshold must be positive");
  if (cfg.momentum < 0 || cfg.momentum >= 1)
    throw std::invalid_argument("momentum must lie in [0, 1)");
  const int p = init.depth();
  Eigen::VectorXd theta(2 * p);
  theta.head(p) = init.gamma;
  theta.tail(p) = init.beta;
  Eigen::VectorXd velocity = Eigen::VectorXd::Zero(2 * p);

  auto eval = [&](const Eigen::VectorXd& th) {
    QaoaParams q;
    q.gamma = th.head(p);
    q.beta = th.tail(p);
    return exact_expectation(table, q);
  };

  std::vector<double> trace;
  double prev = std::numeric_limits<double>::infinity();
  for (int iter = 0; iter < cfg.max_iterations; ++iter) {
    const double e = eval(theta);
    if (!std::isfinite(e))
      throw std::runtime_error("non-finite expectation during optimization");
    trace.push_back(e);
    if (std::abs(prev - e) < cfg.improvement_threshold) break;
    prev = e;
    Eigen::VectorXd grad(2 * p);
    for (int i = 0; i < 2 * p; ++i) {
      Eigen::VectorXd tp = theta, tm = theta;
      tp[i] += cfg.fd_step;
      tm[i] -= cfg.fd_step;
      grad[i] = (eval(tp) - eval(tm)) / (2 * cfg.fd_step);
    }
    velocity = cfg.momentum * velocity - cfg.learning_rate * grad;
    theta += velocity;
  }

  RunResult r;
  r.trace = Eigen::Map<Eigen::VectorXd>(trace.data(), trace.size());
  r.params.gamma = theta.head(p);
  r.params.beta = theta.tail(p);
  const Eigen::VectorXcd amps = qaoa_state(table.normalized, r.params);
  r.distribution.resize(amps.size());
  for (Eigen::Index x = 0; x < amps.size(); ++x)
    r.distribution[x] = std::norm(amps[x]);
  r.expectation =
      cfg.n_mc > 0
          ? expectation_cost_sampled(r.distribution, table, cfg.n_mc, cfg.seed)
          : expectation_cost(r.distribution, table);
  r.best_cost = r.trace.minCoeff();
  r.approximation_ratio = ratio_from_best(table, r.best_cost);
  r.ranking = ranked_distribution(r.distribution, table);
  return r;
}

RunResult evaluate_shortcut(const CostTable& table, const QaoaParams& params,
                            int k) {
  const int m = table.edge_count;
  const RegisterLayout layout = shortcut_layout(m, k);
  StateVector state = StateVector::zero_state(layout);
  Circuit circ;
  for (int q : layout.qubits("c")) circ.push(gate::h(q));
  for (int layer = 0; layer < params.depth(); ++layer) {
    circ.append(build_cost_layer_shortcut(params.gamma[layer],
                                          table.normalized, layout));
    circ.append(build_mixer(params.beta[layer], layout.qubits("c")));
  }
  apply(state, circ);

  RunResult r;
  r.params = params;
  r.distribution = register_distribution(state, "c");
  r.expectation = expectation_cost(r.distribution, table);
  r.trace = Eigen::VectorXd::Constant(1, r.expectation);
  r.best_cost = r.expectation;
  r.approximation_ratio = ratio_from_best(table, r.best_cost);
  r.ranking = ranked_distribution(r.distribution, table);
  return r;
}

Eigen::MatrixXd cost_landscape(const CostTable& table,
                               const Eigen::VectorXd& gammas,
                               const Eigen::VectorXd& betas, int k) {
  Eigen::MatrixXd grid(gammas.size(), betas.size());
  if (k == 0) {
    for (Eigen::Index i = 0; i < gammas.size(); ++i)
      for (Eigen::Index j = 0; j < betas.size(); ++j) {
        QaoaParams p;
        p.gamma = Eigen::VectorXd::Constant(1, gammas[i]);
        p.beta = Eigen::VectorXd::Constant(1, betas[j]);
        grid(i, j) = exact_expectation(table, p);
      }
    return grid;
  }
  const RegisterLayout layout = shortcut_layout(table.edge_count, k);
  for (Eigen::Index i = 0; i < gammas.size(); ++i) {
    const Circuit cost_layer =
        build_cost_layer_shortcut(gammas[i], table.normalized, layout);
    for (Eigen::Index j = 0; j < betas.size(); ++j) {
      StateVector state = StateVector::zero_state(layout);
      Circuit circ;
      for (int q : layout.qubits("c")) circ.push(gate::h(q));
      circ.append(cost_layer);
      circ.append(build_mixer(betas[j], layout.qubits("c")));
      apply(state, circ);
      grid(i, j) = expectation_cost(register_distribution(state, "c"), table);
    }
  }
  return grid;
}

std::vector<RankedEntry> ranked_distribution(
    const Eigen::VectorXd& probabilities, const CostTable& table) {
  if (probabilities.size() != table.normalized.size())
    throw std::invalid_argument("distribution length != cost table size");
  std::vector<uint64_t> order(probabilities.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](uint64_t a, uint64_t b) {
    if (table.normalized[a] != table.normalized[b])
      return table.normalized[a] < table.normalized[b];
    return a < b;
  });
  std::vector<RankedEntry> out;
  out.reserve(order.size());
  for (uint64_t idx : order) {
    RankedEntry e;
    e.bitstring = Configuration::from_index(idx, table.edge_count).bitstring();
    e.cost = table.normalized[idx];
    e.probability = probabilities[idx];
    out.push_back(e);
  }
  return out;
}

}  // namespace quso
