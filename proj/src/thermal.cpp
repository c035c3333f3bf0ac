#include "quso/thermal.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace quso {

int ThermalNetwork::max_degree() const {
  std::vector<int> deg(node_count, 0);
  for (const auto& e : edges) {
    deg[e.i]++;
    deg[e.j]++;
  }
  return deg.empty() ? 0 : *std::max_element(deg.begin(), deg.end());
}

double ThermalNetwork::min_edge_resistance() const {
  double r = r_env;
  for (const auto& e : edges) r = std::min(r, e.resistance);
  return r;
}

void validate(const ThermalNetwork& net) {
  if (net.node_count < 2)
    throw std::invalid_argument("network needs at least 2 nodes");
  if (net.r_env <= 0) throw std::invalid_argument("r_env must be positive");
  if (net.heat_rates.size() != net.node_count)
    throw std::invalid_argument("heat_rates length must equal node count");
  const long max_edges =
      static_cast<long>(net.node_count) * (net.node_count - 1) / 2;
  if (static_cast<long>(net.edges.size()) > max_edges)
    throw std::invalid_argument("too many edges for node count");
  for (size_t a = 0; a < net.edges.size(); ++a) {
    const auto& e = net.edges[a];
    if (e.i < 0 || e.j >= net.node_count || e.i >= e.j)
      throw std::invalid_argument("edge indices must satisfy 0 <= i < j < N");
    if (e.resistance <= 0)
      throw std::invalid_argument("edge resistance must be positive");
    for (size_t b = a + 1; b < net.edges.size(); ++b)
      if (net.edges[b].i == e.i && net.edges[b].j == e.j)
        throw std::invalid_argument("duplicate edge");
  }
}

Configuration Configuration::from_index(uint64_t index, int edge_count) {
  Configuration x;
  x.bits.resize(edge_count);
  for (int e = 0; e < edge_count; ++e)
    x.bits[e] = (index >> (edge_count - 1 - e)) & 1u;
  return x;
}

uint64_t Configuration::index() const {
  uint64_t v = 0;
  for (uint8_t b : bits) v = (v << 1) | b;
  return v;
}

std::string Configuration::bitstring() const {
  std::string s(bits.size(), '0');
  for (size_t e = 0; e < bits.size(); ++e) s[e] = bits[e] ? '1' : '0';
  return s;
}

uint64_t CostTable::argmin() const {
  Eigen::Index at = 0;
  costs.minCoeff(&at);
  return static_cast<uint64_t>(at);
}

Eigen::MatrixXd assemble_matrix(const ThermalNetwork& net,
                                const Configuration& x) {
  if (static_cast<int>(x.bits.size()) != net.edge_count())
    throw std::invalid_argument("configuration length != edge count");
  const int n = net.node_count;
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  a.diagonal().setConstant(1.0 / net.r_env);
  for (int e = 0; e < net.edge_count(); ++e) {
    if (!x.bits[e]) continue;
    const Edge& ed = net.edges[e];
    const double g = 1.0 / ed.resistance;
    a(ed.i, ed.i) += g;
    a(ed.j, ed.j) += g;
    a(ed.i, ed.j) -= g;
    a(ed.j, ed.i) -= g;
  }
  return a;
}

SolveResult solve_direct(const ThermalNetwork& net, const Configuration& x) {
  const Eigen::MatrixXd a = assemble_matrix(net, x);
  const Eigen::VectorXd& b = net.heat_rates;
  SolveResult r;
  r.temperatures = a.llt().solve(b);
  const double bnorm = b.lpNorm<Eigen::Infinity>();
  r.residual = (a * r.temperatures - b).lpNorm<Eigen::Infinity>() /
               (bnorm > 0 ? bnorm : 1.0);
  return r;
}

SpectralStats spectral_stats(const ThermalNetwork& net,
                             const Configuration& x) {
  const Eigen::MatrixXd a = assemble_matrix(net, x);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a,
                                                    Eigen::EigenvaluesOnly);
  SpectralStats s;
  s.sigma_min = es.eigenvalues().minCoeff();
  s.sigma_max = es.eigenvalues().maxCoeff();
  s.kappa_exact = s.sigma_max / s.sigma_min;
  s.kappa_bound =
      1.0 + 2.0 * net.max_degree() * net.r_env / net.min_edge_resistance();
  return s;
}

CostTable enumerate_costs(const ThermalNetwork& net, int target_node,
                          double scale) {
  if (target_node < 0 || target_node >= net.node_count)
    throw std::invalid_argument("target node out of range");
  const int m = net.edge_count();
  if (m > 24)
    throw std::invalid_argument(
        "cost enumeration over 2^m configurations is limited to m <= 24");
  CostTable t;
  t.edge_count = m;
  t.target_node = target_node;
  t.scale = scale;
  const uint64_t count = uint64_t{1} << m;
  t.costs.resize(count);
  for (uint64_t idx = 0; idx < count; ++idx) {
    const auto x = Configuration::from_index(idx, m);
    t.costs[idx] = scale * solve_direct(net, x).temperatures[target_node];
  }
  const double cmax = t.costs.maxCoeff();
  if (cmax == 0)
    throw std::invalid_argument("all costs are zero; cannot normalize");
  t.normalized = t.costs / cmax;
  return t;
}

ThermalNetwork synthetic_network(int node_count) {
  if (node_count < 3)
    throw std::invalid_argument("synthetic network needs at least 3 nodes");
  ThermalNetwork net;
  net.node_count = node_count;
  net.r_env = 0.010;
  net.t_env = 293.0;
  const double r_table[4] = {0.005, 0.006, 0.007, 0.008};
  int next = 0;
  auto add = [&](int i, int j) {
    net.edges.push_back({i, j, r_table[next++ % 4]});
  };
  for (int i = 0; i + 1 < node_count; ++i) add(i, i + 1);
  add(0, node_count - 1);
  for (int i = 0; i + 2 < node_count; i += 4) add(i, i + 2);
  std::sort(net.edges.begin(), net.edges.end(),
            [](const Edge& a, const Edge& b) {
              return a.i != b.i ? a.i < b.i : a.j < b.j;
            });
  net.heat_rates.resize(node_count);
  for (int i = 0; i < node_count; ++i)
    net.heat_rates[i] = (i % 2 == 0 ? 2000.0 : -1000.0) / (1 + i / 4);
  validate(net);
  return net;
}

ThermalNetwork parse_network(const std::string& json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& err) {
    throw std::invalid_argument(std::string("network JSON parse error: ") +
                                err.what());
  }
  ThermalNetwork net;
  try {
    net.node_count = doc.at("nodes").get<int>();
    net.r_env = doc.at("r_env_mK_per_W").get<double>() * 1e-3;
    net.t_env = doc.at("t_env_K").get<double>();
    for (const auto& je : doc.at("edges")) {
      Edge e;
      e.i = je.at("i").get<int>();
      e.j = je.at("j").get<int>();
      e.resistance = je.at("r_mK_per_W").get<double>() * 1e-3;
      net.edges.push_back(e);
    }
    const auto q = doc.at("q_kW").get<std::vector<double>>();
    net.heat_rates.resize(q.size());
    for (size_t i = 0; i < q.size(); ++i) net.heat_rates[i] = q[i] * 1e3;
  } catch (const nlohmann::json::exception& err) {
    throw std::invalid_argument(std::string("network JSON field error: ") +
                                err.what());
  }
  std::sort(net.edges.begin(), net.edges.end(),
            [](const Edge& a, const Edge& b) {
              return a.i != b.i ? a.i < b.i : a.j < b.j;
            });
  validate(net);
  return net;
}

ThermalNetwork load_network(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw std::invalid_argument("cannot open network file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_network(ss.str());
}

}  // namespace quso
