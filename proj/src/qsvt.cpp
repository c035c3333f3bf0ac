#include "quso/qsvt.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace quso {

namespace {

// (1 - exp(-(x/s)^4)) / x, smooth odd bridge through zero
double bridge_over_x(double x, double s) {
  const double u = x / s;
  const double u4 = u * u * u * u;
  if (u4 < 1e-8) {
    // series of (1 - e^{-u^4})/x
    return x * x * x / (s * s * s * s) * (1.0 - 0.5 * u4);
  }
  return (1.0 - std::exp(-u4)) / x;
}

}  // namespace

double InversionPolynomial::evaluate(double x) const {
  // odd Chebyshev series, direct recurrence
  double t_prev = 1.0;  // T_0
  double t_cur = x;     // T_1
  double sum = coeffs[0] * t_cur;
  const int d = degree();
  for (int n = 2; n <= d; ++n) {
    const double t_next = 2.0 * x * t_cur - t_prev;
    t_prev = t_cur;
    t_cur = t_next;
    if (n & 1) sum += coeffs[(n - 1) / 2] * t_cur;
  }
  return sum;
}

InversionPolynomial build_inversion_polynomial(double mu, double eps,
                                               int degree_cap) {
  if (!(mu > 0 && mu < 1)) throw std::invalid_argument("mu must be in (0,1)");
  if (!(eps > 0 && eps < 1)) throw std::invalid_argument("eps must be in (0,1)");
  if (degree_cap < 1 || (degree_cap & 1) == 0)
    throw std::invalid_argument("degree cap must be a positive odd integer");

  const double sigma = mu / std::pow(std::log(4.0 / (eps * mu)), 0.25);
  const double cp = mu / 2.0;

  // Chebyshev coefficients of cp * bridge_over_x by Gauss-Chebyshev
  // quadrature; even orders vanish by parity.
  const int quad = 8192;
  const int n_max = std::min(degree_cap, quad / 4);
  std::vector<double> coef(n_max + 1, 0.0);
  for (int k = 0; k < quad; ++k) {
    const double theta = M_PI * (k + 0.5) / quad;
    const double x = std::cos(theta);
    const double g = cp * bridge_over_x(x, sigma);
    double t_prev = 1.0, t_cur = x;
    coef[0] += g;  // unused (even), kept for recurrence symmetry
    if (n_max >= 1) coef[1] += g * t_cur;
    for (int n = 2; n <= n_max; ++n) {
      const double t_next = 2.0 * x * t_cur - t_prev;
      t_prev = t_cur;
      t_cur = t_next;
      coef[n] += g * t_cur;
    }
  }
  for (int n = 0; n <= n_max; ++n) coef[n] *= 2.0 / quad;

  // truncate once the remaining odd tail is below eps*mu/8
  const double tail_budget = eps * mu / 8.0;
  std::vector<double> tail(n_max + 2, 0.0);
  for (int n = n_max; n >= 1; --n)
    tail[n] = tail[n + 1] + ((n & 1) ? std::abs(coef[n]) : 0.0);
  int degree = -1;
  for (int d = 1; d <= n_max; d += 2) {
    if (tail[d + 1] <= tail_budget) {
      degree = d;
      break;
    }
  }
  if (degree < 0)
    throw PolynomialError(
        "inversion polynomial needs degree above the cap of " +
        std::to_string(degree_cap));

  InversionPolynomial poly;
  poly.mu = mu;
  poly.eps = eps;
  poly.coeffs.resize((degree + 1) / 2);
  for (int j = 0; j < poly.coeffs.size(); ++j)
    poly.coeffs[j] = coef[2 * j + 1];

  const int grid = 10001;
  double max_abs = 0;
  for (int ig = 0; ig < grid; ++ig) {
    const double x = -1.0 + 2.0 * ig / (grid - 1);
    max_abs = std::max(max_abs, std::abs(poly.evaluate(x)));
  }
  poly.cp = cp;
  if (max_abs > 1.0) {
    poly.coeffs /= max_abs;
    poly.cp = cp / max_abs;
  }
  poly.max_abs = std::min(max_abs, 1.0);

  double err = 0;
  for (int ig = 0; ig < grid; ++ig) {
    const double x = mu + (1.0 - mu) * ig / (grid - 1);
    err = std::max(err, std::abs(poly.evaluate(x) - cp / x));
  }
  poly.approx_error = err;
  return poly;
}

// ---------------------------------------------------------------------------
// phase finding
// ---------------------------------------------------------------------------

namespace {

using cd = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;

inline Mat2 signal(double x, bool dagger) {
  const double s = std::sqrt(std::max(0.0, 1.0 - x * x));
  Mat2 o;
  if (!dagger)
    o << x, -s, s, x;
  else
    o << x, s, -s, x;
  return o;
}

inline Mat2 phase_mat(double phi) {
  Mat2 p = Mat2::Zero();
  p(0, 0) = std::exp(cd(0, phi));
  p(1, 1) = std::exp(cd(0, -phi));
  return p;
}

struct Node {
  double x;
  double target;
  bool penalize_im;
};

// value and gradient of
//   J = sum (Re f - t)^2 + w_im * sum_pen (Im f)^2
// over the full (unmirrored) phase vector.
double objective(const Eigen::VectorXd& phi, const std::vector<Node>& nodes,
                 double w_im, Eigen::VectorXd* grad) {
  const int d = static_cast<int>(phi.size());
  if (grad) grad->setZero(d);
  double j_total = 0;
  std::vector<Mat2> suffix(d + 1);
  for (const auto& node : nodes) {
    const Mat2 o = signal(node.x, false);
    const Mat2 od = signal(node.x, true);
    suffix[d].setIdentity();
    for (int i = d; i >= 1; --i) {
      const Mat2& sig = (i & 1) ? o : od;
      suffix[i - 1] = phase_mat(phi[i - 1]) * sig * suffix[i];
    }
    const cd f = suffix[0](0, 0);
    const double re = f.real() - node.target;
    const double im = f.imag();
    j_total += re * re;
    if (node.penalize_im) j_total += w_im * im * im;
    if (!grad) continue;
    // row = first row of the prefix product
    Eigen::RowVector2cd row;
    row << 1.0, 0.0;
    for (int i = 1; i <= d; ++i) {
      // d f / d phi_i = i * [prefix_{i-1} Z suffix_{i-1}]_{00}
      const cd df =
          cd(0, 1) * (row(0) * suffix[i - 1](0, 0) * 1.0 -
                      row(1) * suffix[i - 1](1, 0));
      double g = 2.0 * re * df.real();
      if (node.penalize_im) g += 2.0 * w_im * im * df.imag();
      (*grad)[i - 1] += g;
      const Mat2& sig = (i & 1) ? o : od;
      row = row * (phase_mat(phi[i - 1]) * sig);
    }
  }
  return j_total;
}

struct GridCheck {
  double re_residual;
  double im_residual;
};

GridCheck grid_check(const Eigen::VectorXd& phi,
                     const std::function<double(double)>& target,
                     double imag_cap) {
  const int n = 1000;
  GridCheck g{0, 0};
  for (int j = 0; j < n; ++j) {
    const double x = std::cos(M_PI * (j + 0.5) / n);
    const Mat2 m = evaluate_qsp_matrix(phi, x);
    const cd f = m(0, 0);
    g.re_residual = std::max(g.re_residual, std::abs(f.real() - target(x)));
    if (std::abs(x) <= imag_cap)
      g.im_residual = std::max(g.im_residual, std::abs(f.imag()));
  }
  return g;
}

// L-BFGS with Armijo backtracking.  Returns the reached objective.
double lbfgs(Eigen::VectorXd& phi, const std::vector<Node>& nodes,
             double w_im, int max_iter,
             const std::function<bool(const Eigen::VectorXd&)>& accept) {
  const int n = static_cast<int>(phi.size());
  const int hist = 12;
  std::vector<Eigen::VectorXd> s_list, y_list;
  Eigen::VectorXd grad(n), grad_new(n);
  double j_val = objective(phi, nodes, w_im, &grad);
  int stall = 0;
  for (int iter = 0; iter < max_iter; ++iter) {
    // two-loop recursion
    Eigen::VectorXd q = grad;
    std::vector<double> alpha(s_list.size());
    for (int i = static_cast<int>(s_list.size()) - 1; i >= 0; --i) {
      const double rho = 1.0 / y_list[i].dot(s_list[i]);
      alpha[i] = rho * s_list[i].dot(q);
      q -= alpha[i] * y_list[i];
    }
    if (!s_list.empty()) {
      const auto& s = s_list.back();
      const auto& y = y_list.back();
      q *= s.dot(y) / y.dot(y);
    } else if (grad.norm() > 0) {
      q *= 1.0 / std::max(1.0, grad.norm());
    }
    Eigen::VectorXd dir = -q;
    double gd = grad.dot(dir);
    if (gd > 0) {  // not a descent direction: reset memory
      s_list.clear();
      y_list.clear();
      dir = -grad;
      gd = -grad.squaredNorm();
    }
    double step = 1.0;
    double j_new = j_val;
    Eigen::VectorXd phi_new = phi;
    bool moved = false;
    for (int ls = 0; ls < 40; ++ls) {
      phi_new = phi + step * dir;
      j_new = objective(phi_new, nodes, w_im, nullptr);
      if (j_new <= j_val + 1e-4 * step * gd) {
        moved = true;
        break;
      }
      step *= 0.5;
    }
    if (!moved) break;
    objective(phi_new, nodes, w_im, &grad_new);
    Eigen::VectorXd s = phi_new - phi;
    Eigen::VectorXd y = grad_new - grad;
    if (y.dot(s) > 1e-18) {
      s_list.push_back(s);
      y_list.push_back(y);
      if (static_cast<int>(s_list.size()) > hist) {
        s_list.erase(s_list.begin());
        y_list.erase(y_list.begin());
      }
    }
    const double improvement = j_val - j_new;
    phi = phi_new;
    grad = grad_new;
    j_val = j_new;
    if ((iter & 63) == 63 && accept && accept(phi)) return j_val;
    stall = improvement < 1e-15 * std::max(j_val, 1e-30) ? stall + 1 : 0;
    if (stall > 25) break;
    if (j_val < 1e-22 * nodes.size()) break;
  }
  return j_val;
}

PhaseSequence find_phases_impl(const std::function<double(double)>& target,
                               int degree, double mu_hint,
                               const FindPhasesOptions& opt) {
  const int d = degree;
  // Chebyshev nodes, both signs so the optimizer sees the odd extension
  const int half = std::clamp(d + 1, 24, 1400);
  std::vector<Node> nodes;
  nodes.reserve(2 * half);
  for (int q = 0; q < half; ++q) {
    const double x = std::cos(M_PI * (2 * q + 1) / (4.0 * half));
    const bool pen = x <= opt.imag_cap && x >= 0.25 * mu_hint;
    nodes.push_back({x, target(x), pen});
    nodes.push_back({-x, -target(x), pen});
  }

  // degree continuation: appending a zero pair to the factor list leaves
  // the scalar product unchanged, so shorter solutions warm-start longer
  // ones exactly
  std::vector<int> stages;
  for (int dk = std::min(d, 21); dk < d; dk = std::min(d, 2 * dk + 3))
    stages.push_back(dk);
  stages.push_back(d);

  const auto target_fn = target;
  auto passes = [&](const Eigen::VectorXd& phi) {
    const auto g = grid_check(phi, target_fn, opt.imag_cap);
    return g.re_residual <= opt.grid_tolerance;
  };

  Eigen::VectorXd phi;
  const int budget = std::max(200, opt.max_iterations / 8);
  for (size_t si = 0; si < stages.size(); ++si) {
    const int dk = stages[si];
    if (si == 0) {
      // bookend start; zero phases realize f(x) = x exactly
      Eigen::VectorXd cand1 = Eigen::VectorXd::Zero(dk);
      Eigen::VectorXd cand2 = Eigen::VectorXd::Zero(dk);
      cand2[0] = M_PI / 4;
      cand2[dk - 1] += M_PI / 4;
      double j1 = lbfgs(cand1, nodes, opt.imag_weight, budget, nullptr);
      double j2 = lbfgs(cand2, nodes, opt.imag_weight, budget, nullptr);
      phi = j1 <= j2 ? cand1 : cand2;
    } else {
      Eigen::VectorXd grown = Eigen::VectorXd::Zero(dk);
      grown.head(phi.size()) = phi;
      phi = grown;
      const bool last = si + 1 == stages.size();
      lbfgs(phi, nodes, opt.imag_weight, last ? opt.max_iterations : budget,
            last ? std::function<bool(const Eigen::VectorXd&)>(passes)
                 : nullptr);
    }
  }
  if (stages.size() == 1)
    lbfgs(phi, nodes, opt.imag_weight, opt.max_iterations, passes);

  const auto g = grid_check(phi, target_fn, opt.imag_cap);
  if (g.re_residual > opt.grid_tolerance)
    throw PhaseFindingError(
        "phase optimization stalled at grid residual " +
            std::to_string(g.re_residual),
        g.re_residual);
  PhaseSequence seq;
  seq.angles = phi;
  seq.grid_residual = g.re_residual;
  seq.im_residual = g.im_residual;
  return seq;
}

}  // namespace

PhaseSequence find_phases(const InversionPolynomial& poly,
                          const FindPhasesOptions& options) {
  return find_phases_impl([&](double x) { return poly.evaluate(x); },
                          poly.degree(), poly.mu, options);
}

PhaseSequence find_phases_for(const Eigen::VectorXd& odd_cheb_coeffs,
                              double mu_hint,
                              const FindPhasesOptions& options) {
  InversionPolynomial p;
  p.mu = mu_hint;
  p.coeffs = odd_cheb_coeffs;
  return find_phases_impl([&](double x) { return p.evaluate(x); }, p.degree(),
                          mu_hint, options);
}

Eigen::Matrix2cd evaluate_qsp_matrix(const Eigen::VectorXd& angles,
                                     double x) {
  Mat2 m = Mat2::Identity();
  const int d = static_cast<int>(angles.size());
  for (int i = 1; i <= d; ++i)
    m = m * phase_mat(angles[i - 1]) * signal(x, (i & 1) == 0);
  return m;
}

double evaluate_qsp_scalar(const PhaseSequence& phases, double x) {
  if (phases.angles.size() == 0) return 1.0;
  return evaluate_qsp_matrix(phases.angles, x)(0, 0).real();
}

// ---------------------------------------------------------------------------
// circuits
// ---------------------------------------------------------------------------

namespace {

GateOp projector_flip(const RegisterLayout& layout) {
  GateOp flip = gate::x(layout.qubit_for_bit("q", 0));
  for (const char* reg : {"l", "f", "l'"})
    for (int q : layout.qubits(reg)) flip.controls.push_back({q, 0});
  return flip;
}

}  // namespace

Circuit build_qsvt_circuit(const PhaseSequence& phases, const Circuit& ua,
                           const RegisterLayout& layout) {
  const int d = phases.degree();
  if ((d & 1) == 0)
    throw std::invalid_argument("matrix inversion requires an odd degree");
  const Circuit ua_dag = adjoint(ua);
  const GateOp flip = projector_flip(layout);
  const int q = layout.qubit_for_bit("q", 0);
  Circuit c;
  for (int i = 0; i < d; ++i) {
    c.append((i & 1) ? ua_dag : ua);
    const double phi = phases.angles[d - 1 - i];
    c.push(flip);
    c.push(gate::phase_z(q, -phi));
    c.push(flip);
  }
  return c;
}

Circuit build_vb(const ThermalNetwork& net, const RegisterLayout& layout) {
  const double nrm = net.heat_rates.norm();
  if (nrm == 0) throw std::invalid_argument("all heat rates are zero");
  const int nd = layout.reg("d").width;
  Eigen::VectorXd amps = Eigen::VectorXd::Zero(Eigen::Index(1) << nd);
  amps.head(net.heat_rates.size()) = net.heat_rates / nrm;
  return build_state_prep(layout.qubits("d"), amps);
}

Circuit build_linear_solver(const ThermalNetwork& net,
                            const InversionPolynomial& poly,
                            const PhaseSequence& phases,
                            const RegisterLayout& layout) {
  Circuit l = build_vb(net, layout);
  l.append(build_qsvt_circuit(phases, build_ua(net, layout), layout));
  return l;
}

Circuit build_linear_solver(const ThermalNetwork& net,
                            const InversionPolynomial& poly,
                            const PhaseSequence& phases,
                            const RegisterLayout& layout,
                            const Configuration& x) {
  Circuit l = build_vb(net, layout);
  l.append(build_qsvt_circuit(phases, build_ua(net, layout, x), layout));
  return l;
}

namespace {

double cost_scale_for(const ThermalNetwork& net,
                      const InversionPolynomial& poly) {
  const LcuPlan plan = make_lcu_plan(net);
  const double cb = 1.0 / net.heat_rates.norm();
  return 2.0 * poly.scale() * cb / plan.encoding_scale();
}

}  // namespace

SolverRun run_linear_solver(const ThermalNetwork& net,
                            const InversionPolynomial& poly,
                            const PhaseSequence& phases,
                            const Configuration& x) {
  const RegisterLayout layout = solver_layout(net);
  SolverRun run;
  run.state = StateVector::zero_state(layout);
  apply(run.state, build_linear_solver(net, poly, phases, layout, x));
  const auto proj =
      project_ancilla_zero(run.state, {"q", "l", "f", "l'"});
  run.d_block = proj.amps;
  run.cost_scale = cost_scale_for(net, poly);
  return run;
}

SolverRun run_linear_solver_superposed(const ThermalNetwork& net,
                                       const InversionPolynomial& poly,
                                       const PhaseSequence& phases) {
  const int m = net.edge_count();
  const RegisterLayout layout({{"c", m},
                               {"q", 1},
                               {"l", bits_for(m + 1)},
                               {"f", 1},
                               {"l'", 1},
                               {"d", bits_for(net.node_count)}});
  SolverRun run;
  run.state = StateVector::zero_state(layout);
  Circuit c;
  for (int q : layout.qubits("c")) c.push(gate::h(q));
  c.append(build_linear_solver(net, poly, phases, layout));
  apply(run.state, c);
  run.cost_scale = cost_scale_for(net, poly);
  return run;
}

Eigen::VectorXcd branch_d_amplitudes(const StateVector& state,
                                     const Configuration& x) {
  const auto proj = project_ancilla_zero(state, {"q", "l", "f", "l'"});
  const int nd = proj.layout.reg("d").width;
  Eigen::VectorXcd out(Eigen::Index(1) << nd);
  for (Eigen::Index k = 0; k < out.size(); ++k) {
    uint64_t idx = proj.layout.with_register_value("d", 0, k);
    idx = proj.layout.with_register_value("c", idx, x.index());
    out[k] = proj.amps[idx];
  }
  return out;
}

SweepPoint qsvt_cost_sweep(const ThermalNetwork& net, int target_node,
                           const InversionPolynomial& poly,
                           const PhaseSequence& phases) {
  const int m = net.edge_count();
  const uint64_t count = uint64_t{1} << m;
  SweepPoint pt;
  pt.mu = poly.mu;
  pt.eps = poly.eps;
  pt.degree = poly.degree();
  pt.recovered.resize(count);
  for (uint64_t idx = 0; idx < count; ++idx) {
    const auto x = Configuration::from_index(idx, m);
    const auto run = run_linear_solver(net, poly, phases, x);
    pt.recovered[idx] = run.d_block[target_node].real();
  }
  const double peak = pt.recovered.maxCoeff();
  if (peak <= 0)
    throw std::runtime_error("recovered costs are not positive; mu too large");
  pt.recovered /= peak;
  pt.target = enumerate_costs(net, target_node, 1.0).normalized;
  pt.delta = (pt.target - pt.recovered).cwiseAbs();
  pt.mean_delta = pt.delta.mean();
  pt.std_delta =
      std::sqrt((pt.delta.array() - pt.mean_delta).square().mean());
  return pt;
}

}  // namespace quso
