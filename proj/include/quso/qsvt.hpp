// Singular value transformation machinery for matrix inversion.
//
// The inversion polynomial approximates (mu/2)/x outside [-mu, mu] while
// staying bounded by 1 on [-1, 1].  Phase angles realizing it are found by
// quasi-Newton optimization against the scalar signal-processing product
//
//   f(x) = [ P(phi_1) O(x) P(phi_2) O(x)^dag ... P(phi_d) O(x) ]_00,
//
// with P(phi) = diag(e^{i phi}, e^{-i phi}) and O(x) the rotation
// [[x, -s], [s, x]], s = sqrt(1-x^2).  This mirrors the circuit exactly: by
// the cosine-sine decomposition, the ancilla-zero block of the phased
// circuit equals f applied to the singular values of the encoded block.
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <optional>
#include <string>

#include "quso/block_encoding.hpp"
#include "quso/circuit.hpp"
#include "quso/layout.hpp"
#include "quso/state.hpp"
#include "quso/thermal.hpp"

namespace quso {

inline constexpr const char* kQspConvention = "rot-alt-v1";

struct InversionPolynomial {
  double mu = 0;
  double eps = 0;
  Eigen::VectorXd coeffs;  // coeffs[j] multiplies T_{2j+1}
  double max_abs = 0;      // on a dense [-1, 1] grid
  double approx_error = 0; // max |P - (mu/2)/x| on [mu, 1]
  double cp = 0;           // effective scale: mu/2 unless a rescale was needed

  int degree() const { return 2 * (static_cast<int>(coeffs.size()) - 1) + 1; }
  double scale() const { return cp; }
  double evaluate(double x) const;
};

struct PolynomialError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

InversionPolynomial build_inversion_polynomial(double mu, double eps,
                                               int degree_cap = 2001);

struct PhaseSequence {
  Eigen::VectorXd angles;
  std::string convention = kQspConvention;
  double grid_residual = 0;   // max |Re f - P| on the verification grid
  double im_residual = 0;     // max |Im f| on the penalized interval

  int degree() const { return static_cast<int>(angles.size()); }
};

struct PhaseFindingError : std::runtime_error {
  double residual;
  PhaseFindingError(const std::string& what, double res)
      : std::runtime_error(what), residual(res) {}
};

struct FindPhasesOptions {
  double imag_cap = 0.8;       // penalize Im f on [-cap, cap]
  double imag_weight = 0.5;
  double grid_tolerance = 1e-8;
  int max_iterations = 100000;
  bool symmetric = false;      // mirror-constrained phase vector
};

PhaseSequence find_phases(const InversionPolynomial& poly,
                          const FindPhasesOptions& options = {});
// Same optimizer against an arbitrary odd-coefficient target (tests).
PhaseSequence find_phases_for(const Eigen::VectorXd& odd_cheb_coeffs,
                              double mu_hint,
                              const FindPhasesOptions& options = {});

Eigen::Matrix2cd evaluate_qsp_matrix(const Eigen::VectorXd& angles, double x);
double evaluate_qsp_scalar(const PhaseSequence& phases, double x);

// Alternating U_A / U_A^dag interleaved with projector phases on (l, f, l')
// realized through the q ancilla.
Circuit build_qsvt_circuit(const PhaseSequence& phases, const Circuit& ua,
                           const RegisterLayout& layout);

// Prepares B: amplitudes proportional to the heat rates, signs preserved.
Circuit build_vb(const ThermalNetwork& net, const RegisterLayout& layout);

// L = U_phi V_B on the given layout (c-controlled when the layout has c).
Circuit build_linear_solver(const ThermalNetwork& net,
                            const InversionPolynomial& poly,
                            const PhaseSequence& phases,
                            const RegisterLayout& layout);
Circuit build_linear_solver(const ThermalNetwork& net,
                            const InversionPolynomial& poly,
                            const PhaseSequence& phases,
                            const RegisterLayout& layout,
                            const Configuration& x);

struct SolverRun {
  StateVector state;          // full state after L
  Eigen::VectorXcd d_block;   // ancilla-zero amplitudes over d
  double cost_scale = 0;      // 2 C_p C_B / C_LCU^2
};

// Runs L for one fixed configuration; d_block carries amplitudes whose real
// parts equal cost_scale * T_k(x) up to the polynomial error.
SolverRun run_linear_solver(const ThermalNetwork& net,
                            const InversionPolynomial& poly,
                            const PhaseSequence& phases,
                            const Configuration& x);

// Runs L on a uniform superposition of configurations (layout with c).
SolverRun run_linear_solver_superposed(const ThermalNetwork& net,
                                       const InversionPolynomial& poly,
                                       const PhaseSequence& phases);

// Per-branch ancilla-zero d amplitudes for one configuration of a
// superposed run (amplitudes include the 2^-m/2 branch weight).
Eigen::VectorXcd branch_d_amplitudes(const StateVector& state,
                                     const Configuration& x);

struct SweepPoint {
  double mu = 0;
  double eps = 0;
  int degree = 0;
  Eigen::VectorXd recovered;   // c~ from the circuit, per configuration
  Eigen::VectorXd target;      // c~ from the classical oracle
  Eigen::VectorXd delta;       // |target - recovered|
  double mean_delta = 0;
  double std_delta = 0;
};

// Runs the solver over all configurations and compares normalized costs
// against the classical oracle.
SweepPoint qsvt_cost_sweep(const ThermalNetwork& net, int target_node,
                           const InversionPolynomial& poly,
                           const PhaseSequence& phases);

}  // namespace quso
