#pragma once

// Numerical references for the propagation closed forms: quadrature of the
// implicit solution and direct integration of the canonical equations.

#include <vector>

#include "maxcoh/core_model.hpp"
#include "maxcoh/propagation.hpp"

namespace maxcoh::oracles {

// Gauss-Kronrod quadrature of 2 Kp z = int_0^x (1 + alpha t) dt / sqrt(P(t)) on the
// reduced polynomial, with square-root substitutions at both ends.
class ReducedQuadrature {
 public:
  explicit ReducedQuadrature(const propagation::ReducedProblem& rp);

  // Smallest positive root of P, by bracketing and bisection.
  [[nodiscard]] double turning_point() const { return x_turn_; }
  [[nodiscard]] double z_of_x(double x) const;
  // Distance from x = 0 to the turning point (half the oscillation period).
  [[nodiscard]] double half_period() const { return z_turn_; }
  // Bisection inverse, folded onto the first half period.
  [[nodiscard]] double x_of_z(double z) const;

 private:
  void integrand_check(double t) const;
  propagation::ReducedProblem rp_;
  double x_turn_ = 0.0;
  double z_turn_ = 0.0;
};

struct FullProblem {
  AtomicParams params;
  double eta10 = 0.0;
  double eta20 = 0.0;
  double eta30 = 0.0;  // seed flux, may be 0
  double phi0 = 1.5707963267948966;
  double delta2 = 0.0;  // two-photon detuning without Stark terms
};

// Entrance eigenvalue: root of the characteristic cubic nearest the pump-dressed state.
[[nodiscard]] double entrance_lambda(const FullProblem& fp);

// Implicit solution built from the characteristic cubic itself (Manley-Rowe
// depletion, eta1 = eta10 - 2J):
//   z(J) = (2/N) int_0^J |dG/dlambda| dJ' / sqrt(g^2 - G^2),
// with G(J) the cubic without its phase term at lambda - qJ and g = -2 O1 O2 O3.
class FullQuadrature {
 public:
  explicit FullQuadrature(const FullProblem& fp);

  [[nodiscard]] double lambda() const { return lambda_; }
  [[nodiscard]] double turning_point() const { return j_turn_; }
  [[nodiscard]] double z_of_j(double j) const;
  [[nodiscard]] double half_period() const { return z_turn_; }
  // Bisection inverse, folded onto the first half period.
  [[nodiscard]] double j_of_z(double z) const;
  // g^2 - G^2 at J (non-negative inside the allowed range).
  [[nodiscard]] double discriminant(double j) const;
  [[nodiscard]] double g_lambda(double j) const;

 private:
  FullProblem fp_;
  double lambda_ = 0.0;
  double j_turn_ = 0.0;
  double z_turn_ = 0.0;
};

struct OdeSample {
  double z = 0.0;
  double J = 0.0;
  double phi = 0.0;
  double eta1 = 0.0;
  double eta2 = 0.0;
  double eta3 = 0.0;
  double lambda_total = 0.0;  // lambda0 + q J
  // Relative drifts from the entrance values.
  double mr12 = 0.0;        // eta1 + 2 eta2
  double mr13 = 0.0;        // eta1 + 2 eta3
  double lambda_res = 0.0;  // lambda0 + q J
  double intensity = 0.0;   // sum omega_j eta_j
};

struct OdeOptions {
  double max_step = 0.0;    // 0 picks a step from the coefficient scales
  double abort_tol = 1e-6;  // relative conservation drift that aborts the run
};

// RK4 integration of the canonical equations in the Cartesian variables
// X + iY = sqrt(2 eta3) exp(i phi), which stay regular at eta3 = 0.
// Throws ConvergenceError when a conservation drift exceeds abort_tol.
[[nodiscard]] std::vector<OdeSample> canonical_ode(const FullProblem& fp,
                                                   const std::vector<double>& z_grid,
                                                   const OdeOptions& opt = {});

// Small-signal linear pair for fixed coherence (A -> eta2 amplitude, B -> eta3):
//   dA/dz = -i k2 A + i kappa e^{i dk z} B,  dB/dz = i k3 B - i kappa e^{-i dk z} A.
struct LinearPairResult {
  double eta2 = 0.0;
  double eta3 = 0.0;
};
[[nodiscard]] LinearPairResult linear_pair(double eta20, double kappa, double k2, double k3,
                                           double dk, double z, int steps = 20000);

}  // namespace maxcoh::oracles
