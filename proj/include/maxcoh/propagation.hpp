#pragma once

// Depleted-pump propagation in the reduced variable x = J / eta10.
//
// With r = eta20 / eta10 the turning-point polynomial is
//   P(x) = x (1 - k x)^2 (r + x) - (b1 + b2 x)^2 x^2,
// k = 1 for the as-printed depletion (eta10 - J)^2 and k = 2 for the
// Manley-Rowe depletion (eta10 - 2J)^2. The implicit solution reads
//   2 Kp z = int_0^x (1 + alpha t) dt / sqrt(P(t)),
// Kp = kappa0 mu1 eta10 delta30 / a0 and alpha = a1 eta10 / a0.

#include <optional>
#include <string>
#include <vector>

#include "maxcoh/core_model.hpp"

namespace maxcoh::propagation {

enum class Convention { AsPrinted, ManleyRowe };
enum class Regime { A, B, C };

[[nodiscard]] std::string to_string(Convention c);
[[nodiscard]] std::string to_string(Regime r);
// Accepts "as-printed" and "manley-rowe"; throws ConfigError otherwise.
[[nodiscard]] Convention parse_convention(const std::string& s);

// Depletion factor k of the convention (1 or 2).
[[nodiscard]] double depletion_factor(Convention c);

constexpr double kBoundaryTol = 1e-6;

// Maps z >= 0 onto [0, half] for a motion that is symmetric about each turning point.
[[nodiscard]] double fold_period(double z, double half);

struct ReducedProblem {
  double b1 = 0.0;
  double b2 = 0.0;
  double ratio = 0.01;  // eta20 / eta10
  double alpha = 0.0;   // a1 eta10 / a0
  double kp = 1.0;      // z scale: kappa' = kp * sqrt(...) / s
  Convention convention = Convention::AsPrinted;
  std::optional<double> s_override;  // slowdown factor fixed by hand (regime B)

  // P(x) evaluated in product form.
  [[nodiscard]] double poly(double x) const;
  // (b1, b2) -> (-b1, -b2) leaves P unchanged; returns the copy with k b1 + b2 >= 0.
  [[nodiscard]] ReducedProblem canonical() const;
};

struct Roots {
  double x1 = 0.0;
  double x2 = 0.0;
  double x3 = 0.0;
};

// Small-ratio approximations x1 = (1 - b1)/(k + b2), x2 = (1 + b1)/(k - b2),
// x3 = -ratio / (1 - b1^2). Throws RegimeBoundary within 1e-6 of b1^2 = 1 or b2^2 = k^2.
[[nodiscard]] Roots roots(double b1, double b2, double ratio,
                          Convention conv = Convention::AsPrinted);

// Real roots of P(x)/x, ascending, Newton-polished.
[[nodiscard]] std::vector<double> exact_roots(const ReducedProblem& rp);

// Regime from the signs of 1 - b1^2 and k^2 - b2^2 (after sign canonicalization).
[[nodiscard]] Regime classify(double b1, double b2, Convention conv = Convention::AsPrinted);

struct PropagationCoefficients {
  double A1 = 0.0;
  double A2 = 0.0;
  double a0 = 0.0;
  double a1 = 0.0;
  double lambda = 0.0;
  double b1 = 0.0;  // as computed, before canonicalization
  double b2 = 0.0;
  double ratio = 0.0;
  double alpha = 0.0;
  double kp = 0.0;  // cm^-1
  double kappa0 = 0.0;
  Convention convention = Convention::AsPrinted;
  bool flipped = false;  // (b1, b2) sign-flipped for the closed forms

  Regime regime = Regime::A;
  bool boundary = false;  // within 1e-6 of a regime boundary
  Roots x;                // printed roots of the canonical problem
  double p = 0.0;         // elliptic modulus
  double n = 0.0;         // characteristic
  double s = 1.0;         // slowdown factor
  double kappa_prime = 0.0;

  [[nodiscard]] ReducedProblem reduced() const;
};

// Pump-dressed coefficients at flux eta10 and detuning delta2 (without the pump
// Stark term). Throws SingularConfiguration when a0 == 0.
[[nodiscard]] PropagationCoefficients coefficients(const AtomicParams& p, double eta10, double eta20,
                                                   double delta2,
                                                   Convention conv = Convention::AsPrinted);

// Closed-form parameters for a reduced problem (canonicalized internally).
[[nodiscard]] PropagationCoefficients closed_form(const ReducedProblem& rp);

// Explicit inverted solutions x(z).
[[nodiscard]] double solve_regimeA(const PropagationCoefficients& c, double z);
[[nodiscard]] double solve_regimeB(const PropagationCoefficients& c, double z);
[[nodiscard]] double solve_regimeC(const PropagationCoefficients& c, double z);
// Dispatches on c.regime; throws RegimeBoundary near boundaries.
[[nodiscard]] double solve(const PropagationCoefficients& c, double z);
// Distance at which x first reaches its maximum: K(p)/kappa' (A, B) or pi/(2 kappa') (C).
[[nodiscard]] double plateau_distance(const PropagationCoefficients& c);
[[nodiscard]] double plateau_value(const PropagationCoefficients& c);
// Size of the quadratic term the small-ratio regime-C form drops, relative to
// the terms it keeps: 2 |k + b1 b2| ratio / (1 - b1^2)^2. Zero in A and B.
// Diverges as b1 -> 1+, where the printed plateau ratio / (b1^2 - 1) does too.
[[nodiscard]] double expansion_defect(const PropagationCoefficients& c);

// Exact elliptic solution built from the exact roots and the alpha term.
// Parametrized by the Jacobi argument v in [0, K]: x(v) rises from 0 to x1.
class ExactSolution {
 public:
  explicit ExactSolution(const ReducedProblem& rp);

  [[nodiscard]] Regime regime() const { return regime_; }
  [[nodiscard]] double x1() const { return x1_; }
  [[nodiscard]] double x2() const { return x2_; }
  [[nodiscard]] double x3() const { return x3_; }
  [[nodiscard]] double modulus() const { return k_; }
  [[nodiscard]] double complete_k() const { return big_k_; }
  [[nodiscard]] double kappa_exact() const { return kappa_; }

  [[nodiscard]] double x_of_v(double v) const;
  [[nodiscard]] double z_of_v(double v) const;
  // z(x) for x in [0, x1].
  [[nodiscard]] double z_of_x(double x) const;
  // Inverse of z_of_v by bisection, continued periodically beyond the plateau.
  [[nodiscard]] double x_of_z(double z) const;

 private:
  [[nodiscard]] double amplitude_of_v(double v) const;
  [[nodiscard]] double phi(double gamma) const;  // regime-B primitive

  ReducedProblem rp_;
  Regime regime_ = Regime::A;
  double x1_ = 0.0;
  double x2_ = 0.0;
  double x3_ = 0.0;
  double c_ = 0.0;  // |x3|
  double k_ = 0.0;
  double kc_ = 1.0;
  double n_ = 0.0;
  double big_k_ = 0.0;
  double kappa_ = 0.0;
  double phi_top_ = 0.0;
};

}  // namespace maxcoh::propagation
