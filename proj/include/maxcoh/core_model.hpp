#pragma once

// Physical parameters of the three-level medium and the point-wise atomic
// quantities: Rabi frequencies, detunings, the eigenvalue cubic of the
// interaction Hamiltonian and the adiabatic (dressed) state.
//
// Units: rates in rad/s, photon fluxes in cm^-2 s^-1, mu1 and beta in cm^2,
// mu2/mu3 in cm^2 s^-1, density in cm^-3, wavelengths in nm.

#include <vector>

namespace maxcoh {

struct AtomicParams {
  double mu1 = 0.0;  // two-photon coupling, Omega1 = mu1 * eta1
  double mu2 = 0.0;  // |2>-|3> coupling strength
  double mu3 = 0.0;  // |1>-|3> coupling strength

  // ac Stark coefficients of |2> induced by the w1, w2, w3 fields.
  double beta21 = 0.0;
  double beta22 = 0.0;
  double beta23 = 0.0;
  // Stark coefficients of |3>; not known for the Kr scheme, zero by default.
  double beta31 = 0.0;
  double beta32 = 0.0;
  double beta33 = 0.0;

  double delta30 = 0.0;  // w3 - w31
  double delta20 = 0.0;  // 2 w1 - w21

  double density = 0.0;    // N
  double dk_over_n = 0.0;  // residual mismatch per atom, dk / N

  double lambda1_nm = 0.0;
  double lambda2_nm = 0.0;
  double lambda3_nm = 0.0;

  // q = 2 dk / N, the mismatch parameter entering the propagation coefficients.
  [[nodiscard]] double q() const { return 2.0 * dk_over_n; }
  [[nodiscard]] double dk() const { return density * dk_over_n; }

  // Throws DomainError when a hard invariant is violated.
  void validate() const;
  // |1/l3 - (2/l1 - 1/l2)| * l3 < 1e-3.
  [[nodiscard]] bool multiphoton_resonant() const;
  // min(mu2, mu3) / mu1 > 10 |delta30|; a warning-level check only.
  [[nodiscard]] bool rwa_valid() const;

  // Angular carrier frequencies (rad/s). omega3 is taken from the resonance
  // condition 2 w1 - w2 so that photon bookkeeping closes exactly.
  [[nodiscard]] double omega1() const;
  [[nodiscard]] double omega2() const;
  [[nodiscard]] double omega3() const;
};

struct FieldPoint {
  double eta1 = 0.0;
  double eta2 = 0.0;
  double eta3 = 0.0;
  double phi = 0.0;  // 2 phi1 - phi2 - phi3 - dk z
};

struct DressedState {
  double lambda0 = 0.0;
  double c1 = 1.0;
  double c2 = 0.0;
  double rho12 = 0.0;
};

// Krypton 4p6 1S - 4p5 5p[0,1/2] two-photon scheme (212.55 / 759 / 123.6 nm).
// delta30 is set so that mu2 / (2 mu1 delta30) = 20, N = 1e13 cm^-3, delta20 = 0.
[[nodiscard]] AtomicParams kr_preset();

[[nodiscard]] double rabi_two_photon(const AtomicParams& p, double eta1);
[[nodiscard]] double rabi_single_photon(double mu, double eta);

// Delta_n = delta_n0 + S_n + sum_j beta_nj eta_j for n = 2 or 3.
[[nodiscard]] double detuning(const AtomicParams& p, int level, double stark_shift,
                              const FieldPoint& f);

// Real roots of a x^3 + b x^2 + c x + d, ascending, each Newton-polished.
// Falls back to the quadratic/linear case when a vanishes.
[[nodiscard]] std::vector<double> solve_cubic(double a, double b, double c, double d);

// Real roots of the characteristic equation of the three-level Hamiltonian,
//   l (D2 + l)(D3 + l) - (O1^2 + O2^2 + O3^2) l - O1^2 D3 - O3^2 D2
//     + 2 O1 O2 O3 cos(phi) = 0,
// sorted ascending.
[[nodiscard]] std::vector<double> eigenvalue_cubic(double d2, double d3, double om1, double om2,
                                                   double om3, double phi);

// Left-hand side of the characteristic equation (for residual checks).
[[nodiscard]] double characteristic_polynomial(double lambda, double d2, double d3, double om1,
                                               double om2, double om3, double phi);

// Two-level dressed state that connects to |1> when Delta2 -> +inf.
// Throws SingularConfiguration when om1 == 0 and d2 <= 0.
[[nodiscard]] DressedState dressed_state(double d2, double om1);

}  // namespace maxcoh
