#pragma once

// Small-signal conversion: idler/signal growth for a fixed atomic coherence,
// the undepleted-pump result and the phase-matching conditions.
// Lengths in cm, wave numbers in cm^-1.

#include "maxcoh/core_model.hpp"

namespace maxcoh::smallsignal {

struct SmallSignalSetup {
  AtomicParams params;
  double eta10 = 0.0;
  double eta20 = 0.0;
  double delta2 = 0.0;  // two-photon detuning without the pump Stark term
  double rho12 = 0.0;
  double c1sq = 1.0;
  double c2sq = 0.0;
  double delta3 = 0.0;  // Delta3, defaults to delta30
  double kappa = 0.0;
  double dkprime = 0.0;
};

// Builds the setup from the dressed state with Delta2 = delta2 + beta21 eta10.
[[nodiscard]] SmallSignalSetup make_setup(const AtomicParams& p, double eta10, double eta20,
                                          double delta2);

// kappa = (N/2) sqrt(mu2 mu3) / delta3 * rho12. Throws DomainError for delta3 == 0.
[[nodiscard]] double kappa_coherent(const AtomicParams& p, double rho12);
[[nodiscard]] double kappa_coherent(const AtomicParams& p, double rho12, double delta3);

// dk' = dk + (N/2)(mu3 c1^2 + mu2 c2^2) / delta3.
[[nodiscard]] double dkprime_total(const AtomicParams& p, double c1sq, double c2sq);
[[nodiscard]] double dkprime_total(const AtomicParams& p, double c1sq, double c2sq, double delta3);

struct SignalPair {
  double eta2 = 0.0;
  double eta3 = 0.0;
};

enum class SmallSignalRegime { Gain, Oscillating, Marginal };

[[nodiscard]] SmallSignalRegime classify(double kappa, double dkprime);

// Growth at fixed coherence. Marginal case (|1 - (dk'/2 kappa)^2| < 1e-8)
// uses eta3 = eta20 (kappa z)^2. eta2 - eta3 = eta20 always.
[[nodiscard]] SignalPair undepleted_coherence_solution(const SmallSignalSetup& s, double z);
[[nodiscard]] SignalPair undepleted_coherence_solution(double eta20, double kappa, double dkprime,
                                                       double z);

// sup_z eta3: infinite in the gain regime, eta20 (2 kappa)^2 / (dk'^2 - (2 kappa)^2) otherwise.
[[nodiscard]] double oscillation_amplitude(double eta20, double kappa, double dkprime);

// Small-signal eta3(z) with the pump-dressed kappa and dk' = -(N/2) A1 / a0.
[[nodiscard]] double undepleted_pump_solution(const AtomicParams& p, double eta10, double eta20,
                                              double delta2, double z);
// The kappa and dk' used by undepleted_pump_solution.
[[nodiscard]] double pump_kappa(const AtomicParams& p, double eta10, double delta2);
[[nodiscard]] double pump_dkprime(const AtomicParams& p, double eta10, double delta2);

// Required q = 2 dk / N for dk' = 0 at the given pump flux and detuning.
[[nodiscard]] double phase_match_required_dk(const AtomicParams& p, double delta2, double eta10);
// delta2 >> mu1 eta10: -mu3 / delta30.
[[nodiscard]] double phase_match_early(const AtomicParams& p);
// mu1 eta10 >> delta2 (maximum coherence).
[[nodiscard]] double phase_match_max_coherence(const AtomicParams& p);

// kappa0 = (N/2) sqrt(mu2 mu3) / delta30.
[[nodiscard]] double kappa0(const AtomicParams& p);
// kappa1 = kappa0 mu1 eta10 / delta2 (detuned limit).
[[nodiscard]] double kappa1(const AtomicParams& p, double eta10, double delta2);
// kappa2 = kappa0 mu1 / sqrt(beta21^2 + 4 mu1^2) (strong-pump limit).
[[nodiscard]] double kappa2(const AtomicParams& p);

// Tilt of the w2 beam (rad) whose z-projection removes |dk| (cm^-1):
// k2 (1 - cos theta) = |dk| with k2 = 2 pi / lambda2. Collinear w1, w3 assumed.
[[nodiscard]] double compensation_angle(double dk, double lambda2_nm);

}  // namespace maxcoh::smallsignal
