#pragma once

// Coherence preparation by Stark-chirped rapid adiabatic passage.
//
// Time is measured in units of the pump duration T1 and the pump envelope is
// exp(-tau^2). Rates inside this module are in units of 1/T1; the reported
// trajectory columns are normalized to the peak pump Rabi frequency Omega10m.

#include <cstddef>
#include <vector>

#include "maxcoh/core_model.hpp"

namespace maxcoh::scrap {

struct PulseConfig {
  double t1_seconds = 1e-9;   // absolute pump duration, metadata only
  double omega10m_t1 = 100.0; // Omega10m * T1, the adiabaticity scale

  double idler_ratio = 0.005;  // eta20m / eta10m
  double idler_center = -1.0;  // t2 / T1
  double idler_width = 0.5;    // T2 / T1

  double stark_peak = 2.0;     // delta2m / Omega10m (positive peak shift)
  double stark_center = -1.5;  // ts / T1
  double stark_width = 1.0;    // Ts / T1

  double delta20 = 0.0;  // static two-photon detuning / Omega10m

  void validate() const;
};

// peak * exp(-(t - center)^2 / width^2)
[[nodiscard]] double gaussian_envelope(double t, double peak, double center, double width);

// Instantaneous drive seen by the atom, rates in units of 1/T1.
struct DriveSample {
  double omega1 = 0.0;     // two-photon Rabi frequency
  double delta2 = 0.0;     // total detuning Delta2
  double stark = 0.0;      // S2
  double eta1_rel = 0.0;   // eta10(tau) / eta10m
  double eta2_rel = 0.0;   // eta20(tau) / eta10m
  double d_omega1 = 0.0;   // time derivatives (for the adiabaticity margin)
  double d_delta2 = 0.0;
};

// Delta2 = delta20 + S2 + beta21 eta1 + beta22 eta2; beta/mu1 ratios come from p.
[[nodiscard]] DriveSample drive_at(const AtomicParams& p, const PulseConfig& cfg, double tau);

struct PreparationTrajectory {
  std::vector<double> tau;
  std::vector<double> delta2;  // Delta2 / Omega10m
  std::vector<double> omega1;  // Omega1 / Omega10m
  std::vector<double> pop1;
  std::vector<double> pop2;
  std::vector<double> rho12;
  std::vector<double> margin;  // local gap / mixing-angle rate
  std::vector<bool> flagged;   // degenerate adiabatic state at this sample

  [[nodiscard]] std::size_t size() const { return tau.size(); }
};

[[nodiscard]] std::vector<double> uniform_grid(double t0, double t1, std::size_t n);
// 2001 samples over [-4, 4] T1.
[[nodiscard]] std::vector<double> default_grid();

// Populations of the instantaneous eigenstate followed from |1> at the first
// sample; the branch is continued by maximal overlap between samples.
[[nodiscard]] PreparationTrajectory adiabatic_trajectory(const AtomicParams& p,
                                                         const PulseConfig& cfg,
                                                         const std::vector<double>& grid);

// Two-level Schroedinger equation (pump + Stark only) integrated from |1> with
// fixed-step RK4; the step is halved until final populations move < 1e-6.
[[nodiscard]] PreparationTrajectory tdse_oracle(const AtomicParams& p, const PulseConfig& cfg,
                                                const std::vector<double>& grid);

// Local margin gap(tau) / |d theta / d tau| with tan(2 theta) = 2 Omega1 / Delta2.
[[nodiscard]] double local_margin(const DriveSample& s);

// Minimum local margin over the grid; > 10 counts as adiabatic.
[[nodiscard]] double adiabaticity_margin(const AtomicParams& p, const PulseConfig& cfg,
                                         const std::vector<double>& grid);
[[nodiscard]] double adiabaticity_margin(const AtomicParams& p, const PulseConfig& cfg);

}  // namespace maxcoh::scrap
