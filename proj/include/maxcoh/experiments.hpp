#pragma once

// Spatio-temporal grids J(z, tau), the conversion efficiency W(z) and the
// figure presets. Each retarded-time slice is propagated independently with
// the envelope values frozen at that tau.

#include <optional>
#include <string>
#include <vector>

#include "maxcoh/core_model.hpp"
#include "maxcoh/propagation.hpp"
#include "maxcoh/scrap.hpp"

namespace maxcoh::experiments {

enum class OraclePolicy { Quad, Ode, None };

[[nodiscard]] std::string to_string(OraclePolicy o);
[[nodiscard]] OraclePolicy parse_oracle(const std::string& s);

struct ExperimentConfig {
  std::string name = "custom";
  AtomicParams atomic;
  scrap::PulseConfig pulses;
  std::size_t nz = 200;
  std::size_t ntau = 200;
  double z_max = 300.0;    // kappa0^-1
  double tau_min = -3.0;   // T1
  double tau_max = 3.0;
  propagation::Convention convention = propagation::Convention::AsPrinted;
  OraclePolicy oracle = OraclePolicy::Quad;
  // Regime-C slices whose expansion_defect exceeds this go to the oracle.
  double closed_form_defect = 0.05;
  std::optional<double> q_override;  // otherwise compensation at maximum coherence

  // Reduced-problem presets (fig5-*) bypass the pulse machinery.
  std::optional<propagation::ReducedProblem> reduced;

  void validate() const;
  // Peak pump flux eta10m = Omega10m / mu1 with Omega10m = omega10m_t1 / T1.
  [[nodiscard]] double eta10m() const;
  [[nodiscard]] double omega10m() const;
};

// Kr atoms with beta21 / (2 mu1) = 0.1 and mu2 / (2 mu1 delta30) = 20.
[[nodiscard]] AtomicParams figure_atoms();

// fig2, fig3 (preparation), fig4, fig5-solid, fig5-dotted, fig6, fig7, fig7-early,
// fig7-late. Throws ConfigError for unknown names.
[[nodiscard]] ExperimentConfig figure_preset(const std::string& name);
[[nodiscard]] std::vector<std::string> preset_names();

struct SliceInput {
  double eta10 = 0.0;
  double eta20 = 0.0;
  double delta2 = 0.0;  // without the pump Stark term
};

[[nodiscard]] SliceInput slice_at(const ExperimentConfig& cfg, double tau);

struct GridResult {
  std::vector<double> z;    // kappa0^-1
  std::vector<double> tau;  // T1
  std::vector<double> J;    // row-major [iz * ntau + it], J / eta10m, NaN when flagged
  std::vector<std::string> regime;  // per tau: A, B, C, none, oracle, flagged
  std::vector<double> b1;
  std::vector<double> b2;
  std::vector<double> pump;  // eta10(tau) / eta10m
  std::size_t flagged = 0;
  std::size_t oracle_slices = 0;  // tau slices solved by an oracle instead of a closed form
  double omega_ratio = 1.0;  // omega3 / omega1

  [[nodiscard]] double at(std::size_t iz, std::size_t it) const { return J[iz * tau.size() + it]; }
};

[[nodiscard]] GridResult grid_simulate(const ExperimentConfig& cfg);

// W(z) = int omega3 eta3 dtau / int omega1 eta10 dtau by the trapezoid rule.
// Flagged cells are skipped. Throws DomainError for a vanishing denominator.
[[nodiscard]] std::vector<double> efficiency_curve(const GridResult& r);

}  // namespace maxcoh::experiments
