#include "maxcoh/experiments.hpp"

#include <cmath>
#include <limits>

#include "maxcoh/errors.hpp"
#include "maxcoh/oracles.hpp"
#include "maxcoh/smallsignal.hpp"

namespace maxcoh::experiments {

namespace {

constexpr double kNoPump = 1e-12;

double nan() { return std::numeric_limits<double>::quiet_NaN(); }

ExperimentConfig half_scrap(const std::string& name, double t2) {
  ExperimentConfig c;
  c.name = name;
  c.atomic = figure_atoms();
  c.pulses.stark_peak = 2.0;
  c.pulses.delta20 = 0.0;
  c.pulses.idler_ratio = 0.005;
  c.pulses.stark_center = -1.5;
  c.pulses.stark_width = 1.0;
  c.pulses.idler_width = 0.5;
  c.pulses.idler_center = t2;
  return c;
}

ExperimentConfig full_scrap(const std::string& name, double stark_peak) {
  ExperimentConfig c = half_scrap(name, 0.0);
  c.pulses.stark_peak = stark_peak;
  c.pulses.delta20 = -5.0;
  c.pulses.stark_center = -1.7;
  c.pulses.stark_width = 2.0;
  return c;
}

ExperimentConfig reduced_preset(const std::string& name, double b2, std::optional<double> s) {
  ExperimentConfig c;
  c.name = name;
  c.atomic = figure_atoms();
  propagation::ReducedProblem rp;
  rp.b1 = 0.1;
  rp.b2 = b2;
  rp.ratio = 0.01;
  rp.s_override = s;
  c.reduced = rp;
  c.z_max = 20.0;
  c.ntau = 1;
  return c;
}

double trapezoid(const std::vector<double>& x, const std::vector<double>& y) {
  double acc = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i) {
    const double a = std::isfinite(y[i - 1]) ? y[i - 1] : 0.0;
    const double b = std::isfinite(y[i]) ? y[i] : 0.0;
    acc += 0.5 * (a + b) * (x[i] - x[i - 1]);
  }
  return acc;
}

}  // namespace

std::string to_string(OraclePolicy o) {
  switch (o) {
    case OraclePolicy::Quad: return "quad";
    case OraclePolicy::Ode: return "ode";
    case OraclePolicy::None: return "none";
  }
  return "?";
}

OraclePolicy parse_oracle(const std::string& s) {
  if (s == "quad") return OraclePolicy::Quad;
  if (s == "ode") return OraclePolicy::Ode;
  if (s == "none") return OraclePolicy::None;
  throw ConfigError("unknown oracle '" + s + "' (expected quad, ode or none)");
}

void ExperimentConfig::validate() const {
  try {
    atomic.validate();
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  pulses.validate();
  if (nz < 2) throw ConfigError("grid_nz must be at least 2");
  if (!reduced && ntau < 2) throw ConfigError("grid_ntau must be at least 2");
  if (!(z_max > 0.0)) throw ConfigError("z_max must be positive");
  if (!(tau_max > tau_min)) throw ConfigError("tau_max must exceed tau_min");
  if (!(closed_form_defect >= 0.0)) throw ConfigError("closed_form_defect must be non-negative");
}

double ExperimentConfig::omega10m() const { return pulses.omega10m_t1 / pulses.t1_seconds; }

double ExperimentConfig::eta10m() const { return omega10m() / atomic.mu1; }

AtomicParams figure_atoms() {
  AtomicParams p = kr_preset();
  p.beta21 = 0.2 * p.mu1;
  p.delta30 = p.mu2 / (40.0 * p.mu1);
  p.dk_over_n = 0.5 * smallsignal::phase_match_max_coherence(p);
  return p;
}

std::vector<std::string> preset_names() {
  return {"fig2", "fig3", "fig4", "fig5-solid", "fig5-dotted", "fig6", "fig7", "fig7-early", "fig7-late"};
}

ExperimentConfig figure_preset(const std::string& name) {
  if (name == "fig2") {
    ExperimentConfig c = full_scrap(name, 20.0);
    return c;
  }
  if (name == "fig3") return half_scrap(name, -1.0);
  if (name == "fig4") return half_scrap(name, -1.0);
  if (name == "fig5-solid") return reduced_preset(name, 0.5, std::nullopt);
  if (name == "fig5-dotted") return reduced_preset(name, 8.0, 5.0);
  if (name == "fig6") return full_scrap(name, 10.0);
  if (name == "fig7") return half_scrap(name, 0.0);
  if (name == "fig7-early") return half_scrap(name, -1.0);
  if (name == "fig7-late") return half_scrap(name, 1.0);
  throw ConfigError("unknown preset '" + name + "'");
}

SliceInput slice_at(const ExperimentConfig& cfg, double tau) {
  const double e10m = cfg.eta10m();
  const double w = cfg.omega10m();
  const auto& pc = cfg.pulses;
  SliceInput s;
  s.eta10 = e10m * scrap::gaussian_envelope(tau, 1.0, 0.0, 1.0);
  s.eta20 = e10m * scrap::gaussian_envelope(tau, pc.idler_ratio, pc.idler_center, pc.idler_width);
  const double stark = scrap::gaussian_envelope(tau, pc.stark_peak, pc.stark_center, pc.stark_width);
  s.delta2 = w * (pc.delta20 + stark) + cfg.atomic.beta22 * s.eta20;
  return s;
}

GridResult grid_simulate(const ExperimentConfig& cfg) {
  cfg.validate();
  if (cfg.reduced) throw ConfigError("preset '" + cfg.name + "' is a single reduced problem without a time axis");
  AtomicParams p = cfg.atomic;
  if (cfg.q_override) p.dk_over_n = 0.5 * *cfg.q_override;

  GridResult r;
  r.z = scrap::uniform_grid(0.0, cfg.z_max, cfg.nz);
  r.tau = scrap::uniform_grid(cfg.tau_min, cfg.tau_max, cfg.ntau);
  r.J.assign(cfg.nz * cfg.ntau, 0.0);
  r.regime.assign(cfg.ntau, "none");
  r.b1.assign(cfg.ntau, nan());
  r.b2.assign(cfg.ntau, nan());
  r.pump.assign(cfg.ntau, 0.0);
  r.omega_ratio = p.lambda3_nm > 0.0 ? p.lambda1_nm / p.lambda3_nm : 1.0;

  const double e10m = cfg.eta10m();
  const double k0 = smallsignal::kappa0(p);
  const std::size_t nt = cfg.ntau;

  auto flag_column = [&](std::size_t it) {
    for (std::size_t iz = 0; iz < cfg.nz; ++iz) r.J[iz * nt + it] = nan();
    r.flagged += cfg.nz;
    r.regime[it] = "flagged";
  };

  for (std::size_t it = 0; it < nt; ++it) {
    const SliceInput s = slice_at(cfg, r.tau[it]);
    r.pump[it] = s.eta10 / e10m;
    if (s.eta10 < kNoPump * e10m || !(s.eta20 > 0.0)) continue;
    try {
      const auto c = propagation::coefficients(p, s.eta10, s.eta20, s.delta2, cfg.convention);
      r.b1[it] = c.b1;
      r.b2[it] = c.b2;
      if (!c.boundary && propagation::expansion_defect(c) <= cfg.closed_form_defect) {
        r.regime[it] = propagation::to_string(c.regime);
        for (std::size_t iz = 0; iz < cfg.nz; ++iz) {
          r.J[iz * nt + it] = propagation::solve(c, r.z[iz] / k0) * s.eta10 / e10m;
        }
        continue;
      }
      r.regime[it] = "oracle";
      ++r.oracle_slices;
      auto run_ode = [&] {
        oracles::FullProblem fp;
        fp.params = p;
        fp.eta10 = s.eta10;
        fp.eta20 = s.eta20;
        fp.delta2 = s.delta2;
        std::vector<double> zs(r.z.size());
        for (std::size_t iz = 0; iz < zs.size(); ++iz) zs[iz] = r.z[iz] / k0;
        const auto samples = oracles::canonical_ode(fp, zs);
        for (std::size_t iz = 0; iz < cfg.nz; ++iz) r.J[iz * nt + it] = samples[iz].J / e10m;
      };
      if (cfg.oracle == OraclePolicy::Quad) {
        // The reduced integral leaves its domain once 1 + alpha x changes sign.
        try {
          const oracles::ReducedQuadrature quad(c.reduced());
          for (std::size_t iz = 0; iz < cfg.nz; ++iz) {
            r.J[iz * nt + it] = quad.x_of_z(r.z[iz] / k0) * s.eta10 / e10m;
          }
        } catch (const DomainError&) {
          run_ode();
        }
      } else if (cfg.oracle == OraclePolicy::Ode) {
        run_ode();
      } else {
        flag_column(it);
      }
    } catch (const Error&) {
      flag_column(it);
    }
  }
  return r;
}

std::vector<double> efficiency_curve(const GridResult& r) {
  const double denom = trapezoid(r.tau, r.pump);
  if (!(denom > 0.0)) throw DomainError("efficiency_curve: pump energy vanishes on the grid");
  std::vector<double> w(r.z.size());
  std::vector<double> row(r.tau.size());
  for (std::size_t iz = 0; iz < r.z.size(); ++iz) {
    for (std::size_t it = 0; it < r.tau.size(); ++it) row[it] = r.at(iz, it);
    w[iz] = r.omega_ratio * trapezoid(r.tau, row) / denom;
  }
  return w;
}

}  // namespace maxcoh::experiments
