#include "maxcoh/scrap.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>

#include "maxcoh/errors.hpp"

namespace maxcoh::scrap {

namespace {

using cplx = std::complex<double>;
using State = std::array<cplx, 2>;

constexpr double kRichardsonTol = 1e-6;
constexpr int kMaxRefinements = 8;

double nan() { return std::numeric_limits<double>::quiet_NaN(); }

void check_grid(const std::vector<double>& grid) {
  if (grid.size() < 2) throw DomainError("scrap: time grid needs at least two samples");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) throw DomainError("scrap: time grid must be strictly increasing");
  }
}

State derivative(const State& c, double om1, double d2) {
  // i dc/dt = H c with H = [[0, -O1], [-O1, -D2]].
  const cplx mi(0.0, -1.0);
  return {mi * (-om1 * c[1]), mi * (-om1 * c[0] - d2 * c[1])};
}

// Populations at each grid sample using a fixed number of RK4 substeps per unit time.
std::vector<State> integrate(const AtomicParams& p, const PulseConfig& cfg,
                             const std::vector<double>& grid, double h_max) {
  std::vector<State> out;
  out.reserve(grid.size());
  State c{cplx(1.0, 0.0), cplx(0.0, 0.0)};
  out.push_back(c);
  auto rates = [&](double t) {
    const DriveSample s = drive_at(p, cfg, t);
    return std::pair{s.omega1, s.delta2};
  };
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double span = grid[i] - grid[i - 1];
    const auto n = static_cast<std::size_t>(std::ceil(span / h_max));
    const double h = span / static_cast<double>(n);
    double t = grid[i - 1];
    for (std::size_t k = 0; k < n; ++k) {
      const auto [o0, d0] = rates(t);
      const auto [om, dm] = rates(t + 0.5 * h);
      const auto [o1, d1] = rates(t + h);
      const State k1 = derivative(c, o0, d0);
      State tmp{c[0] + 0.5 * h * k1[0], c[1] + 0.5 * h * k1[1]};
      const State k2 = derivative(tmp, om, dm);
      tmp = {c[0] + 0.5 * h * k2[0], c[1] + 0.5 * h * k2[1]};
      const State k3 = derivative(tmp, om, dm);
      tmp = {c[0] + h * k3[0], c[1] + h * k3[1]};
      const State k4 = derivative(tmp, o1, d1);
      for (int j = 0; j < 2; ++j) c[j] += h / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
      t += h;
    }
    out.push_back(c);
  }
  return out;
}

}  // namespace

void PulseConfig::validate() const {
  if (!(omega10m_t1 > 0.0)) throw ConfigError("omega10m_t1 must be positive");
  if (!(t1_seconds > 0.0)) throw ConfigError("t1_seconds must be positive");
  if (!(idler_width > 0.0) || !(stark_width > 0.0)) {
    throw ConfigError("pulse widths must be positive");
  }
  if (idler_ratio < 0.0) throw ConfigError("idler_ratio must be non-negative");
  if (!std::isfinite(stark_peak) || !std::isfinite(delta20) || !std::isfinite(stark_center) ||
      !std::isfinite(idler_center)) {
    throw ConfigError("pulse parameters must be finite");
  }
}

double gaussian_envelope(double t, double peak, double center, double width) {
  if (!(width > 0.0)) throw DomainError("gaussian_envelope: width must be positive");
  const double u = (t - center) / width;
  return peak * std::exp(-u * u);
}

DriveSample drive_at(const AtomicParams& p, const PulseConfig& cfg, double tau) {
  const double scale = cfg.omega10m_t1;
  DriveSample s;
  s.eta1_rel = gaussian_envelope(tau, 1.0, 0.0, 1.0);
  s.eta2_rel = gaussian_envelope(tau, cfg.idler_ratio, cfg.idler_center, cfg.idler_width);
  const double stark_rel = gaussian_envelope(tau, cfg.stark_peak, cfg.stark_center, cfg.stark_width);

  const double d_eta1 = -2.0 * tau * s.eta1_rel;
  const double d_eta2 =
      -2.0 * (tau - cfg.idler_center) / (cfg.idler_width * cfg.idler_width) * s.eta2_rel;
  const double d_stark =
      -2.0 * (tau - cfg.stark_center) / (cfg.stark_width * cfg.stark_width) * stark_rel;

  // beta2j eta_j / Omega10m = (beta2j / mu1) * eta_j / eta10m.
  const double b21 = p.beta21 / p.mu1;
  const double b22 = p.beta22 / p.mu1;

  s.omega1 = scale * s.eta1_rel;
  s.stark = scale * stark_rel;
  s.delta2 = scale * (cfg.delta20 + stark_rel + b21 * s.eta1_rel + b22 * s.eta2_rel);
  s.d_omega1 = scale * d_eta1;
  s.d_delta2 = scale * (d_stark + b21 * d_eta1 + b22 * d_eta2);
  return s;
}

std::vector<double> uniform_grid(double t0, double t1, std::size_t n) {
  if (n < 2 || !(t1 > t0)) throw DomainError("uniform_grid: need n >= 2 and t1 > t0");
  std::vector<double> g(n);
  const double h = (t1 - t0) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) g[i] = t0 + h * static_cast<double>(i);
  g.back() = t1;
  return g;
}

std::vector<double> default_grid() { return uniform_grid(-4.0, 4.0, 2001); }

double local_margin(const DriveSample& s) {
  const double gap_sq = s.delta2 * s.delta2 + 4.0 * s.omega1 * s.omega1;
  const double rate = std::abs(s.d_omega1 * s.delta2 - s.omega1 * s.d_delta2);
  if (rate == 0.0) return std::numeric_limits<double>::infinity();
  return gap_sq * std::sqrt(gap_sq) / rate;
}

PreparationTrajectory adiabatic_trajectory(const AtomicParams& p, const PulseConfig& cfg,
                                           const std::vector<double>& grid) {
  p.validate();
  cfg.validate();
  check_grid(grid);
  PreparationTrajectory tr;
  tr.tau = grid;
  // The followed eigenvector is chosen by overlap with the previous sample, so a
  // crossing passed while Omega1 is negligible is treated diabatically.
  double prev1 = 1.0;
  double prev2 = 0.0;
  for (const double t : grid) {
    const DriveSample s = drive_at(p, cfg, t);
    tr.delta2.push_back(s.delta2 / cfg.omega10m_t1);
    tr.omega1.push_back(s.omega1 / cfg.omega10m_t1);
    tr.margin.push_back(local_margin(s));
    const double gap = std::hypot(s.delta2, 2.0 * s.omega1);
    if (gap == 0.0) {
      tr.pop1.push_back(nan());
      tr.pop2.push_back(nan());
      tr.rho12.push_back(nan());
      tr.flagged.push_back(true);
      continue;
    }
    // Upper branch (connects to |1> for Delta2 -> +inf): c1^2 = (R + D2) / 2R, c2 < 0.
    // Lower branch is orthogonal.
    const double o2 = 2.0 * s.omega1 * s.omega1;
    const double up1sq = s.delta2 >= 0.0 ? 1.0 - o2 / (gap * (gap + s.delta2)) : o2 / (gap * (gap - s.delta2));
    const double up1 = std::sqrt(up1sq);
    const double up2 = -std::sqrt(1.0 - up1sq);
    const double lo1 = -up2;
    const double lo2 = up1;
    const bool upper = std::abs(up1 * prev1 + up2 * prev2) >= std::abs(lo1 * prev1 + lo2 * prev2);
    double c1 = upper ? up1 : lo1;
    double c2 = upper ? up2 : lo2;
    if (c1 * prev1 + c2 * prev2 < 0.0) {
      c1 = -c1;
      c2 = -c2;
    }
    prev1 = c1;
    prev2 = c2;
    tr.pop1.push_back(upper ? up1sq : 1.0 - up1sq);
    tr.pop2.push_back(upper ? 1.0 - up1sq : up1sq);
    tr.rho12.push_back(s.omega1 / gap);
    tr.flagged.push_back(false);
  }
  return tr;
}

PreparationTrajectory tdse_oracle(const AtomicParams& p, const PulseConfig& cfg,
                                  const std::vector<double>& grid) {
  p.validate();
  cfg.validate();
  check_grid(grid);

  double max_rate = 1.0;
  for (const double t : grid) {
    const DriveSample s = drive_at(p, cfg, t);
    max_rate = std::max(max_rate, std::hypot(s.delta2, 2.0 * s.omega1) + std::abs(s.delta2));
  }
  double h = 0.1 / max_rate;
  std::vector<State> coarse = integrate(p, cfg, grid, h);
  std::vector<State> fine;
  bool converged = false;
  for (int r = 0; r < kMaxRefinements; ++r) {
    h *= 0.5;
    fine = integrate(p, cfg, grid, h);
    double diff = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      diff = std::max(diff, std::abs(std::norm(fine[i][0]) - std::norm(coarse[i][0])));
      diff = std::max(diff, std::abs(std::norm(fine[i][1]) - std::norm(coarse[i][1])));
    }
    if (diff < kRichardsonTol) {
      converged = true;
      break;
    }
    coarse = std::move(fine);
  }
  if (!converged) throw ConvergenceError("tdse_oracle: step halving did not converge");

  PreparationTrajectory tr;
  tr.tau = grid;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const DriveSample s = drive_at(p, cfg, grid[i]);
    tr.delta2.push_back(s.delta2 / cfg.omega10m_t1);
    tr.omega1.push_back(s.omega1 / cfg.omega10m_t1);
    tr.margin.push_back(local_margin(s));
    const double n1 = std::norm(fine[i][0]);
    const double n2 = std::norm(fine[i][1]);
    tr.pop1.push_back(n1);
    tr.pop2.push_back(n2);
    tr.rho12.push_back(std::sqrt(n1 * n2));
    tr.flagged.push_back(false);
  }
  return tr;
}

double adiabaticity_margin(const AtomicParams& p, const PulseConfig& cfg,
                           const std::vector<double>& grid) {
  p.validate();
  cfg.validate();
  check_grid(grid);
  double m = std::numeric_limits<double>::infinity();
  for (const double t : grid) m = std::min(m, local_margin(drive_at(p, cfg, t)));
  return m;
}

double adiabaticity_margin(const AtomicParams& p, const PulseConfig& cfg) {
  return adiabaticity_margin(p, cfg, default_grid());
}

}  // namespace maxcoh::scrap
