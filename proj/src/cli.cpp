#include "maxcoh/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <memory>
#include <optional>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "maxcoh/config.hpp"
#include "maxcoh/elliptic.hpp"
#include "maxcoh/errors.hpp"
#include "maxcoh/experiments.hpp"
#include "maxcoh/oracles.hpp"
#include "maxcoh/phasematch.hpp"
#include "maxcoh/propagation.hpp"
#include "maxcoh/scrap.hpp"
#include "maxcoh/smallsignal.hpp"

namespace maxcoh::cli {

namespace {

using json = nlohmann::json;
namespace fs = std::filesystem;
namespace ex = experiments;
namespace pr = propagation;

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

// JSON cannot hold NaN; such values become null.
json jnum(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

struct Options {
  std::string preset;
  std::string config;
  std::string out;
  std::string convention;
  std::string oracle;
  std::size_t nz = 0;
  std::size_t ntau = 0;
  unsigned seed = 20240601;
};

// Preset (or the command default), then the config file, then flags.
config::RunConfig resolve(const Options& o, const std::string& default_preset) {
  config::RunConfig rc;
  config::apply_key(rc, "preset", o.preset.empty() ? default_preset : o.preset);
  if (!o.config.empty()) rc = config::load_config(o.config, rc, o.preset);
  if (!o.convention.empty()) config::apply_key(rc, "convention", o.convention);
  if (!o.oracle.empty()) config::apply_key(rc, "oracle", o.oracle);
  if (o.nz) rc.exp.nz = o.nz;
  if (o.ntau) rc.exp.ntau = o.ntau;
  rc.exp.validate();
  return rc;
}

json base_meta(const std::string& command, const Options& o, const config::RunConfig& rc) {
  json m;
  m["command"] = command;
  m["preset"] = rc.exp.name;
  m["convention"] = pr::to_string(rc.exp.convention);
  m["oracle"] = ex::to_string(rc.exp.oracle);
  m["seed"] = o.seed;
  m["format"] = "maxcoh-csv-1";
  return m;
}

class Table {
 public:
  explicit Table(std::vector<std::string> cols) : cols_(std::move(cols)) {}
  void row(const std::vector<double>& v) { rows_.push_back(v); }
  [[nodiscard]] std::size_t size() const { return rows_.size(); }

  void write(std::ostream& os, const json& meta) const {
    os << "# " << meta.dump() << "\n";
    for (std::size_t i = 0; i < cols_.size(); ++i) os << (i ? "," : "") << cols_[i];
    os << "\n";
    for (const auto& r : rows_) {
      for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << num(r[i]);
      os << "\n";
    }
  }

 private:
  std::vector<std::string> cols_;
  std::vector<std::vector<double>> rows_;
};

std::ofstream open_out(const std::string& dir, const std::string& file) {
  fs::create_directories(dir);
  const fs::path path = fs::path(dir) / file;
  std::ofstream os(path);
  if (!os) throw ConfigError("cannot write '" + path.string() + "'");
  return os;
}

void emit(const Table& t, const json& meta, const Options& o, const std::string& file,
          std::ostream& out) {
  if (o.out.empty()) {
    t.write(out, meta);
    return;
  }
  auto os = open_out(o.out, file);
  t.write(os, meta);
}

AtomicParams effective_atoms(const ex::ExperimentConfig& c) {
  AtomicParams p = c.atomic;
  if (c.q_override) p.dk_over_n = 0.5 * *c.q_override;
  return p;
}

void require_pulses(const ex::ExperimentConfig& c, const std::string& command) {
  if (c.reduced) {
    throw ConfigError("preset '" + c.name + "' is a reduced problem; '" + command +
                      "' needs a pulse preset");
  }
}

// ---------------------------------------------------------------------------

int cmd_scrap(const Options& o, std::ostream& out) {
  const auto rc = resolve(o, "fig3");
  require_pulses(rc.exp, "scrap");
  const auto& c = rc.exp;
  const auto grid = o.ntau ? scrap::uniform_grid(-4.0, 4.0, o.ntau) : scrap::default_grid();
  const auto tr = scrap::adiabatic_trajectory(c.atomic, c.pulses, grid);
  const bool with_tdse = c.oracle == ex::OraclePolicy::Ode;
  scrap::PreparationTrajectory td;
  if (with_tdse) td = scrap::tdse_oracle(c.atomic, c.pulses, grid);

  std::vector<std::string> cols{"tau", "delta2", "omega1", "pop1", "pop2", "rho12", "margin"};
  if (with_tdse) {
    cols.insert(cols.end(), {"tdse_pop1", "tdse_pop2", "tdse_rho12"});
  }
  Table t(cols);
  std::size_t flagged = 0;
  double worst = 0.0;
  for (std::size_t i = 0; i < tr.size(); ++i) {
    const bool bad = tr.flagged[i];
    flagged += bad ? 1 : 0;
    std::vector<double> r{tr.tau[i], tr.delta2[i], tr.omega1[i], bad ? kNan : tr.pop1[i],
                          bad ? kNan : tr.pop2[i], bad ? kNan : tr.rho12[i], tr.margin[i]};
    if (with_tdse) {
      r.insert(r.end(), {td.pop1[i], td.pop2[i], td.rho12[i]});
      if (!bad) worst = std::max(worst, std::abs(td.pop2[i] - tr.pop2[i]));
    }
    t.row(r);
  }
  json m = base_meta("scrap", o, rc);
  m["units"] = {{"tau", "T1"}, {"delta2", "Omega10m"}, {"omega1", "Omega10m"}};
  m["min_margin"] = jnum(scrap::adiabaticity_margin(c.atomic, c.pulses, grid));
  m["flagged"] = flagged;
  if (with_tdse) m["max_pop_diff"] = worst;
  emit(t, m, o, "scrap.csv", out);
  return kExitOk;
}

int cmd_undepleted(const Options& o, std::ostream& out) {
  const auto rc = resolve(o, "fig7");
  require_pulses(rc.exp, "undepleted");
  const auto& c = rc.exp;
  const AtomicParams p = effective_atoms(c);
  const auto s = ex::slice_at(c, rc.tau);
  const auto setup = smallsignal::make_setup(p, s.eta10, s.eta20, s.delta2);
  const double k0 = smallsignal::kappa0(p);
  const auto zs = scrap::uniform_grid(0.0, c.z_max, c.nz);
  Table t({"z", "z_cm", "eta2", "eta3"});
  for (double z : zs) {
    const auto sp = smallsignal::undepleted_coherence_solution(setup, z / k0);
    t.row({z, z / k0, sp.eta2, sp.eta3});
  }
  const auto reg = smallsignal::classify(setup.kappa, setup.dkprime);
  json m = base_meta("undepleted", o, rc);
  m["tau"] = rc.tau;
  m["kappa"] = setup.kappa;
  m["dkprime"] = setup.dkprime;
  m["rho12"] = setup.rho12;
  m["regime"] = reg == smallsignal::SmallSignalRegime::Gain          ? "gain"
                : reg == smallsignal::SmallSignalRegime::Oscillating ? "oscillating"
                                                                     : "marginal";
  m["units"] = {{"z", "1/kappa0"}, {"z_cm", "cm"}, {"eta", "photons/(cm^2 s)"}};
  m["flagged"] = 0;
  emit(t, m, o, "undepleted.csv", out);
  return kExitOk;
}

int cmd_propagate(const Options& o, std::ostream& out) {
  const auto rc = resolve(o, "fig7");
  const auto& c = rc.exp;
  json m = base_meta("propagate", o, rc);

  pr::PropagationCoefficients pc;
  pr::ReducedProblem rp;
  std::optional<oracles::FullProblem> fp;
  double zscale = 1.0;  // grid unit -> solver unit
  double eta10 = 1.0;
  if (c.reduced) {
    rp = *c.reduced;
    rp.convention = c.convention;
    pc = pr::closed_form(rp);
    m["units"] = {{"z", "1/Kp"}};
  } else {
    const AtomicParams p = effective_atoms(c);
    const auto s = ex::slice_at(c, rc.tau);
    pc = pr::coefficients(p, s.eta10, s.eta20, s.delta2, c.convention);
    rp = pc.reduced();
    zscale = 1.0 / smallsignal::kappa0(p);
    eta10 = s.eta10;
    fp = oracles::FullProblem{p, s.eta10, s.eta20, 0.0, 1.5707963267948966, s.delta2};
    m["tau"] = rc.tau;
    m["units"] = {{"z", "1/kappa0"}};
  }
  m["b1"] = pc.b1;
  m["b2"] = pc.b2;
  m["ratio"] = pc.ratio;
  m["alpha"] = pc.alpha;
  m["regime"] = pr::to_string(pc.regime);
  m["boundary"] = pc.boundary;
  m["s"] = pc.s;
  m["plateau"] = pc.boundary ? json(nullptr) : jnum(pr::plateau_value(pc));

  const auto zs = scrap::uniform_grid(0.0, c.z_max, c.nz);
  std::vector<double> oracle(zs.size(), kNan);
  std::vector<oracles::OdeSample> ode;
  std::size_t oracle_flagged = 0;
  if (c.oracle == ex::OraclePolicy::Quad) {
    // the reduced integral has no solution once 1 + alpha x changes sign before the turn
    try {
      const oracles::ReducedQuadrature quad(rp);
      for (std::size_t i = 0; i < zs.size(); ++i) oracle[i] = quad.x_of_z(zs[i] * zscale);
    } catch (const DomainError& e) {
      std::fill(oracle.begin(), oracle.end(), kNan);
      oracle_flagged = zs.size();
      m["oracle_error"] = e.what();
    }
  } else if (c.oracle == ex::OraclePolicy::Ode) {
    if (!fp) throw ConfigError("oracle 'ode' needs a pulse preset; reduced problems have no field equations");
    std::vector<double> zc(zs.size());
    for (std::size_t i = 0; i < zs.size(); ++i) zc[i] = zs[i] * zscale;
    ode = oracles::canonical_ode(*fp, zc);
    for (std::size_t i = 0; i < zs.size(); ++i) oracle[i] = ode[i].J / eta10;
  }

  std::unique_ptr<pr::ExactSolution> exact;
  try {
    exact = std::make_unique<pr::ExactSolution>(rp);
  } catch (const Error&) {
    exact.reset();  // regime C or a degenerate root order
  }

  Table t({"z", "x_closed", "x_exact", "x_oracle", "abs_diff", "mr12", "mr13", "lambda_res",
           "intensity"});
  std::size_t flagged = 0;
  double worst = 0.0;
  for (std::size_t i = 0; i < zs.size(); ++i) {
    double xc = kNan;
    if (!pc.boundary) {
      xc = pr::solve(pc, zs[i] * zscale);
    } else {
      ++flagged;
    }
    const double xe = exact ? exact->x_of_z(zs[i] * zscale) : kNan;
    const double diff = std::abs(xc - oracle[i]);
    if (std::isfinite(diff)) worst = std::max(worst, diff);
    if (ode.empty()) {
      t.row({zs[i], xc, xe, oracle[i], diff, kNan, kNan, kNan, kNan});
    } else {
      const auto& s = ode[i];
      t.row({zs[i], xc, xe, oracle[i], diff, s.mr12, s.mr13, s.lambda_res, s.intensity});
    }
  }
  m["flagged"] = flagged + oracle_flagged;
  m["max_abs_diff"] = worst;
  emit(t, m, o, "propagate.csv", out);
  return kExitOk;
}

void write_grid_outputs(const Options& o, const config::RunConfig& rc, const ex::GridResult& g,
                        const std::vector<double>& w, bool with_grid, std::ostream& out) {
  json m = base_meta(with_grid ? "grid" : "efficiency", o, rc);
  m["nz"] = g.z.size();
  m["ntau"] = g.tau.size();
  m["flagged"] = g.flagged;
  m["oracle_slices"] = g.oracle_slices;
  m["closed_form_defect"] = rc.exp.closed_form_defect;
  m["units"] = {{"z", "1/kappa0"}, {"tau", "T1"}, {"J", "eta10m"}};
  m["omega_ratio"] = g.omega_ratio;
  const auto peak = std::max_element(w.begin(), w.end(), [](double a, double b) {
    return (std::isfinite(a) ? a : -1.0) < (std::isfinite(b) ? b : -1.0);
  });
  m["w_max"] = jnum(*peak);
  m["z_at_w_max"] = g.z[static_cast<std::size_t>(peak - w.begin())];

  Table wz({"z", "W"});
  for (std::size_t i = 0; i < g.z.size(); ++i) wz.row({g.z[i], w[i]});

  if (!with_grid && o.out.empty()) {
    wz.write(out, m);
    return;
  }
  const std::string dir = o.out.empty() ? "." : o.out;
  {
    auto os = open_out(dir, "wz.csv");
    wz.write(os, m);
  }
  json full = m;
  full["z"] = g.z;
  full["tau"] = g.tau;
  full["regime"] = g.regime;
  json b1 = json::array();
  json b2 = json::array();
  for (std::size_t i = 0; i < g.tau.size(); ++i) {
    b1.push_back(jnum(g.b1[i]));
    b2.push_back(jnum(g.b2[i]));
  }
  full["b1"] = b1;
  full["b2"] = b2;
  full["pump"] = g.pump;
  full["layout"] = "grid.csv rows follow z, columns follow tau";
  {
    auto os = open_out(dir, "meta.json");
    os << full.dump(2) << "\n";
  }
  if (!with_grid) return;
  auto os = open_out(dir, "grid.csv");
  os << "# " << m.dump() << "\n";
  for (std::size_t iz = 0; iz < g.z.size(); ++iz) {
    for (std::size_t it = 0; it < g.tau.size(); ++it) os << (it ? "," : "") << num(g.at(iz, it));
    os << "\n";
  }
}

int cmd_grid(const Options& o, std::ostream& out, bool with_grid) {
  const auto rc = resolve(o, "fig7");
  require_pulses(rc.exp, with_grid ? "grid" : "efficiency");
  const auto g = ex::grid_simulate(rc.exp);
  const auto w = ex::efficiency_curve(g);
  write_grid_outputs(o, rc, g, w, with_grid, out);
  return kExitOk;
}

int cmd_phase_match(const Options& o, std::ostream& out) {
  const auto rc = resolve(o, "fig7");
  require_pulses(rc.exp, "phase-match");
  const auto& c = rc.exp;
  const AtomicParams p = effective_atoms(c);
  const auto taus = scrap::uniform_grid(c.tau_min, c.tau_max, c.ntau);
  Table t({"tau", "pump", "d2", "y", "y0", "y1", "y2", "y3", "y4", "b1", "in_window", "joint_gap"});
  std::vector<double> d2s;
  double d2_required = kNan;
  std::size_t flagged = 0;
  const double e10m = c.eta10m();
  for (double tau : taus) {
    const auto s = ex::slice_at(c, tau);
    if (s.eta10 < 1e-12 * e10m) {
      ++flagged;
      t.row({tau, s.eta10 / e10m, kNan, kNan, kNan, kNan, kNan, kNan, kNan, kNan, kNan, kNan});
      continue;
    }
    const auto w = phasematch::windows(p, s.delta2, s.eta10);
    const auto j = phasematch::joint_compensation_check(p, s.delta2, s.eta10);
    d2_required = j.d2_required;
    d2s.push_back(w.d2);
    const double b1 = -std::sqrt(1.0 + w.d2 * w.d2) * (w.y - w.y0);
    t.row({tau, s.eta10 / e10m, w.d2, w.y, w.y0, w.y1, w.y2, w.y3, w.y4, b1,
           w.in_linear_window() ? 1.0 : 0.0, j.gap});
  }
  json m = base_meta("phase-match", o, rc);
  m["q"] = p.q();
  m["dk"] = p.dk();
  m["d2_required"] = jnum(d2_required);
  m["condition_crossings"] = std::isfinite(d2_required) ? phasematch::condition_crossings(d2s, d2_required) : 0;
  if (p.lambda2_nm > 0.0) m["compensation_angle_rad"] = jnum(smallsignal::compensation_angle(p.dk(), p.lambda2_nm));
  m["flagged"] = flagged;
  m["units"] = {{"tau", "T1"}};
  emit(t, m, o, "phase_match.csv", out);
  return kExitOk;
}

int cmd_selftest(const Options& o, std::ostream& out) {
  const auto lines = run_selftest(o.seed);
  std::ostringstream os;
  bool all = true;
  for (const auto& l : lines) {
    all = all && l.pass;
    os << (l.pass ? "PASS " : "FAIL ") << l.name << " value=" << num(l.value)
       << " threshold=" << num(l.threshold) << "\n";
  }
  os << (all ? "selftest passed" : "selftest FAILED") << " seed=" << o.seed << "\n";
  if (o.out.empty()) {
    out << os.str();
  } else {
    auto f = open_out(o.out, "selftest.txt");
    f << os.str();
  }
  return all ? kExitOk : kExitNumerical;
}

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--preset", o.preset, "Named figure preset");
  sub->add_option("--config", o.config, "key = value configuration file");
  sub->add_option("--out", o.out, "Output directory (tables go to stdout when omitted)");
  sub->add_option("--convention", o.convention, "as-printed or manley-rowe");
  sub->add_option("--oracle", o.oracle, "quad, ode or none");
  sub->add_option("--grid-nz", o.nz, "Number of z samples");
  sub->add_option("--grid-ntau", o.ntau, "Number of retarded-time samples");
  sub->add_option("--seed", o.seed, "Seed for randomized checks");
}

}  // namespace

// ---------------------------------------------------------------------------
// selftest

namespace {

SelftestLine check(std::string name, double value, double threshold) {
  return {std::move(name), std::isfinite(value) && value <= threshold, value, threshold};
}

double rel(double a, double b) { return std::abs(a - b) / std::max(1e-300, std::abs(b)); }

}  // namespace

std::vector<SelftestLine> run_selftest(unsigned seed) {
  std::mt19937_64 rng(seed);
  auto uni = [&](double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); };
  std::vector<SelftestLine> lines;

  {  // elliptic identities
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
      const double k = uni(0.0, 0.99);
      const double g = uni(0.0, 1.5);
      const double f = elliptic::incomplete_F(g, k);
      worst = std::max(worst, rel(elliptic::incomplete_F(1.5707963267948966, k), elliptic::complete_K(k)));
      worst = std::max(worst, rel(elliptic::incomplete_Pi(g, 0.0, k), f));
      const auto j = elliptic::jacobi(f, elliptic::EllipticModulus::from_k(k));
      worst = std::max(worst, std::abs(j.sn - std::sin(g)));
      worst = std::max(worst, std::abs(j.sn * j.sn + j.cn * j.cn - 1.0));
    }
    lines.push_back(check("elliptic.identities", worst, 1e-12));
  }
  {  // cubic roots
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
      std::vector<double> r{uni(-3, 3), uni(-3, 3), uni(-3, 3)};
      std::sort(r.begin(), r.end());
      const double a = uni(0.5, 2.0);
      const auto got = solve_cubic(a, -a * (r[0] + r[1] + r[2]),
                                   a * (r[0] * r[1] + r[1] * r[2] + r[0] * r[2]),
                                   -a * r[0] * r[1] * r[2]);
      if (got.size() != 3) {
        worst = 1.0;
        continue;
      }
      for (int k = 0; k < 3; ++k) worst = std::max(worst, std::abs(got[k] - r[k]) / (1.0 + std::abs(r[k])));
    }
    lines.push_back(check("cubic.roots", worst, 1e-6));
  }
  {  // exact elliptic solution against quadrature
    double worst = 0.0;
    for (auto conv : {pr::Convention::AsPrinted, pr::Convention::ManleyRowe}) {
      const double k = pr::depletion_factor(conv);
      for (int i = 0; i < 4; ++i) {
        pr::ReducedProblem rp;
        rp.b1 = uni(-0.8, 0.8);
        rp.b2 = uni(-0.8, 0.8) * k;
        rp.ratio = uni(1e-3, 0.05);
        rp.alpha = uni(-0.3, 0.3);
        rp.convention = conv;
        const pr::ExactSolution ex_sol(rp.canonical());
        const oracles::ReducedQuadrature quad(rp.canonical());
        for (double f : {0.2, 0.5, 0.9}) {
          const double v = f * ex_sol.complete_k();
          worst = std::max(worst, rel(ex_sol.z_of_v(v), quad.z_of_x(ex_sol.x_of_v(v))));
        }
      }
    }
    lines.push_back(check("propagation.exact-vs-quadrature", worst, 1e-6));
  }
  {  // conservation along the canonical equations
    AtomicParams p;
    p.mu1 = 1.0;
    p.mu2 = 8.0;
    p.mu3 = 1.0;
    p.delta30 = 1.0;
    p.density = 2.0;
    p.beta21 = 0.2;
    p.beta22 = 0.1;
    p.beta23 = 0.3;
    p.lambda1_nm = 212.55;
    p.lambda2_nm = 759.0;
    p.lambda3_nm = 123.6;
    p.dk_over_n = 0.5 * smallsignal::phase_match_required_dk(p, 0.0, 1.0);
    oracles::FullProblem fp{p, 1.0, uni(1e-3, 1e-2), 0.0, 1.5707963267948966, 0.0};
    const auto zs = scrap::uniform_grid(0.0, 8.0, 41);
    const auto r = oracles::canonical_ode(fp, zs);
    double worst = 0.0;
    for (const auto& s : r) {
      worst = std::max({worst, std::abs(s.mr12), std::abs(s.mr13), std::abs(s.lambda_res),
                        std::abs(s.intensity)});
    }
    lines.push_back(check("ode.conservation", worst, 1e-8));
  }
  {  // preparation against the Schroedinger equation
    const auto c = ex::figure_preset("fig3");
    const auto grid = scrap::default_grid();
    const auto a = scrap::adiabatic_trajectory(c.atomic, c.pulses, grid);
    const auto t = scrap::tdse_oracle(c.atomic, c.pulses, grid);
    double worst = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      if (!a.flagged[i]) worst = std::max(worst, std::abs(a.pop2[i] - t.pop2[i]));
    }
    lines.push_back(check("scrap.adiabatic-vs-tdse", worst, 1e-2));
    lines.push_back(check("scrap.inverse-margin", 1.0 / scrap::adiabaticity_margin(c.atomic, c.pulses, grid), 0.1));
  }
  {  // window ordering
    double worst = -1e300;
    for (int i = 0; i < 1000; ++i) {
      const auto w = phasematch::windows(uni(0.05, 20.0), uni(-5.0, 5.0));
      worst = std::max({worst, w.y1 - w.y0, w.y0 - w.y2, w.y2, w.y4 - w.y1});
    }
    lines.push_back(check("phasematch.ordering", worst, 1e-12));
  }
  {  // small-signal closed form against the linear pair
    double worst = 0.0;
    for (int i = 0; i < 3; ++i) {
      const double kappa = uni(0.5, 1.5);
      const double k2 = uni(-0.5, 0.5);
      const double k3 = uni(-0.5, 0.5);
      const double dk = uni(-1.0, 1.0);
      const double z = 2.0;
      const auto ref = oracles::linear_pair(1.0, kappa, k2, k3, dk, z);
      const auto got = smallsignal::undepleted_coherence_solution(1.0, kappa, dk + k2 + k3, z);
      worst = std::max({worst, rel(got.eta3, ref.eta3), rel(got.eta2, ref.eta2)});
    }
    lines.push_back(check("smallsignal.linear-pair", worst, 1e-8));
  }
  return lines;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Maximal-coherence frequency conversion toolkit"};
  app.require_subcommand(1);
  Options o;
  struct Sub {
    const char* name;
    const char* help;
  };
  const Sub subs[] = {
      {"scrap", "Coherence preparation trajectory"},
      {"undepleted", "Small-signal idler and signal growth"},
      {"propagate", "Closed-form conversion against an oracle"},
      {"grid", "J(z, tau) grid, efficiency and metadata"},
      {"efficiency", "Conversion efficiency W(z)"},
      {"phase-match", "Phase-matching windows along the pulse"},
      {"selftest", "Fast invariant checks"},
  };
  std::vector<CLI::App*> cmds;
  for (const auto& s : subs) {
    auto* sub = app.add_subcommand(s.name, s.help);
    add_common(sub, o);
    cmds.push_back(sub);
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }
  try {
    if (cmds[0]->parsed()) return cmd_scrap(o, out);
    if (cmds[1]->parsed()) return cmd_undepleted(o, out);
    if (cmds[2]->parsed()) return cmd_propagate(o, out);
    if (cmds[3]->parsed()) return cmd_grid(o, out, true);
    if (cmds[4]->parsed()) return cmd_grid(o, out, false);
    if (cmds[5]->parsed()) return cmd_phase_match(o, out);
    return cmd_selftest(o, out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const fs::filesystem_error& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const Error& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
}

}  // namespace maxcoh::cli
