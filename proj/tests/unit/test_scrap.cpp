#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "common.hpp"
#include "maxcoh/errors.hpp"
#include "maxcoh/experiments.hpp"
#include "maxcoh/scrap.hpp"

using namespace maxcoh;

namespace {
scrap::PulseConfig preset_pulses(const char* name) { return experiments::figure_preset(name).pulses; }
}  // namespace

TEST_CASE("gaussian envelope") {
  CHECK(scrap::gaussian_envelope(0.3, 2.0, 0.3, 0.7) == doctest::Approx(2.0));
  CHECK(scrap::gaussian_envelope(1.0, 1.0, 0.0, 1.0) == doctest::Approx(std::exp(-1.0)));
  CHECK(scrap::gaussian_envelope(-1.7, 1.0, 0.0, 2.0) ==
        doctest::Approx(scrap::gaussian_envelope(1.7, 1.0, 0.0, 2.0)));
}

TEST_CASE("drive derivatives match finite differences") {
  const auto p = experiments::figure_atoms();
  const auto cfg = preset_pulses("fig2");
  maxcoh::test::Rng g(31);
  for (int i = 0; i < 100; ++i) {
    const double t = g.uniform(-3.0, 3.0);
    const double h = 1e-5;
    const auto s = scrap::drive_at(p, cfg, t);
    const auto lo = scrap::drive_at(p, cfg, t - h);
    const auto hi = scrap::drive_at(p, cfg, t + h);
    const double scale = cfg.omega10m_t1;
    CHECK(std::abs((hi.omega1 - lo.omega1) / (2 * h) - s.d_omega1) < 1e-6 * scale);
    CHECK(std::abs((hi.delta2 - lo.delta2) / (2 * h) - s.d_delta2) < 1e-6 * scale);
  }
}

TEST_CASE("tdse oracle conserves the norm") {
  const auto p = experiments::figure_atoms();
  const auto grid = scrap::uniform_grid(-4.0, 4.0, 801);
  for (const char* name : {"fig2", "fig3"}) {
    const auto tr = scrap::tdse_oracle(p, preset_pulses(name), grid);
    double worst = 0.0;
    for (std::size_t i = 0; i < tr.size(); ++i) worst = std::max(worst, std::abs(tr.pop1[i] + tr.pop2[i] - 1.0));
    CHECK(worst < 1e-8);
  }
}

TEST_CASE("full scrap transfers the population, half scrap parks at maximal coherence") {
  const auto p = experiments::figure_atoms();
  const auto grid = scrap::default_grid();
  const auto full = scrap::adiabatic_trajectory(p, preset_pulses("fig2"), grid);
  CHECK(full.pop2.back() > 0.999);
  const auto half = scrap::adiabatic_trajectory(p, preset_pulses("fig3"), grid);
  CHECK(half.rho12.back() == doctest::Approx(0.5).epsilon(0.01));
  for (std::size_t i = 0; i < half.size(); ++i) {
    CHECK(std::abs(half.pop1[i] + half.pop2[i] - 1.0) < 1e-12);
    CHECK(half.rho12[i] <= 0.5 + 1e-12);
  }
}

TEST_CASE("adiabatic populations follow the exact evolution for a slow pulse") {
  const auto p = experiments::figure_atoms();
  const auto grid = scrap::uniform_grid(-4.0, 4.0, 801);
  const auto cfg = preset_pulses("fig3");
  const auto ad = scrap::adiabatic_trajectory(p, cfg, grid);
  const auto ex = scrap::tdse_oracle(p, cfg, grid);
  double worst = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) worst = std::max(worst, std::abs(ad.pop2[i] - ex.pop2[i]));
  CHECK(worst < 0.01);
}

TEST_CASE("adiabaticity margin tracks the pulse area") {
  const auto p = experiments::figure_atoms();
  auto cfg = preset_pulses("fig3");
  CHECK(scrap::adiabaticity_margin(p, cfg) > 10.0);
  cfg.omega10m_t1 = 0.1;
  CHECK(scrap::adiabaticity_margin(p, cfg) < 1.0);
  // the margin scales linearly with Omega10m T1
  cfg.omega10m_t1 = 10.0;
  const double m10 = scrap::adiabaticity_margin(p, cfg);
  cfg.omega10m_t1 = 40.0;
  CHECK(scrap::adiabaticity_margin(p, cfg) == doctest::Approx(4.0 * m10).epsilon(1e-9));
}

TEST_CASE("time reversal of the envelopes mirrors the drive") {
  const auto p = experiments::figure_atoms();
  auto fwd = preset_pulses("fig6");
  auto rev = fwd;
  rev.stark_center = -fwd.stark_center;
  rev.idler_center = -fwd.idler_center;
  maxcoh::test::Rng g(32);
  for (int i = 0; i < 100; ++i) {
    const double t = g.uniform(-4.0, 4.0);
    const auto a = scrap::drive_at(p, fwd, t);
    const auto b = scrap::drive_at(p, rev, -t);
    CHECK(a.omega1 == doctest::Approx(b.omega1).epsilon(1e-14));
    CHECK(a.delta2 == doctest::Approx(b.delta2).epsilon(1e-12));
    CHECK(a.d_omega1 == doctest::Approx(-b.d_omega1).epsilon(1e-12));
    CHECK(scrap::local_margin(a) == doctest::Approx(scrap::local_margin(b)).epsilon(1e-10));
  }
}

TEST_CASE("pulse validation and grids") {
  scrap::PulseConfig c;
  c.idler_width = 0.0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  CHECK_THROWS_AS((void)scrap::uniform_grid(1.0, 0.0, 10), DomainError);
  const auto g = scrap::default_grid();
  CHECK(g.size() == 2001);
  CHECK(g.front() == -4.0);
  CHECK(g.back() == 4.0);
}

TEST_CASE("coherence peaks where the populations cross") {
  const auto p = experiments::figure_atoms();
  const auto grid = scrap::default_grid();
  const auto tr = scrap::adiabatic_trajectory(p, preset_pulses("fig2"), grid);
  std::size_t arg_rho = 0, arg_cross = 0;
  for (std::size_t i = 0; i < tr.size(); ++i) {
    if (tr.rho12[i] > tr.rho12[arg_rho]) arg_rho = i;
    if (std::abs(tr.pop1[i] - tr.pop2[i]) < std::abs(tr.pop1[arg_cross] - tr.pop2[arg_cross])) arg_cross = i;
  }
  CHECK(arg_rho == arg_cross);
  CHECK(tr.rho12[arg_rho] == doctest::Approx(0.5).epsilon(1e-4));
}
