#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "maxcoh/config.hpp"
#include "maxcoh/errors.hpp"
#include "maxcoh/experiments.hpp"

using namespace maxcoh;
using namespace maxcoh::experiments;
using namespace maxcoh::config;

namespace {

std::vector<std::string> pulse_presets() {
  std::vector<std::string> out;
  for (const auto& n : preset_names()) {
    if (!figure_preset(n).reduced) out.push_back(n);
  }
  return out;
}

double max_w(const ExperimentConfig& c) {
  const auto w = efficiency_curve(grid_simulate(c));
  return *std::max_element(w.begin(), w.end());
}

double max_jump(const std::vector<double>& w) {
  double j = 0.0;
  for (std::size_t i = 1; i < w.size(); ++i) j = std::max(j, std::abs(w[i] - w[i - 1]));
  return j;
}

RunConfig parse(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in, "cfg");
}

}  // namespace

TEST_CASE("presets: every name resolves and validates") {
  for (const auto& n : preset_names()) {
    const auto c = figure_preset(n);
    CHECK(c.name == n);
    CHECK_NOTHROW(c.validate());
  }
  CHECK_THROWS_AS((void)figure_preset("fig9"), ConfigError);
  CHECK(figure_preset("fig6").pulses.delta20 == -5.0);
  CHECK(figure_preset("fig4").pulses.idler_center == -1.0);
  CHECK(figure_preset("fig7-late").pulses.idler_center == 1.0);
  const auto dotted = figure_preset("fig5-dotted");
  REQUIRE(dotted.reduced);
  CHECK(dotted.reduced->b2 == 8.0);
  CHECK(dotted.reduced->s_override.value() == 5.0);
  CHECK_THROWS_AS((void)grid_simulate(dotted), ConfigError);
}

TEST_CASE("efficiency stays in [0, 1] and the grid is finite") {
  for (const auto& n : pulse_presets()) {
    auto c = figure_preset(n);
    c.nz = 120;
    c.ntau = 120;
    const auto g = grid_simulate(c);
    CHECK(g.flagged == 0);
    for (double v : g.J) CHECK((std::isfinite(v) && v >= 0.0));
    for (double w : efficiency_curve(g)) {
      CHECK(w >= 0.0);
      CHECK(w <= 1.0);
    }
  }
}

TEST_CASE("grid refinement moves the efficiency peak by less than 1%") {
  for (const auto& n : pulse_presets()) {
    auto c = figure_preset(n);
    c.nz = 400;
    c.ntau = 400;
    const double fine = max_w(c);
    c.nz = 200;
    c.ntau = 200;
    const double coarse = max_w(c);
    INFO(n);
    CHECK(std::abs(fine - coarse) < 0.01 * fine);
  }
}

TEST_CASE("efficiency is continuous in z") {
  auto c = figure_preset("fig7");
  c.ntau = 100;
  c.nz = 200;
  const double coarse = max_jump(efficiency_curve(grid_simulate(c)));
  c.nz = 400;
  const double fine = max_jump(efficiency_curve(grid_simulate(c)));
  CHECK(fine < 0.6 * coarse);
}

TEST_CASE("identical configurations give identical grids") {
  const auto c = figure_preset("fig6");
  const auto a = grid_simulate(c);
  const auto b = grid_simulate(c);
  REQUIRE(a.J.size() == b.J.size());
  CHECK(std::equal(a.J.begin(), a.J.end(), b.J.begin()));
}

TEST_CASE("a tau slice does not depend on its neighbours") {
  auto c = figure_preset("fig7");
  c.nz = 50;
  c.ntau = 61;
  const auto full = grid_simulate(c);
  auto sub = c;
  sub.tau_min = full.tau[40];
  sub.tau_max = full.tau[20];
  std::swap(sub.tau_min, sub.tau_max);  // tau[20] .. tau[40]
  sub.ntau = 21;
  const auto part = grid_simulate(sub);
  for (std::size_t it = 0; it < 21; ++it) {
    REQUIRE(part.tau[it] == doctest::Approx(full.tau[20 + it]).epsilon(1e-14));
    for (std::size_t iz = 0; iz < c.nz; ++iz) {
      CHECK(part.at(iz, it) == doctest::Approx(full.at(iz, 20 + it)).epsilon(1e-9));
    }
  }
}

TEST_CASE("config: keys, comments and preset ordering") {
  const auto rc = parse(
      "# comment\n"
      "grid_nz = 64\n"
      "\n"
      "convention = manley-rowe  # trailing\n"
      "preset = fig6\n"
      "stark_peak = 12.5\n");
  CHECK(rc.exp.name == "fig6");
  CHECK(rc.exp.nz == 64);
  CHECK(rc.exp.convention == propagation::Convention::ManleyRowe);
  CHECK(rc.exp.pulses.stark_peak == 12.5);
  CHECK(rc.exp.pulses.delta20 == -5.0);

  const auto red = parse("b1 = 0.2\nb2 = 3\nratio = 0.001\n");
  REQUIRE(red.exp.reduced);
  CHECK(red.exp.ntau == 1);
  CHECK(red.exp.reduced->b2 == 3.0);
}

TEST_CASE("config: errors carry the line number") {
  auto message = [](const std::string& text) {
    try {
      (void)parse(text);
    } catch (const ConfigError& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  CHECK(message("grid_nz = 10\nbogus = 1\n").find("cfg:2") != std::string::npos);
  CHECK(message("grid_nz = 10\nbogus = 1\n").find("bogus") != std::string::npos);
  CHECK(message("\n\nz_max = fast\n").find("cfg:3") != std::string::npos);
  CHECK(message("no equals sign\n").find("cfg:1") != std::string::npos);
  CHECK(message("grid_nz = -4\n").find("cfg:1") != std::string::npos);
  CHECK(message("convention = sideways\n").find("cfg:1") != std::string::npos);
  CHECK(message("grid_nz = 1\n").find("grid_nz") != std::string::npos);
  CHECK_THROWS_AS((void)load_config("/nonexistent/run.cfg"), ConfigError);
}

TEST_CASE("config: every documented key is accepted") {
  std::istringstream keys(describe_keys());
  std::string key;
  int seen = 0;
  while (std::getline(keys, key)) {
    RunConfig rc;
    std::string value = "0.5";
    if (key == "preset") value = "fig3";
    else if (key == "convention") value = "as-printed";
    else if (key == "oracle") value = "none";
    else if (key == "name") value = "x";
    else if (key == "grid_nz" || key == "grid_ntau") value = "8";
    INFO(key);
    CHECK_NOTHROW(apply_key(rc, key, value));
    ++seen;
  }
  CHECK(seen >= 40);
}
