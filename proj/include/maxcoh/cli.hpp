#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace maxcoh::cli {

// Exit codes: 0 success, 2 configuration error, 3 numerical failure.
constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

struct SelftestLine {
  std::string name;
  bool pass = false;
  double value = 0.0;      // measured worst case
  double threshold = 0.0;  // bound it is compared with
};

// Fast invariant checks driven by a seed; shared by `selftest` and the bindings.
[[nodiscard]] std::vector<SelftestLine> run_selftest(unsigned seed);

}  // namespace maxcoh::cli
