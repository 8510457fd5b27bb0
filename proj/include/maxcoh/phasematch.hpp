#pragma once

// Phase-matching windows in the tuning parameter y = q delta30 / sqrt(mu2 mu3).

#include <string>
#include <vector>

#include "maxcoh/core_model.hpp"

namespace maxcoh::phasematch {

struct MatchWindows {
  double y = 0.0;   // from the current q
  double y0 = 0.0;  // b1 = 0
  double y1 = 0.0;  // b1 = +1 edge
  double y2 = 0.0;  // b1 = -1 edge
  double y3 = 0.0;  // Kerr window near q = 0
  double y4 = 0.0;  // Kerr window near q delta30 = -(mu2 + mu3)
  double m = 0.0;   // mu2 / mu3
  double d2 = 0.0;  // beta21/(2 mu1) + delta2/(2 mu1 eta10)
  double kerr_halfwidth = 0.0;  // 2 mu1 delta30 / (mu2 + mu3)

  [[nodiscard]] bool in_linear_window() const { return y > y1 && y < y2; }
  [[nodiscard]] double width() const { return y2 - y1; }
  // q corresponding to a given y.
  [[nodiscard]] double q_of(double yy, const AtomicParams& p) const;
};

// Windows from (m, d2) alone; y left at 0.
[[nodiscard]] MatchWindows windows(double m, double d2);
// Windows at pump flux eta10 and detuning delta2; y from p.q(). Requires eta10 > 0.
[[nodiscard]] MatchWindows windows(const AtomicParams& p, double delta2, double eta10);

struct JointReport {
  double d2 = 0.0;
  double d2_required = 0.0;  // (1 - m) / (2 sqrt m)
  bool condition_holds = false;
  double y_required = 0.0;  // y1 = y4 at that instant
  double y1 = 0.0;
  double y4 = 0.0;
  double gap = 0.0;  // y1 - y4 >= 0
  std::string verdict;
};

// Simultaneous b1^2 < 1 and b2^2 < 1 needs d2 = (1 - m)/(2 sqrt m), checked
// with a relative tolerance (default 1e-3).
[[nodiscard]] JointReport joint_compensation_check(const AtomicParams& p, double delta2,
                                                   double eta10, double tol = 1e-3);

// Number of sign changes of d2(tau) - d2_required along a sampled trajectory.
[[nodiscard]] int condition_crossings(const std::vector<double>& d2_series, double d2_required);

}  // namespace maxcoh::phasematch
