#include "maxcoh/phasematch.hpp"

#include <algorithm>
#include <cmath>

#include "maxcoh/errors.hpp"

namespace maxcoh::phasematch {

double MatchWindows::q_of(double yy, const AtomicParams& p) const {
  if (p.delta30 == 0.0) throw DomainError("q_of: delta30 must be non-zero");
  return yy * std::sqrt(p.mu2 * p.mu3) / p.delta30;
}

MatchWindows windows(double m, double d2) {
  if (!(m > 0.0)) throw DomainError("windows: m must be positive");
  if (!std::isfinite(d2)) throw DomainError("windows: d2 must be finite");
  MatchWindows w;
  w.m = m;
  w.d2 = d2;
  const double sm = std::sqrt(m);
  const double root = std::sqrt(1.0 + d2 * d2);
  w.y0 = -(1.0 - m) / (2.0 * sm) * d2 / root - (1.0 + m) / (2.0 * sm);
  w.y1 = w.y0 - 1.0 / root;
  w.y2 = w.y0 + 1.0 / root;
  w.y3 = 0.0;
  w.y4 = -(1.0 + m) / sm;
  return w;
}

MatchWindows windows(const AtomicParams& p, double delta2, double eta10) {
  p.validate();
  if (!(eta10 > 0.0)) throw DomainError("windows: eta10 must be positive");
  const double d2 = p.beta21 / (2.0 * p.mu1) + delta2 / (2.0 * p.mu1 * eta10);
  MatchWindows w = windows(p.mu2 / p.mu3, d2);
  w.y = p.q() * p.delta30 / std::sqrt(p.mu2 * p.mu3);
  w.kerr_halfwidth = 2.0 * p.mu1 * std::abs(p.delta30) / (p.mu2 + p.mu3);
  return w;
}

JointReport joint_compensation_check(const AtomicParams& p, double delta2, double eta10,
                                     double tol) {
  const MatchWindows w = windows(p, delta2, eta10);
  JointReport r;
  r.d2 = w.d2;
  r.d2_required = (1.0 - w.m) / (2.0 * std::sqrt(w.m));
  r.y1 = w.y1;
  r.y4 = w.y4;
  r.gap = w.y1 - w.y4;
  r.y_required = w.y4;
  r.condition_holds = std::abs(r.d2 - r.d2_required) <= tol * std::max(1.0, std::abs(r.d2_required));
  r.verdict = r.condition_holds
                  ? "jointly compensable only at this instant, with y at y1 = y4 (window edge, small x1)"
                  : "not jointly compensable: linear and Kerr windows do not overlap";
  return r;
}

int condition_crossings(const std::vector<double>& d2_series, double d2_required) {
  int count = 0;
  double prev = 0.0;
  bool have_prev = false;
  for (const double d : d2_series) {
    if (!std::isfinite(d)) continue;
    const double s = d - d2_required;
    if (s == 0.0) continue;
    if (have_prev && (s > 0.0) != (prev > 0.0)) ++count;
    prev = s;
    have_prev = true;
  }
  return count;
}

}  // namespace maxcoh::phasematch
