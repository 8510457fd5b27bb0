#include "maxcoh/core_model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "maxcoh/errors.hpp"

namespace maxcoh {

namespace {

constexpr double kSpeedOfLightNmPerS = 2.99792458e17;

double newton_polish(double x, double a, double b, double c, double d) {
  auto f = [&](double t) { return ((a * t + b) * t + c) * t + d; };
  auto df = [&](double t) { return (3.0 * a * t + 2.0 * b) * t + c; };
  for (int it = 0; it < 3; ++it) {
    const double fx = f(x);
    const double dfx = df(x);
    if (dfx == 0.0 || fx == 0.0) break;
    const double next = x - fx / dfx;
    if (!(std::abs(f(next)) < std::abs(fx))) break;
    x = next;
  }
  return x;
}

std::vector<double> solve_quadratic(double a, double b, double c) {
  if (a == 0.0) {
    if (b == 0.0) return {};
    return {-c / b};
  }
  const double disc = b * b - 4.0 * a * c;
  if (disc < 0.0) return {};
  const double sq = std::sqrt(disc);
  const double qv = -0.5 * (b + std::copysign(sq, b));
  std::vector<double> roots;
  if (qv != 0.0) {
    roots.push_back(qv / a);
    roots.push_back(c / qv);
  } else {
    roots.push_back(0.0);
    roots.push_back(0.0);
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace

void AtomicParams::validate() const {
  if (!(mu1 > 0.0) || !(mu2 > 0.0) || !(mu3 > 0.0)) {
    throw DomainError("coupling constants mu1, mu2, mu3 must be positive");
  }
  if (!(density > 0.0)) throw DomainError("density must be positive");
  if (delta30 == 0.0) throw DomainError("delta30 must be non-zero");
}

bool AtomicParams::multiphoton_resonant() const {
  if (lambda1_nm <= 0.0 || lambda2_nm <= 0.0 || lambda3_nm <= 0.0) return false;
  const double k3 = 1.0 / lambda3_nm;
  const double k3_res = 2.0 / lambda1_nm - 1.0 / lambda2_nm;
  return std::abs(k3 - k3_res) / k3 < 1e-3;
}

bool AtomicParams::rwa_valid() const {
  return std::min(mu2, mu3) / mu1 > 10.0 * std::abs(delta30);
}

double AtomicParams::omega1() const {
  return 2.0 * std::numbers::pi * kSpeedOfLightNmPerS / lambda1_nm;
}

double AtomicParams::omega2() const {
  return 2.0 * std::numbers::pi * kSpeedOfLightNmPerS / lambda2_nm;
}

double AtomicParams::omega3() const { return 2.0 * omega1() - omega2(); }

AtomicParams kr_preset() {
  AtomicParams p;
  p.mu1 = 1.8e-16;
  p.mu2 = 3.507e-2;
  p.mu3 = 0.441e-2;
  p.beta21 = 3.7e-17;
  p.beta22 = 2.2e-17;
  p.beta23 = 6.4e-17;
  p.dk_over_n = 4.8e-17;
  p.lambda1_nm = 212.55;
  p.lambda2_nm = 759.0;
  p.lambda3_nm = 123.6;
  p.delta30 = p.mu2 / (2.0 * p.mu1 * 20.0);
  p.delta20 = 0.0;
  p.density = 1e13;
  return p;
}

double rabi_two_photon(const AtomicParams& p, double eta1) {
  if (eta1 < 0.0) throw DomainError("rabi_two_photon: negative photon flux");
  return p.mu1 * eta1;
}

double rabi_single_photon(double mu, double eta) {
  if (mu < 0.0 || eta < 0.0) throw DomainError("rabi_single_photon: negative input");
  return std::sqrt(mu * eta);
}

double detuning(const AtomicParams& p, int level, double stark_shift, const FieldPoint& f) {
  switch (level) {
    case 2:
      return p.delta20 + stark_shift + p.beta21 * f.eta1 + p.beta22 * f.eta2 + p.beta23 * f.eta3;
    case 3:
      return p.delta30 + stark_shift + p.beta31 * f.eta1 + p.beta32 * f.eta2 + p.beta33 * f.eta3;
    default:
      throw DomainError("detuning: level index must be 2 or 3");
  }
}

std::vector<double> solve_cubic(double a, double b, double c, double d) {
  const double scale = std::max({std::abs(b), std::abs(c), std::abs(d)});
  if (a == 0.0) return solve_quadratic(b, c, d);
  // A tiny leading coefficient is dropped only if a x^3 is negligible at every
  // quadratic root; large coefficients alone say nothing about the roots.
  if (std::abs(a) <= 1e-14 * scale) {
    auto q = solve_quadratic(b, c, d);
    const bool negligible = !q.empty() && std::all_of(q.begin(), q.end(), [&](double x) {
      return std::abs(a * x * x * x) <= 1e-15 * (std::abs(b * x * x) + std::abs(c * x) + std::abs(d));
    });
    if (negligible) {
      for (double& x : q) x = newton_polish(x, a, b, c, d);
      return q;
    }
  }

  const double B = b / a;
  const double C = c / a;
  const double D = d / a;
  // Depressed cubic t^3 + P t + Q with x = t - B/3.
  const double P = C - B * B / 3.0;
  const double Q = 2.0 * B * B * B / 27.0 - B * C / 3.0 + D;
  const double half_q = 0.5 * Q;
  const double third_p = P / 3.0;
  const double disc = half_q * half_q + third_p * third_p * third_p;
  const double disc_scale = half_q * half_q + std::abs(third_p * third_p * third_p);

  std::vector<double> roots;
  if (disc > 1e-14 * disc_scale) {
    const double u = std::cbrt(-half_q - std::copysign(std::sqrt(disc), half_q));
    const double t = (u != 0.0) ? u - third_p / u : 0.0;
    roots.push_back(t - B / 3.0);
  } else if (P == 0.0) {
    roots.assign(3, -B / 3.0);
  } else {
    const double r = 2.0 * std::sqrt(-third_p);
    const double arg = std::clamp(-half_q / std::sqrt(-third_p * third_p * third_p), -1.0, 1.0);
    const double theta = std::acos(arg) / 3.0;
    for (int k = 0; k < 3; ++k) {
      roots.push_back(r * std::cos(theta - 2.0 * std::numbers::pi * k / 3.0) - B / 3.0);
    }
    // acos near +-1 smears the small roots by ~sqrt(eps) times the large one;
    // recover them from the product and pair-sum relations instead.
    std::sort(roots.begin(), roots.end(), [](double x, double y) { return std::abs(x) > std::abs(y); });
    const double big = newton_polish(roots[0], a, b, c, d);
    if (big != 0.0) {
      const double prod = -D / big;
      const double sum = (C - prod) / big;
      auto rest = solve_quadratic(1.0, -sum, prod);
      if (rest.size() == 2) roots = {big, rest[0], rest[1]};
    }
  }
  for (double& x : roots) x = newton_polish(x, a, b, c, d);
  std::sort(roots.begin(), roots.end());
  return roots;
}

double characteristic_polynomial(double lambda, double d2, double d3, double om1, double om2,
                                 double om3, double phi) {
  const double sum_sq = om1 * om1 + om2 * om2 + om3 * om3;
  return lambda * (d2 + lambda) * (d3 + lambda) - sum_sq * lambda - om1 * om1 * d3 -
         om3 * om3 * d2 + 2.0 * om1 * om2 * om3 * std::cos(phi);
}

std::vector<double> eigenvalue_cubic(double d2, double d3, double om1, double om2, double om3,
                                     double phi) {
  if (om1 < 0.0 || om2 < 0.0 || om3 < 0.0) {
    throw DomainError("eigenvalue_cubic: Rabi frequencies must be non-negative");
  }
  const double sum_sq = om1 * om1 + om2 * om2 + om3 * om3;
  const double c1 = d2 + d3;
  const double c2 = d2 * d3 - sum_sq;
  const double c3 = -om1 * om1 * d3 - om3 * om3 * d2 + 2.0 * om1 * om2 * om3 * std::cos(phi);
  return solve_cubic(1.0, c1, c2, c3);
}

DressedState dressed_state(double d2, double om1) {
  if (om1 < 0.0) throw DomainError("dressed_state: negative Rabi frequency");
  if (om1 == 0.0) {
    if (d2 <= 0.0) {
      throw SingularConfiguration("dressed_state: adiabatic state undefined for Omega1 = 0, Delta2 <= 0");
    }
    return DressedState{0.0, 1.0, 0.0, 0.0};
  }
  const double r = std::hypot(d2, 2.0 * om1);
  DressedState s;
  double c1sq = 0.0;
  double c2sq = 0.0;
  // Pick the cancellation-free form of each quantity.
  if (d2 >= 0.0) {
    s.lambda0 = 2.0 * om1 * om1 / (d2 + r);
    c2sq = 2.0 * om1 * om1 / (r * (r + d2));
    c1sq = 1.0 - c2sq;
  } else {
    s.lambda0 = 0.5 * (r - d2);
    c1sq = 2.0 * om1 * om1 / (r * (r - d2));
    c2sq = 1.0 - c1sq;
  }
  s.c1 = std::sqrt(c1sq);
  s.c2 = -std::sqrt(c2sq);
  s.rho12 = om1 / r;
  return s;
}

}  // namespace maxcoh
