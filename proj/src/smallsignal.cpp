#include "maxcoh/smallsignal.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "maxcoh/errors.hpp"

namespace maxcoh::smallsignal {

namespace {

constexpr double kMarginalTol = 1e-8;

// R = 2 lambda + Delta2 = sqrt(Delta2^2 + 4 Omega1^2) and lambda for the pump-dressed state.
struct PumpDressing {
  double big_r = 0.0;
  double lambda = 0.0;
  double d2 = 0.0;
};

PumpDressing pump_dressing(const AtomicParams& p, double eta10, double delta2) {
  if (eta10 < 0.0) throw DomainError("pump flux must be non-negative");
  PumpDressing d;
  d.d2 = delta2 + p.beta21 * eta10;
  const DressedState ds = dressed_state(d.d2, p.mu1 * eta10);
  d.lambda = ds.lambda0;
  d.big_r = std::hypot(d.d2, 2.0 * p.mu1 * eta10);
  return d;
}

}  // namespace

double kappa_coherent(const AtomicParams& p, double rho12, double delta3) {
  if (delta3 == 0.0) throw DomainError("kappa_coherent: Delta3 must be non-zero");
  return 0.5 * p.density * std::sqrt(p.mu2 * p.mu3) / delta3 * rho12;
}

double kappa_coherent(const AtomicParams& p, double rho12) {
  return kappa_coherent(p, rho12, p.delta30);
}

double dkprime_total(const AtomicParams& p, double c1sq, double c2sq, double delta3) {
  if (delta3 == 0.0) throw DomainError("dkprime_total: Delta3 must be non-zero");
  return p.dk() + 0.5 * p.density * (p.mu3 * c1sq + p.mu2 * c2sq) / delta3;
}

double dkprime_total(const AtomicParams& p, double c1sq, double c2sq) {
  return dkprime_total(p, c1sq, c2sq, p.delta30);
}

SmallSignalSetup make_setup(const AtomicParams& p, double eta10, double eta20, double delta2) {
  if (eta20 < 0.0) throw DomainError("make_setup: eta20 must be non-negative");
  SmallSignalSetup s;
  s.params = p;
  s.eta10 = eta10;
  s.eta20 = eta20;
  s.delta2 = delta2;
  s.delta3 = p.delta30;
  const DressedState ds = dressed_state(delta2 + p.beta21 * eta10, p.mu1 * eta10);
  s.rho12 = ds.rho12;
  s.c1sq = ds.c1 * ds.c1;
  s.c2sq = ds.c2 * ds.c2;
  s.kappa = kappa_coherent(p, s.rho12, s.delta3);
  s.dkprime = dkprime_total(p, s.c1sq, s.c2sq, s.delta3);
  return s;
}

SmallSignalRegime classify(double kappa, double dkprime) {
  if (kappa == 0.0) return dkprime == 0.0 ? SmallSignalRegime::Marginal : SmallSignalRegime::Oscillating;
  const double rr = dkprime / (2.0 * kappa);
  const double d = 1.0 - rr * rr;
  if (std::abs(d) < kMarginalTol) return SmallSignalRegime::Marginal;
  return d > 0.0 ? SmallSignalRegime::Gain : SmallSignalRegime::Oscillating;
}

SignalPair undepleted_coherence_solution(double eta20, double kappa, double dkprime, double z) {
  if (z < 0.0) throw DomainError("undepleted_coherence_solution: z must be non-negative");
  if (eta20 < 0.0) throw DomainError("undepleted_coherence_solution: eta20 must be non-negative");
  SignalPair out{eta20, 0.0};
  if (kappa == 0.0) return out;
  const double k = std::abs(kappa);
  const double rr = dkprime / (2.0 * k);
  const double d = 1.0 - rr * rr;
  if (std::abs(d) < kMarginalTol) {
    out.eta3 = eta20 * (k * z) * (k * z);
  } else if (d > 0.0) {
    const double sh = std::sinh(k * std::sqrt(d) * z);
    out.eta3 = eta20 * sh * sh / d;
  } else {
    const double sn = std::sin(k * std::sqrt(-d) * z);
    out.eta3 = eta20 * sn * sn / (-d);
  }
  out.eta2 = eta20 + out.eta3;
  return out;
}

SignalPair undepleted_coherence_solution(const SmallSignalSetup& s, double z) {
  return undepleted_coherence_solution(s.eta20, s.kappa, s.dkprime, z);
}

double oscillation_amplitude(double eta20, double kappa, double dkprime) {
  const double four_k2 = 4.0 * kappa * kappa;
  const double dk2 = dkprime * dkprime;
  if (classify(kappa, dkprime) != SmallSignalRegime::Oscillating) {
    return std::numeric_limits<double>::infinity();
  }
  return eta20 * four_k2 / (dk2 - four_k2);
}

double pump_kappa(const AtomicParams& p, double eta10, double delta2) {
  const PumpDressing d = pump_dressing(p, eta10, delta2);
  if (d.big_r == 0.0) throw SingularConfiguration("pump_kappa: vanishing dressed-state splitting");
  return kappa0(p) * p.mu1 * eta10 / d.big_r;
}

double pump_dkprime(const AtomicParams& p, double eta10, double delta2) {
  const PumpDressing d = pump_dressing(p, eta10, delta2);
  if (d.big_r == 0.0) throw SingularConfiguration("pump_dkprime: vanishing dressed-state splitting");
  const double a1 = -p.q() * p.delta30 * d.big_r - p.mu2 * d.lambda - p.mu3 * (d.lambda + d.d2);
  const double a0 = p.delta30 * d.big_r;
  return -0.5 * p.density * a1 / a0;
}

double undepleted_pump_solution(const AtomicParams& p, double eta10, double eta20, double delta2,
                                double z) {
  return undepleted_coherence_solution(eta20, pump_kappa(p, eta10, delta2),
                                       pump_dkprime(p, eta10, delta2), z)
      .eta3;
}

double phase_match_required_dk(const AtomicParams& p, double delta2, double eta10) {
  if (p.delta30 == 0.0) throw DomainError("phase_match_required_dk: delta30 must be non-zero");
  const PumpDressing d = pump_dressing(p, eta10, delta2);
  if (d.big_r == 0.0) {
    throw SingularConfiguration("phase_match_required_dk: vanishing dressed-state splitting");
  }
  return -(p.mu2 * d.lambda + p.mu3 * (d.lambda + d.d2)) / (p.delta30 * d.big_r);
}

double phase_match_early(const AtomicParams& p) {
  if (p.delta30 == 0.0) throw DomainError("phase_match_early: delta30 must be non-zero");
  return -p.mu3 / p.delta30;
}

double phase_match_max_coherence(const AtomicParams& p) {
  if (p.delta30 == 0.0) throw DomainError("phase_match_max_coherence: delta30 must be non-zero");
  const double root = std::hypot(p.beta21, 2.0 * p.mu1);
  return -(0.5 * (p.mu2 + p.mu3) + 0.5 * (p.mu3 - p.mu2) * p.beta21 / root) / p.delta30;
}

double kappa0(const AtomicParams& p) {
  if (p.delta30 == 0.0) throw DomainError("kappa0: delta30 must be non-zero");
  return 0.5 * p.density * std::sqrt(p.mu2 * p.mu3) / p.delta30;
}

double kappa1(const AtomicParams& p, double eta10, double delta2) {
  if (delta2 == 0.0) throw DomainError("kappa1: delta2 must be non-zero");
  return kappa0(p) * p.mu1 * eta10 / delta2;
}

double kappa2(const AtomicParams& p) {
  return kappa0(p) * p.mu1 / std::hypot(p.beta21, 2.0 * p.mu1);
}

double compensation_angle(double dk, double lambda2_nm) {
  if (!(lambda2_nm > 0.0)) throw DomainError("compensation_angle: wavelength must be positive");
  const double k2 = 2.0 * std::numbers::pi / (lambda2_nm * 1e-7);
  const double half = std::abs(dk) / (2.0 * k2);  // sin^2(theta / 2)
  if (half > 1.0) throw DomainError("compensation_angle: mismatch exceeds 2 k2");
  return 2.0 * std::asin(std::sqrt(half));
}

}  // namespace maxcoh::smallsignal
