#include "maxcoh/propagation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "maxcoh/elliptic.hpp"
#include "maxcoh/errors.hpp"
#include "maxcoh/smallsignal.hpp"

namespace maxcoh::propagation {

namespace {

using elliptic::EllipticModulus;

constexpr double kHalfPi = 0.5 * std::numbers::pi;

bool near_boundary(double b1, double b2, Convention conv) {
  const double k = depletion_factor(conv);
  return std::abs(b1 * b1 - 1.0) < kBoundaryTol || std::abs(b2 * b2 - k * k) < kBoundaryTol * k * k;
}

void fill_closed_form(PropagationCoefficients& c) {
  double b1 = c.b1;
  double b2 = c.b2;
  c.flipped = depletion_factor(c.convention) * b1 + b2 < 0.0;
  if (c.flipped) {
    b1 = -b1;
    b2 = -b2;
  }
  c.regime = classify(b1, b2, c.convention);
  c.boundary = near_boundary(b1, b2, c.convention);
  if (c.boundary) {
    c.x = Roots{};
    c.p = c.n = c.kappa_prime = std::numeric_limits<double>::quiet_NaN();
    return;
  }
  c.x = roots(b1, b2, c.ratio, c.convention);
  const double x1 = c.x.x1;
  const double x2 = c.x.x2;
  const double ax3 = std::abs(c.x.x3);
  c.s = 1.0;
  switch (c.regime) {
    case Regime::A:
      c.p = std::sqrt(x1 * (x2 + ax3) / (x2 * (x1 + ax3)));
      c.n = x1 / (x1 + ax3);
      break;
    case Regime::B:
      c.p = std::sqrt(x1 * (std::abs(x2) - ax3) / (std::abs(x2) * (x1 + ax3)));
      c.n = -x1 / std::abs(x2);
      c.s = std::abs(1.0 + c.alpha / std::sqrt(-c.n));
      break;
    case Regime::C: {
      const double ax1 = std::abs(x1);
      if (x2 > 0.0) {
        c.p = std::sqrt(ax3 * (x2 + ax1) / (x2 * (ax3 + ax1)));
        c.n = ax3 / (ax3 + ax1);
      } else {
        c.p = std::sqrt(ax3 * (std::abs(x2) - ax1) / (std::abs(x2) * (ax3 + ax1)));
        c.n = -ax3 / std::abs(x2);
      }
      break;
    }
  }
  const double ax1 = std::abs(x1);
  c.kappa_prime = c.kp * std::sqrt(std::abs(1.0 - b1 * b1) * (1.0 + ax3 / ax1)) / c.s;
}

EllipticModulus modulus_of(const PropagationCoefficients& c) {
  const double ax3 = std::abs(c.x.x3);
  const double x1 = c.x.x1;
  const double ax2 = std::abs(c.x.x2);
  double kc2 = 0.0;
  if (c.regime == Regime::A) {
    kc2 = ax3 * (ax2 - x1) / (ax2 * (x1 + ax3));
  } else {
    kc2 = ax3 * (ax2 + x1) / (ax2 * (x1 + ax3));
  }
  return EllipticModulus{c.p, std::sqrt(std::max(kc2, 0.0))};
}

void require(const PropagationCoefficients& c, Regime r, const char* who) {
  if (c.boundary) throw RegimeBoundary(std::string(who) + ": configuration within 1e-6 of a regime boundary");
  if (c.regime != r) throw RegimeMismatch(std::string(who) + ": coefficients are in regime " + to_string(c.regime));
}

}  // namespace

std::string to_string(Convention c) {
  return c == Convention::AsPrinted ? "as-printed" : "manley-rowe";
}

std::string to_string(Regime r) {
  switch (r) {
    case Regime::A: return "A";
    case Regime::B: return "B";
    case Regime::C: return "C";
  }
  return "?";
}

Convention parse_convention(const std::string& s) {
  if (s == "as-printed") return Convention::AsPrinted;
  if (s == "manley-rowe") return Convention::ManleyRowe;
  throw ConfigError("unknown convention '" + s + "' (expected as-printed or manley-rowe)");
}

double fold_period(double z, double half) {
  if (!(half > 0.0) || !std::isfinite(half)) return z;
  const double m = std::fmod(z, 2.0 * half);
  return m <= half ? m : 2.0 * half - m;
}

double depletion_factor(Convention c) { return c == Convention::AsPrinted ? 1.0 : 2.0; }

double ReducedProblem::poly(double x) const {
  const double k = depletion_factor(convention);
  const double dep = 1.0 - k * x;
  const double mis = b1 + b2 * x;
  return x * dep * dep * (ratio + x) - mis * mis * x * x;
}

ReducedProblem ReducedProblem::canonical() const {
  ReducedProblem out = *this;
  // x1 < x2 (regime A) and x1 > 0 (regime B) both need k b1 + b2 >= 0
  if (depletion_factor(convention) * b1 + b2 < 0.0) {
    out.b1 = -b1;
    out.b2 = -b2;
  }
  return out;
}

Roots roots(double b1, double b2, double ratio, Convention conv) {
  if (ratio < 0.0) throw DomainError("roots: ratio must be non-negative");
  if (near_boundary(b1, b2, conv)) {
    throw RegimeBoundary("roots: b1^2 = 1 or b2^2 = k^2 (use the oracle path)");
  }
  const double k = depletion_factor(conv);
  return Roots{(1.0 - b1) / (k + b2), (1.0 + b1) / (k - b2), -ratio / (1.0 - b1 * b1)};
}

std::vector<double> exact_roots(const ReducedProblem& rp) {
  const double k = depletion_factor(rp.convention);
  const double r = rp.ratio;
  return solve_cubic(k * k - rp.b2 * rp.b2, k * k * r - 2.0 * k - 2.0 * rp.b1 * rp.b2,
                     1.0 - 2.0 * k * r - rp.b1 * rp.b1, r);
}

Regime classify(double b1, double b2, Convention conv) {
  const double k = depletion_factor(conv);
  if (b1 * b1 > 1.0) return Regime::C;
  if (b2 * b2 > k * k) return Regime::B;
  return Regime::A;
}

ReducedProblem PropagationCoefficients::reduced() const {
  ReducedProblem rp;
  rp.b1 = b1;
  rp.b2 = b2;
  rp.ratio = ratio;
  rp.alpha = alpha;
  rp.kp = kp;
  rp.convention = convention;
  return rp;
}

PropagationCoefficients coefficients(const AtomicParams& p, double eta10, double eta20,
                                     double delta2, Convention conv) {
  if (!(eta10 > 0.0)) throw DomainError("coefficients: eta10 must be positive");
  if (eta20 < 0.0) throw DomainError("coefficients: eta20 must be non-negative");
  if (p.delta30 == 0.0) throw DomainError("coefficients: delta30 must be non-zero");
  PropagationCoefficients c;
  c.convention = conv;
  const double d2 = delta2 + p.beta21 * eta10;
  const DressedState ds = dressed_state(d2, p.mu1 * eta10);
  c.lambda = ds.lambda0;
  const double big_r = std::hypot(d2, 2.0 * p.mu1 * eta10);  // 2 lambda + Delta2
  const double q = p.q();
  const double root23 = std::sqrt(p.mu2 * p.mu3);
  c.A1 = -q * p.delta30 * big_r - p.mu2 * c.lambda - p.mu3 * (c.lambda + d2);
  c.A2 = q * q * p.delta30 + p.mu2 * q + p.mu3 * (q - p.beta22 - p.beta23 + 2.0 * p.beta21);
  c.a0 = p.delta30 * big_r;
  c.a1 = -(p.mu2 + p.mu3);
  if (c.a0 == 0.0) throw SingularConfiguration("coefficients: a0 vanishes");
  c.b1 = c.A1 / (2.0 * p.mu1 * eta10 * root23);
  c.b2 = c.A2 / (2.0 * p.mu1 * root23);
  c.ratio = eta20 / eta10;
  c.alpha = c.a1 * eta10 / c.a0;
  c.kappa0 = smallsignal::kappa0(p);
  c.kp = c.kappa0 * p.mu1 * eta10 * p.delta30 / c.a0;
  fill_closed_form(c);
  return c;
}

PropagationCoefficients closed_form(const ReducedProblem& rp) {
  if (rp.ratio < 0.0) throw DomainError("closed_form: ratio must be non-negative");
  PropagationCoefficients c;
  c.b1 = rp.b1;
  c.b2 = rp.b2;
  c.ratio = rp.ratio;
  c.alpha = rp.alpha;
  c.kp = rp.kp;
  c.convention = rp.convention;
  fill_closed_form(c);
  if (rp.s_override && !c.boundary) {
    c.kappa_prime *= c.s / *rp.s_override;
    c.s = *rp.s_override;
  }
  return c;
}

double solve_regimeA(const PropagationCoefficients& c, double z) {
  require(c, Regime::A, "solve_regimeA");
  const auto v = elliptic::jacobi(c.kappa_prime * z, modulus_of(c));
  const double ax3 = std::abs(c.x.x3);
  return c.x.x1 * ax3 * v.sn * v.sn / (ax3 + c.x.x1 * v.cn * v.cn);
}

double solve_regimeB(const PropagationCoefficients& c, double z) {
  require(c, Regime::B, "solve_regimeB");
  const auto v = elliptic::jacobi(c.kappa_prime * z, modulus_of(c));
  const double ax3 = std::abs(c.x.x3);
  const double ax2 = std::abs(c.x.x2);
  const double pref = 2.0 * ax2 / (c.x.x1 + ax2);
  return c.x.x1 * ax3 * v.sn * v.sn / (ax3 + c.x.x1 * pref * v.cn * v.cn);
}

double solve_regimeC(const PropagationCoefficients& c, double z) {
  require(c, Regime::C, "solve_regimeC");
  const double s = std::sin(c.kappa_prime * z);
  return std::abs(c.x.x3) * s * s;
}

double solve(const PropagationCoefficients& c, double z) {
  switch (c.regime) {
    case Regime::A: return solve_regimeA(c, z);
    case Regime::B: return solve_regimeB(c, z);
    case Regime::C: return solve_regimeC(c, z);
  }
  return 0.0;
}

double plateau_distance(const PropagationCoefficients& c) {
  if (c.boundary) throw RegimeBoundary("plateau_distance: boundary configuration");
  if (c.regime == Regime::C) return kHalfPi / c.kappa_prime;
  return elliptic::complete_K(modulus_of(c)) / c.kappa_prime;
}

double plateau_value(const PropagationCoefficients& c) {
  if (c.boundary) throw RegimeBoundary("plateau_value: boundary configuration");
  return c.regime == Regime::C ? std::abs(c.x.x3) : c.x.x1;
}

double expansion_defect(const PropagationCoefficients& c) {
  if (c.regime != Regime::C) return 0.0;
  const double d = 1.0 - c.b1 * c.b1;
  const double k = depletion_factor(c.convention);
  return 2.0 * std::abs(k + c.b1 * c.b2) * c.ratio / (d * d);
}

ExactSolution::ExactSolution(const ReducedProblem& rp) : rp_(rp.canonical()) {
  if (rp_.ratio <= 0.0) throw DomainError("ExactSolution: ratio must be positive");
  if (rp_.b1 * rp_.b1 >= 1.0) {
    throw RegimeMismatch("ExactSolution: covers the compensated regimes (b1^2 < 1) only");
  }
  const double k = depletion_factor(rp_.convention);
  const double lead = k * k - rp_.b2 * rp_.b2;
  const std::vector<double> r = exact_roots(rp_);
  if (r.size() != 3) throw RegimeMismatch("ExactSolution: turning-point cubic lacks three real roots");
  if (lead > 0.0) {
    regime_ = Regime::A;
    x3_ = r[0];
    x1_ = r[1];
    x2_ = r[2];
    if (!(x3_ < 0.0 && x1_ > 0.0 && x2_ > x1_)) {
      throw RegimeMismatch("ExactSolution: unexpected root ordering in regime A");
    }
    c_ = -x3_;
    k_ = std::sqrt(x1_ * (x2_ + c_) / (x2_ * (x1_ + c_)));
    kc_ = std::sqrt(c_ * (x2_ - x1_) / (x2_ * (x1_ + c_)));
    n_ = x1_ / (x1_ + c_);
    kappa_ = rp_.kp * std::sqrt(lead * x2_ * (x1_ + c_));
  } else if (lead < 0.0) {
    regime_ = Regime::B;
    x2_ = r[0];
    x3_ = r[1];
    x1_ = r[2];
    if (!(x2_ < x3_ && x3_ < 0.0 && x1_ > 0.0)) {
      throw RegimeMismatch("ExactSolution: unexpected root ordering in regime B");
    }
    c_ = -x3_;
    const double ax2 = -x2_;
    k_ = std::sqrt(x1_ * (ax2 - c_) / (ax2 * (x1_ + c_)));
    kc_ = std::sqrt(c_ * (ax2 + x1_) / (ax2 * (x1_ + c_)));
    n_ = -x1_ / ax2;
    kappa_ = rp_.kp * std::sqrt(-lead * ax2 * (x1_ + c_));
  } else {
    throw RegimeBoundary("ExactSolution: vanishing leading coefficient");
  }
  if (1.0 + rp_.alpha * x1_ <= 0.0) {
    throw DomainError("ExactSolution: 1 + alpha x changes sign before the turning point");
  }
  big_k_ = elliptic::complete_K(EllipticModulus{k_, kc_});
  if (regime_ == Regime::B) {
    phi_top_ = rp_.alpha * (-x2_) * (1.0 - n_) * elliptic::incomplete_Pi(kHalfPi, n_, EllipticModulus{k_, kc_});
  }
}

double ExactSolution::amplitude_of_v(double v) const {
  const auto jv = elliptic::jacobi(v, EllipticModulus{k_, kc_});
  if (regime_ == Regime::A) return std::min(jv.am, kHalfPi);
  // sn(gamma) = cd(v), cos(gamma) = kc sd(v)
  return std::atan2(jv.cn, kc_ * jv.sn);
}

double ExactSolution::phi(double gamma) const {
  return rp_.alpha * (-x2_) * (1.0 - n_) * elliptic::incomplete_Pi(gamma, n_, EllipticModulus{k_, kc_});
}

double ExactSolution::x_of_v(double v) const {
  if (v < 0.0 || v > big_k_ * (1.0 + 1e-14)) throw DomainError("x_of_v: v outside [0, K]");
  const auto jv = elliptic::jacobi(v, EllipticModulus{k_, kc_});
  return x1_ * c_ * jv.sn * jv.sn / (c_ + x1_ * jv.cn * jv.cn);
}

double ExactSolution::z_of_v(double v) const {
  if (v < 0.0 || v > big_k_ * (1.0 + 1e-14)) throw DomainError("z_of_v: v outside [0, K]");
  v = std::min(v, big_k_);
  const double gamma = amplitude_of_v(v);
  const EllipticModulus mod{k_, kc_};
  if (regime_ == Regime::A) {
    const double pi = elliptic::incomplete_Pi(gamma, n_, mod);
    return (v + rp_.alpha * c_ * (pi - v)) / kappa_;
  }
  // F(gamma) = K - v
  const double ax2 = -x2_;
  return (v * (1.0 - rp_.alpha * ax2) + (phi_top_ - phi(gamma))) / kappa_;
}

double ExactSolution::z_of_x(double x) const {
  if (x < 0.0 || x > x1_ * (1.0 + 1e-12)) throw DomainError("z_of_x: x outside [0, x1]");
  x = std::min(x, x1_);
  const EllipticModulus mod{k_, kc_};
  if (regime_ == Regime::A) {
    const double s2 = std::min(1.0, (x1_ + c_) * x / (x1_ * (x + c_)));
    const double gamma = std::asin(std::sqrt(s2));
    const double f = elliptic::incomplete_F(gamma, mod);
    const double pi = elliptic::incomplete_Pi(gamma, n_, mod);
    return (f + rp_.alpha * c_ * (pi - f)) / kappa_;
  }
  const double ax2 = -x2_;
  const double s2 = std::clamp(ax2 * (x1_ - x) / (x1_ * (x + ax2)), 0.0, 1.0);
  const double gamma = std::asin(std::sqrt(s2));
  const double f = elliptic::incomplete_F(gamma, mod);
  return ((big_k_ - f) * (1.0 - rp_.alpha * ax2) + (phi_top_ - phi(gamma))) / kappa_;
}

double ExactSolution::x_of_z(double z) const {
  if (z < 0.0) throw DomainError("x_of_z: z must be non-negative");
  z = fold_period(z, z_of_v(big_k_));
  if (z == 0.0) return 0.0;
  if (z >= z_of_v(big_k_)) return x1_;
  double lo = 0.0;
  double hi = big_k_;
  for (int it = 0; it < 200 && hi - lo > 1e-15 * big_k_; ++it) {
    const double mid = 0.5 * (lo + hi);
    (z_of_v(mid) < z ? lo : hi) = mid;
  }
  return x_of_v(0.5 * (lo + hi));
}

}  // namespace maxcoh::propagation
