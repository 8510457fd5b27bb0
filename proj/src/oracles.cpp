#include "maxcoh/oracles.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "maxcoh/errors.hpp"
#include "maxcoh/smallsignal.hpp"

namespace maxcoh::oracles {

namespace {

using boost::math::quadrature::gauss_kronrod;

constexpr double kQuadTol = 1e-12;
constexpr unsigned kQuadDepth = 15;
// Below w^2 = kNearTurn * x_turn the turning-point factor uses its limiting slope.
constexpr double kNearTurn = 1e-7;

// Boost 1.74 compares an unscaled error estimate against a scaled tolerance, so
// short intervals never converge; integrating over [0, 1] keeps both consistent.
template <class F>
double integrate(F f, double a, double b) {
  if (b <= a) return 0.0;
  const double h = b - a;
  auto unit = [&](double u) { return f(a + h * u); };
  return h * gauss_kronrod<double, 31>::integrate(unit, 0.0, 1.0, kQuadDepth, kQuadTol);
}

// Smallest root of h on (0, hi] where h > 0 just above 0.
template <class F>
double first_root(F h, double hi, int scan) {
  double prev = 0.0;
  for (int i = 1; i <= scan; ++i) {
    // Geometric near zero, linear further out.
    const double frac = static_cast<double>(i) / scan;
    const double x = hi * (i < scan / 4 ? std::pow(10.0, -12.0 * (1.0 - 4.0 * frac)) * 0.25
                                        : frac);
    if (!(h(x) > 0.0)) {
      double lo = prev;
      double up = x;
      for (int it = 0; it < 200 && up - lo > 4.0 * std::numeric_limits<double>::epsilon() * up; ++it) {
        const double mid = 0.5 * (lo + up);
        (h(mid) > 0.0 ? lo : up) = mid;
      }
      return lo;
    }
    prev = x;
  }
  return hi;
}

}  // namespace

// ---------------------------------------------------------------------------

ReducedQuadrature::ReducedQuadrature(const propagation::ReducedProblem& rp) : rp_(rp) {
  if (!(rp_.ratio > 0.0)) throw DomainError("ReducedQuadrature: ratio must be positive");
  if (!(rp_.kp > 0.0)) throw DomainError("ReducedQuadrature: kp must be positive");
  const double k = propagation::depletion_factor(rp_.convention);
  // P(x)/x in product form.
  auto q = [&](double t) {
    const double dep = 1.0 - k * t;
    const double mis = rp_.b1 + rp_.b2 * t;
    return dep * dep * (rp_.ratio + t) - mis * mis * t;
  };
  x_turn_ = first_root(q, 1.0 / k, 4000);
  z_turn_ = z_of_x(x_turn_);
}

void ReducedQuadrature::integrand_check(double t) const {
  if (!(1.0 + rp_.alpha * t > 0.0)) {
    throw DomainError("ReducedQuadrature: integrand changes sign at x = " + std::to_string(t));
  }
}

double ReducedQuadrature::z_of_x(double x) const {
  if (x < 0.0 || x > x_turn_ * (1.0 + 1e-14)) {
    throw DomainError("ReducedQuadrature: x outside [0, turning point]");
  }
  x = std::min(x, x_turn_);
  if (x == 0.0) return 0.0;
  integrand_check(x);
  const double k = propagation::depletion_factor(rp_.convention);
  auto q = [&](double t) {
    const double dep = 1.0 - k * t;
    const double mis = rp_.b1 + rp_.b2 * t;
    return dep * dep * (rp_.ratio + t) - mis * mis * t;
  };
  const double split = std::min(x, 0.5 * x_turn_);
  // t = s^2 removes the 1/sqrt(t) end point.
  auto lower = [&](double s) {
    const double t = s * s;
    return 2.0 * (1.0 + rp_.alpha * t) / std::sqrt(q(t));
  };
  double total = integrate(lower, 0.0, std::sqrt(split));
  if (x > split) {
    // t = x_turn - w^2 removes the turning-point singularity. P(t) / (x_turn - t)
    // comes from synthetic division of the cubic factor, which avoids the
    // cancellation of P near its root.
    const double r = rp_.ratio;
    const double c1 = 1.0 - 2.0 * k * r - rp_.b1 * rp_.b1;
    const double c2 = k * k * r - 2.0 * k - 2.0 * rp_.b1 * rp_.b2;
    const double c3 = k * k - rp_.b2 * rp_.b2;
    const double s2 = c3;
    const double s1 = c2 + x_turn_ * s2;
    const double s0 = c1 + x_turn_ * s1;
    auto upper = [&](double w) {
      const double t = x_turn_ - w * w;
      const double reduced = -t * ((s2 * t + s1) * t + s0);
      return 2.0 * (1.0 + rp_.alpha * t) / std::sqrt(reduced);
    };
    total += integrate(upper, std::sqrt(x_turn_ - x), std::sqrt(x_turn_ - split));
  }
  return total / (2.0 * rp_.kp);
}

double ReducedQuadrature::x_of_z(double z) const {
  if (z < 0.0) throw DomainError("ReducedQuadrature: z must be non-negative");
  z = propagation::fold_period(z, z_turn_);
  if (z == 0.0) return 0.0;
  if (z >= z_turn_) return x_turn_;
  double lo = 0.0;
  double hi = x_turn_;
  for (int it = 0; it < 200 && hi - lo > 1e-15 * x_turn_; ++it) {
    const double mid = 0.5 * (lo + hi);
    (z_of_x(mid) < z ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// ---------------------------------------------------------------------------

namespace {

struct Fluxes {
  double e1 = 0.0;
  double e2 = 0.0;
  double e3 = 0.0;
};

double delta2_of(const FullProblem& fp, const Fluxes& f) {
  const AtomicParams& p = fp.params;
  return fp.delta2 + p.beta21 * f.e1 + p.beta22 * f.e2 + p.beta23 * f.e3;
}

double delta3_of(const FullProblem& fp, const Fluxes& f) {
  const AtomicParams& p = fp.params;
  return p.delta30 + p.beta31 * f.e1 + p.beta32 * f.e2 + p.beta33 * f.e3;
}

// Characteristic cubic without its phase term, and its lambda derivative.
double cubic_nophase(const FullProblem& fp, double lam, const Fluxes& f) {
  const AtomicParams& p = fp.params;
  const double d2 = delta2_of(fp, f);
  const double d3 = delta3_of(fp, f);
  const double o1 = p.mu1 * f.e1;
  const double o1s = o1 * o1;
  const double o2s = p.mu2 * f.e2;
  const double o3s = p.mu3 * f.e3;
  return lam * (d2 + lam) * (d3 + lam) - (o1s + o2s + o3s) * lam - o1s * d3 - o3s * d2;
}

double cubic_dlambda(const FullProblem& fp, double lam, const Fluxes& f) {
  const AtomicParams& p = fp.params;
  const double d2 = delta2_of(fp, f);
  const double d3 = delta3_of(fp, f);
  const double o1 = p.mu1 * f.e1;
  const double sum = o1 * o1 + p.mu2 * f.e2 + p.mu3 * f.e3;
  return (d2 + lam) * (d3 + lam) + lam * (d3 + lam) + lam * (d2 + lam) - sum;
}

double nearest(const std::vector<double>& roots, double guess) {
  if (roots.empty()) throw ConvergenceError("characteristic cubic has no real root");
  return *std::min_element(roots.begin(), roots.end(), [&](double a, double b) {
    return std::abs(a - guess) < std::abs(b - guess);
  });
}

// Roots of the full cubic with the phase term T = 2 O1 O2 O3 cos(phi).
std::vector<double> full_roots(const FullProblem& fp, const Fluxes& f, double t) {
  const AtomicParams& p = fp.params;
  const double d2 = delta2_of(fp, f);
  const double d3 = delta3_of(fp, f);
  const double o1s = p.mu1 * f.e1 * p.mu1 * f.e1;
  const double o3s = p.mu3 * f.e3;
  const double sum = o1s + p.mu2 * f.e2 + o3s;
  return solve_cubic(1.0, d2 + d3, d2 * d3 - sum, -o1s * d3 - o3s * d2 + t);
}

}  // namespace

double entrance_lambda(const FullProblem& fp) {
  fp.params.validate();
  if (!(fp.eta10 > 0.0) || fp.eta20 < 0.0 || fp.eta30 < 0.0) {
    throw DomainError("entrance_lambda: fluxes must satisfy eta10 > 0, eta20 >= 0, eta30 >= 0");
  }
  const AtomicParams& p = fp.params;
  const Fluxes f{fp.eta10, fp.eta20, fp.eta30};
  const double t = 2.0 * p.mu1 * fp.eta10 * std::sqrt(p.mu2 * fp.eta20) *
                   std::sqrt(p.mu3 * fp.eta30) * std::cos(fp.phi0);
  const double guess = dressed_state(delta2_of(fp, f), p.mu1 * fp.eta10).lambda0;
  return nearest(full_roots(fp, f, t), guess);
}

FullQuadrature::FullQuadrature(const FullProblem& fp) : fp_(fp) {
  lambda_ = entrance_lambda(fp_);
  auto h = [&](double j) { return discriminant(j); };
  const double jmax = 0.5 * fp_.eta10;
  if (fp_.eta30 > 0.0 && !(h(0.0) > 0.0)) {
    throw DomainError("FullQuadrature: entrance phase gives no motion (sin(phi0) = 0)");
  }
  j_turn_ = first_root(h, jmax, 4000);
  z_turn_ = z_of_j(j_turn_);
}

double FullQuadrature::discriminant(double j) const {
  const AtomicParams& p = fp_.params;
  const Fluxes f{fp_.eta10 - 2.0 * j, fp_.eta20 + j, fp_.eta30 + j};
  const double g2 = 4.0 * p.mu1 * p.mu1 * f.e1 * f.e1 * p.mu2 * f.e2 * p.mu3 * f.e3;
  const double big_g = cubic_nophase(fp_, lambda_ - p.q() * j, f);
  return g2 - big_g * big_g;
}

double FullQuadrature::g_lambda(double j) const {
  const Fluxes f{fp_.eta10 - 2.0 * j, fp_.eta20 + j, fp_.eta30 + j};
  return cubic_dlambda(fp_, lambda_ - fp_.params.q() * j, f);
}

double FullQuadrature::z_of_j(double j) const {
  if (j < 0.0 || j > j_turn_ * (1.0 + 1e-14)) {
    throw DomainError("FullQuadrature: J outside [0, turning point]");
  }
  j = std::min(j, j_turn_);
  if (j == 0.0) return 0.0;
  const double sign0 = g_lambda(0.0);
  auto weight = [&](double jj) {
    const double gl = g_lambda(jj);
    if (gl * sign0 <= 0.0) {
      throw DomainError("FullQuadrature: dG/dlambda changes sign at J = " + std::to_string(jj));
    }
    return std::abs(gl);
  };
  const double split = std::min(j, 0.5 * j_turn_);
  auto lower = [&](double s) {
    const double jj = s * s;
    return 2.0 * s * weight(jj) / std::sqrt(discriminant(jj));
  };
  double total = integrate(lower, 0.0, std::sqrt(split));
  if (j > split) {
    const double eps_j = kNearTurn * j_turn_;
    const double slope = discriminant(j_turn_ - eps_j) / eps_j;
    auto upper = [&](double w) {
      const double jj = j_turn_ - w * w;
      if (w * w < eps_j) return 2.0 * weight(jj) / std::sqrt(slope);
      return 2.0 * w * weight(jj) / std::sqrt(discriminant(jj));
    };
    total += integrate(upper, std::sqrt(j_turn_ - j), std::sqrt(j_turn_ - split));
  }
  return 2.0 / fp_.params.density * total;
}

double FullQuadrature::j_of_z(double z) const {
  if (z < 0.0) throw DomainError("FullQuadrature: z must be non-negative");
  z = propagation::fold_period(z, z_turn_);
  if (z == 0.0) return 0.0;
  if (z >= z_turn_) return j_turn_;
  double lo = 0.0;
  double hi = j_turn_;
  for (int it = 0; it < 200 && hi - lo > 1e-15 * j_turn_; ++it) {
    const double mid = 0.5 * (lo + hi);
    (z_of_j(mid) < z ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// ---------------------------------------------------------------------------

namespace {

using Vec4 = std::array<double, 4>;  // eta1, eta2, X, Y

struct CanonicalSystem {
  const FullProblem& fp;
  double lambda_total = 0.0;
  double half_n = 0.0;
  double dk = 0.0;
  double q = 0.0;

  double eigenvalue(const Vec4& y, double& j_out) const {
    const AtomicParams& p = fp.params;
    const Fluxes f{y[0], std::max(y[1], 0.0), 0.5 * (y[2] * y[2] + y[3] * y[3])};
    j_out = f.e3 - fp.eta30;
    const double t = std::sqrt(2.0) * p.mu1 * f.e1 * std::sqrt(p.mu2 * f.e2) * std::sqrt(p.mu3) * y[2];
    return nearest(full_roots(fp, f, t), lambda_total - q * j_out);
  }

  Vec4 rhs(const Vec4& y) const {
    const AtomicParams& p = fp.params;
    const double e1 = y[0];
    const double e2 = std::max(y[1], 0.0);
    const double xx = y[2];
    const double yy = y[3];
    const Fluxes f{e1, e2, 0.5 * (xx * xx + yy * yy)};
    double j = 0.0;
    const double lam = eigenvalue(y, j);
    const double d2 = delta2_of(fp, f);
    const double d3 = delta3_of(fp, f);
    const double root_mu3 = std::sqrt(p.mu3);
    const double root_o2 = std::sqrt(p.mu2 * e2);
    const double cross = std::sqrt(2.0) * p.mu1 * e1 * root_o2 * root_mu3;  // T / X

    const double f_lam = cubic_dlambda(fp, lam, f);
    const double f_d2 = lam * (lam + d3) - p.mu3 * f.e3;
    const double f_d3 = lam * (lam + d2) - p.mu1 * p.mu1 * e1 * e1;
    const double f_e1 = f_d2 * p.beta21 + f_d3 * p.beta31 -
                        2.0 * p.mu1 * p.mu1 * e1 * (lam + d3) + p.mu1 * root_o2 * std::sqrt(2.0) * root_mu3 * xx;
    const double f_e2 = f_d2 * p.beta22 + f_d3 * p.beta32 - p.mu2 * lam +
                        (e2 > 0.0 ? 0.5 * cross * xx / e2 : 0.0);
    const double f_e3 = f_d2 * p.beta23 + f_d3 * p.beta33 - p.mu3 * lam - p.mu3 * d2;
    const double f_x = f_e3 * xx + cross;
    const double f_y = f_e3 * yy;

    const double scale = -half_n / f_lam;
    const double k1 = scale * f_e1;
    const double k2 = scale * f_e2;
    const double kx = scale * f_x;
    const double ky = scale * f_y;
    const double m = 2.0 * k1 - k2 - dk;
    const double w = -yy * kx + xx * ky;
    return {-2.0 * w, w, ky - yy * m, -kx + xx * m};
  }
};

Vec4 rk4_step(const CanonicalSystem& sys, const Vec4& y, double h) {
  auto axpy = [](const Vec4& a, const Vec4& b, double s) {
    return Vec4{a[0] + s * b[0], a[1] + s * b[1], a[2] + s * b[2], a[3] + s * b[3]};
  };
  const Vec4 k1 = sys.rhs(y);
  const Vec4 k2 = sys.rhs(axpy(y, k1, 0.5 * h));
  const Vec4 k3 = sys.rhs(axpy(y, k2, 0.5 * h));
  const Vec4 k4 = sys.rhs(axpy(y, k3, h));
  Vec4 out;
  for (int i = 0; i < 4; ++i) out[i] = y[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  return out;
}

}  // namespace

std::vector<OdeSample> canonical_ode(const FullProblem& fp, const std::vector<double>& z_grid,
                                     const OdeOptions& opt) {
  if (z_grid.empty()) return {};
  for (std::size_t i = 0; i < z_grid.size(); ++i) {
    if (z_grid[i] < 0.0 || (i > 0 && z_grid[i] < z_grid[i - 1])) {
      throw DomainError("canonical_ode: z grid must be non-negative and non-decreasing");
    }
  }
  const AtomicParams& p = fp.params;
  CanonicalSystem sys{fp};
  sys.lambda_total = entrance_lambda(fp);
  sys.half_n = 0.5 * p.density;
  sys.dk = p.dk();
  sys.q = p.q();

  double max_step = opt.max_step;
  if (!(max_step > 0.0)) {
    const auto c = propagation::coefficients(p, fp.eta10, std::max(fp.eta20, 1e-300), fp.delta2,
                                             propagation::Convention::ManleyRowe);
    double rate = c.kp * (1.0 + std::abs(c.b1) + std::abs(c.b2) + std::abs(c.alpha));
    // the (X, Y) rotation can be much faster than the conversion itself
    const double tiny = 1e-6 * std::sqrt(2.0 * std::max(fp.eta20, fp.eta10 * 1e-12));
    const Vec4 d = sys.rhs(Vec4{fp.eta10, fp.eta20, 0.0, tiny});
    rate = std::max(rate, std::abs(d[2] / tiny));
    max_step = 0.05 / rate;
  }

  const bool have_omega = p.lambda1_nm > 0.0 && p.lambda2_nm > 0.0;
  const double w1 = have_omega ? p.omega1() : 0.0;
  const double w2 = have_omega ? p.omega2() : 0.0;
  const double w3 = have_omega ? p.omega3() : 0.0;

  Vec4 y{fp.eta10, fp.eta20, std::sqrt(2.0 * fp.eta30) * std::cos(fp.phi0),
         std::sqrt(2.0 * fp.eta30) * std::sin(fp.phi0)};
  const double mr12_0 = fp.eta10 + 2.0 * fp.eta20;
  const double mr13_0 = fp.eta10 + 2.0 * fp.eta30;
  const double int_0 = w1 * fp.eta10 + w2 * fp.eta20 + w3 * fp.eta30;
  const double lam_scale = std::max(std::abs(sys.lambda_total), p.mu1 * fp.eta10);

  std::vector<OdeSample> out;
  out.reserve(z_grid.size());
  double z = 0.0;
  for (const double target : z_grid) {
    while (z < target) {
      const double h = std::min(max_step, target - z);
      y = rk4_step(sys, y, h);
      z = (target - z <= max_step) ? target : z + h;
    }
    OdeSample s;
    s.z = target;
    s.eta1 = y[0];
    s.eta2 = y[1];
    s.eta3 = 0.5 * (y[2] * y[2] + y[3] * y[3]);
    double j = 0.0;
    const double lam = sys.eigenvalue(y, j);
    s.J = j;
    s.phi = (y[2] == 0.0 && y[3] == 0.0) ? fp.phi0 : std::atan2(y[3], y[2]);
    s.lambda_total = lam + sys.q * j;
    s.mr12 = std::abs(s.eta1 + 2.0 * s.eta2 - mr12_0) / mr12_0;
    s.mr13 = std::abs(s.eta1 + 2.0 * s.eta3 - mr13_0) / mr13_0;
    s.lambda_res = std::abs(s.lambda_total - sys.lambda_total) / lam_scale;
    s.intensity = have_omega
                      ? std::abs(w1 * s.eta1 + w2 * s.eta2 + w3 * s.eta3 - int_0) / int_0
                      : 0.0;
    const double worst = std::max({s.mr12, s.mr13, s.lambda_res, s.intensity});
    if (!(worst <= opt.abort_tol)) {
      throw ConvergenceError("canonical_ode: conservation drift " + std::to_string(worst) +
                             " at z = " + std::to_string(target));
    }
    out.push_back(s);
  }
  return out;
}

LinearPairResult linear_pair(double eta20, double kappa, double k2, double k3, double dk, double z,
                             int steps) {
  using cplx = std::complex<double>;
  if (steps < 1) throw DomainError("linear_pair: steps must be positive");
  const cplx i1(0.0, 1.0);
  auto rhs = [&](double zz, const std::array<cplx, 2>& u) {
    return std::array<cplx, 2>{-i1 * k2 * u[0] + i1 * kappa * std::exp(i1 * dk * zz) * u[1],
                               i1 * k3 * u[1] - i1 * kappa * std::exp(-i1 * dk * zz) * u[0]};
  };
  std::array<cplx, 2> u{cplx(std::sqrt(eta20), 0.0), cplx(0.0, 0.0)};
  const double h = z / steps;
  double zz = 0.0;
  for (int s = 0; s < steps; ++s) {
    const auto a = rhs(zz, u);
    const auto b = rhs(zz + 0.5 * h, {u[0] + 0.5 * h * a[0], u[1] + 0.5 * h * a[1]});
    const auto c = rhs(zz + 0.5 * h, {u[0] + 0.5 * h * b[0], u[1] + 0.5 * h * b[1]});
    const auto d = rhs(zz + h, {u[0] + h * c[0], u[1] + h * c[1]});
    for (int k = 0; k < 2; ++k) u[k] += h / 6.0 * (a[k] + 2.0 * b[k] + 2.0 * c[k] + d[k]);
    zz += h;
  }
  return {std::norm(u[0]), std::norm(u[1])};
}

}  // namespace maxcoh::oracles
