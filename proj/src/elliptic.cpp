#include "maxcoh/elliptic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "maxcoh/errors.hpp"

namespace maxcoh::elliptic {

namespace {

constexpr double kHalfPi = 0.5 * std::numbers::pi;
constexpr int kMaxLanden = 40;

void check_amplitude(double gamma) {
  if (!(gamma >= 0.0 && gamma <= kHalfPi * (1.0 + 1e-15))) {
    throw DomainError("elliptic: amplitude must lie in [0, pi/2]");
  }
}

void check_modulus(const EllipticModulus& mod) {
  // k may round to 1 while kc > 0 still carries the information
  if (!(mod.k >= 0.0 && mod.k <= 1.0) || !(mod.kc > 0.0)) {
    throw DomainError("elliptic: modulus must lie in [0, 1)");
  }
}

}  // namespace

EllipticModulus EllipticModulus::from_k(double k) {
  if (k < 0.0 || k > 1.0) throw DomainError("elliptic modulus outside [0, 1]");
  return EllipticModulus{k, std::sqrt((1.0 - k) * (1.0 + k))};
}

EllipticModulus EllipticModulus::from_complement(double kc) {
  if (kc < 0.0 || kc > 1.0) throw DomainError("complementary modulus outside [0, 1]");
  return EllipticModulus{std::sqrt((1.0 - kc) * (1.0 + kc)), kc};
}

double carlson_rf(double x, double y, double z) {
  constexpr double kErrTol = 0.0008;
  if (std::min({x, y, z}) < 0.0 || std::min({x + y, x + z, y + z}) == 0.0) {
    throw DomainError("carlson_rf: invalid arguments");
  }
  double xt = x;
  double yt = y;
  double zt = z;
  double ave = 0.0;
  double dx = 0.0;
  double dy = 0.0;
  double dz = 0.0;
  for (int it = 0; it < 100; ++it) {
    const double sx = std::sqrt(xt);
    const double sy = std::sqrt(yt);
    const double sz = std::sqrt(zt);
    const double lam = sx * (sy + sz) + sy * sz;
    xt = 0.25 * (xt + lam);
    yt = 0.25 * (yt + lam);
    zt = 0.25 * (zt + lam);
    ave = (xt + yt + zt) / 3.0;
    dx = (ave - xt) / ave;
    dy = (ave - yt) / ave;
    dz = (ave - zt) / ave;
    if (std::max({std::abs(dx), std::abs(dy), std::abs(dz)}) < kErrTol) break;
  }
  const double e2 = dx * dy - dz * dz;
  const double e3 = dx * dy * dz;
  return (1.0 + (e2 / 24.0 - 0.1 - 3.0 * e3 / 44.0) * e2 + e3 / 14.0) / std::sqrt(ave);
}

double carlson_rc(double x, double y) {
  constexpr double kErrTol = 0.0004;
  if (x < 0.0 || y <= 0.0) throw DomainError("carlson_rc: invalid arguments");
  double xt = x;
  double yt = y;
  double ave = 0.0;
  double s = 0.0;
  for (int it = 0; it < 100; ++it) {
    const double lam = 2.0 * std::sqrt(xt) * std::sqrt(yt) + yt;
    xt = 0.25 * (xt + lam);
    yt = 0.25 * (yt + lam);
    ave = (xt + yt + yt) / 3.0;
    s = (yt - ave) / ave;
    if (std::abs(s) < kErrTol) break;
  }
  return (1.0 + s * s * (0.3 + s * (1.0 / 7.0 + s * (0.375 + s * 9.0 / 22.0)))) / std::sqrt(ave);
}

double carlson_rj(double x, double y, double z, double p) {
  constexpr double kErrTol = 0.0005;
  constexpr double C1 = 3.0 / 14.0;
  constexpr double C2 = 1.0 / 3.0;
  constexpr double C3 = 3.0 / 22.0;
  constexpr double C4 = 3.0 / 26.0;
  constexpr double C5 = 0.75 * C3;
  constexpr double C6 = 1.5 * C4;
  constexpr double C7 = 0.5 * C2;
  constexpr double C8 = C3 + C3;
  if (std::min({x, y, z}) < 0.0 || std::min({x + y, x + z, y + z}) == 0.0 || p <= 0.0) {
    throw DomainError("carlson_rj: invalid arguments");
  }
  double xt = x;
  double yt = y;
  double zt = z;
  double pt = p;
  double sum = 0.0;
  double fac = 1.0;
  double ave = 0.0;
  double dx = 0.0;
  double dy = 0.0;
  double dz = 0.0;
  double dp = 0.0;
  for (int it = 0; it < 100; ++it) {
    const double sx = std::sqrt(xt);
    const double sy = std::sqrt(yt);
    const double sz = std::sqrt(zt);
    const double lam = sx * (sy + sz) + sy * sz;
    const double alpha_root = pt * (sx + sy + sz) + sx * sy * sz;
    const double alpha = alpha_root * alpha_root;
    const double beta = pt * (pt + lam) * (pt + lam);
    sum += fac * carlson_rc(alpha, beta);
    fac *= 0.25;
    xt = 0.25 * (xt + lam);
    yt = 0.25 * (yt + lam);
    zt = 0.25 * (zt + lam);
    pt = 0.25 * (pt + lam);
    ave = 0.2 * (xt + yt + zt + pt + pt);
    dx = (ave - xt) / ave;
    dy = (ave - yt) / ave;
    dz = (ave - zt) / ave;
    dp = (ave - pt) / ave;
    if (std::max({std::abs(dx), std::abs(dy), std::abs(dz), std::abs(dp)}) < kErrTol) break;
  }
  const double ea = dx * (dy + dz) + dy * dz;
  const double eb = dx * dy * dz;
  const double ec = dp * dp;
  const double ed = ea - 3.0 * ec;
  const double ee = eb + 2.0 * dp * (ea - ec);
  const double series = 1.0 + ed * (-C1 + C5 * ed - C6 * ee) + eb * (C7 + dp * (-C8 + dp * C4)) +
                        dp * ea * (C2 - dp * C3) - C2 * dp * ec;
  return 3.0 * sum + fac * series / (ave * std::sqrt(ave));
}

double complete_K(const EllipticModulus& mod) {
  if (mod.k < 0.0) throw DomainError("complete_K: negative modulus");
  if (!(mod.kc > 0.0)) throw DomainError("complete_K: diverges at k = 1");
  double a = 1.0;
  double b = mod.kc;
  for (int it = 0; it < kMaxLanden && std::abs(a - b) > 1e-15 * a; ++it) {
    const double an = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = an;
  }
  return kHalfPi / a;
}

double complete_K(double k) {
  if (k < 0.0) throw DomainError("complete_K: negative modulus");
  if (k >= 1.0) throw DomainError("complete_K: diverges at k = 1");
  return complete_K(EllipticModulus::from_k(k));
}

double incomplete_F(double gamma, const EllipticModulus& mod) {
  check_amplitude(gamma);
  check_modulus(mod);
  const double s = std::sin(gamma);
  const double c = std::cos(gamma);
  if (s == 0.0) return 0.0;
  // 1 - k^2 s^2 written as c^2 + kc^2 s^2 to stay accurate as k -> 1.
  const double delta_sq = c * c + mod.kc * mod.kc * s * s;
  return s * carlson_rf(c * c, delta_sq, 1.0);
}

double incomplete_F(double gamma, double k) {
  if (k < 0.0 || k >= 1.0) throw DomainError("incomplete_F: modulus must lie in [0, 1)");
  return incomplete_F(gamma, EllipticModulus::from_k(k));
}

double incomplete_Pi(double gamma, double n, const EllipticModulus& mod) {
  check_amplitude(gamma);
  check_modulus(mod);
  const double s = std::sin(gamma);
  const double c = std::cos(gamma);
  if (s == 0.0) return 0.0;
  const double pole = c * c + (1.0 - n) * s * s;  // 1 - n s^2
  if (!(pole > 0.0)) throw DomainError("incomplete_Pi: n sin^2(gamma) >= 1 (pole crossing)");
  const double delta_sq = c * c + mod.kc * mod.kc * s * s;
  const double rf = carlson_rf(c * c, delta_sq, 1.0);
  if (n == 0.0) return s * rf;
  return s * rf + n * s * s * s * carlson_rj(c * c, delta_sq, 1.0, pole) / 3.0;
}

double incomplete_Pi(double gamma, double n, double k) {
  if (k < 0.0 || k >= 1.0) throw DomainError("incomplete_Pi: modulus must lie in [0, 1)");
  return incomplete_Pi(gamma, n, EllipticModulus::from_k(k));
}

JacobiValues jacobi(double u, const EllipticModulus& mod) {
  if (mod.k < 0.0 || mod.k > 1.0) throw DomainError("jacobi: modulus must lie in [0, 1]");
  JacobiValues v;
  if (mod.k > 1.0 - 1e-12 || mod.kc * mod.kc < 2e-12) {
    v.sn = std::tanh(u);
    v.cn = 1.0 / std::cosh(u);
    v.dn = v.cn;
    v.am = 2.0 * std::atan(std::tanh(0.5 * u));  // Gudermannian
    return v;
  }
  std::array<double, kMaxLanden + 1> a{};
  std::array<double, kMaxLanden + 1> c{};
  a[0] = 1.0;
  c[0] = mod.k;
  double b = mod.kc;
  int n = 0;
  while (n < kMaxLanden && std::abs(a[n] - b) > 1e-15 * a[n]) {
    a[n + 1] = 0.5 * (a[n] + b);
    c[n + 1] = 0.5 * (a[n] - b);
    b = std::sqrt(a[n] * b);
    ++n;
  }
  double phi = std::ldexp(a[n] * u, n);
  for (int i = n; i >= 1; --i) {
    phi = 0.5 * (phi + std::asin(c[i] / a[i] * std::sin(phi)));
  }
  v.am = phi;
  v.sn = std::sin(phi);
  v.cn = std::cos(phi);
  v.dn = std::sqrt(v.cn * v.cn + mod.kc * mod.kc * v.sn * v.sn);
  return v;
}

SnCn jacobi_sn_cn(double u, double k) {
  const JacobiValues v = jacobi(u, EllipticModulus::from_k(k));
  return SnCn{v.sn, v.cn};
}

}  // namespace maxcoh::elliptic
