#pragma once

// Real-argument elliptic integrals and Jacobi functions.
//
// Modulus convention: every function takes the MODULUS k (called p in the
// propagation formulas), not the parameter m = k^2. sn(u; k -> 1) = tanh(u).
// Near k = 1 the complementary modulus kc = sqrt(1 - k^2) carries the
// information, so EllipticModulus stores both and the propagation code builds
// it from kc directly when that is the well-conditioned quantity.

namespace maxcoh::elliptic {

struct EllipticModulus {
  double k = 0.0;
  double kc = 1.0;

  [[nodiscard]] static EllipticModulus from_k(double k);
  [[nodiscard]] static EllipticModulus from_complement(double kc);
  [[nodiscard]] double m() const { return k * k; }
};

// Carlson symmetric forms (duplication algorithm).
[[nodiscard]] double carlson_rf(double x, double y, double z);
[[nodiscard]] double carlson_rc(double x, double y);
// Requires p > 0.
[[nodiscard]] double carlson_rj(double x, double y, double z, double p);

// K(k) by the arithmetic-geometric mean. Throws DomainError for k < 0 or k >= 1.
[[nodiscard]] double complete_K(double k);
[[nodiscard]] double complete_K(const EllipticModulus& mod);

// F(gamma, k) = int_0^gamma dt / sqrt(1 - k^2 sin^2 t), 0 <= gamma <= pi/2.
[[nodiscard]] double incomplete_F(double gamma, double k);
[[nodiscard]] double incomplete_F(double gamma, const EllipticModulus& mod);

// Pi(gamma, n, k) = int_0^gamma dt / ((1 - n sin^2 t) sqrt(1 - k^2 sin^2 t)).
// Throws DomainError when n sin^2(gamma) >= 1.
[[nodiscard]] double incomplete_Pi(double gamma, double n, double k);
[[nodiscard]] double incomplete_Pi(double gamma, double n, const EllipticModulus& mod);

struct JacobiValues {
  double sn = 0.0;
  double cn = 1.0;
  double dn = 1.0;
  double am = 0.0;  // amplitude, sn = sin(am)
};

// Descending Landen transformation; k within 1e-12 of 1 uses tanh/sech.
[[nodiscard]] JacobiValues jacobi(double u, const EllipticModulus& mod);

struct SnCn {
  double sn = 0.0;
  double cn = 1.0;
};

[[nodiscard]] SnCn jacobi_sn_cn(double u, double k);

}  // namespace maxcoh::elliptic
