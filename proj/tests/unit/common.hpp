#pragma once

#include <cmath>
#include <random>

#include "maxcoh/core_model.hpp"

namespace maxcoh::test {

inline double rel_err(double a, double b) {
  const double s = std::max(std::abs(a), std::abs(b));
  return s == 0.0 ? 0.0 : std::abs(a - b) / s;
}

class Rng {
 public:
  explicit Rng(unsigned seed) : gen_(seed) {}
  double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(gen_); }
  double log_uniform(double a, double b) { return std::exp(uniform(std::log(a), std::log(b))); }

 private:
  std::mt19937_64 gen_;
};

// Dimensionless atoms with strong |2>-|3> coupling, Kr wavelengths.
inline AtomicParams random_atoms(Rng& g) {
  AtomicParams p = kr_preset();
  p.mu1 = 1.0;
  p.delta30 = g.uniform(0.5, 2.0);
  p.mu2 = g.uniform(20.0, 100.0);
  p.mu3 = p.mu2 / g.uniform(2.0, 10.0);
  p.beta21 = g.uniform(-0.3, 0.3);
  p.beta22 = p.beta23 = p.beta31 = p.beta32 = p.beta33 = 0.0;
  p.density = g.uniform(0.5, 2.0);
  p.dk_over_n = 0.0;
  return p;
}

}  // namespace maxcoh::test
