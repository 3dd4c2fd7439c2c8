#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "deforma/function.hpp"

namespace testing {

// Small seeded generator for property corpora. Every test constructs its own
// so failures reproduce from the seed alone.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }

  // Coefficients of a polynomial of degree in [1, max_degree], entries in [-1, 1].
  std::vector<double> polynomial(int max_degree) {
    std::vector<double> c(integer(1, max_degree) + 1);
    for (double& v : c) v = uniform(-1.0, 1.0);
    return c;
  }

 private:
  std::mt19937_64 engine_;
};

inline double horner(const std::vector<double>& c, double x) {
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

inline std::vector<double> derivative_coeffs(const std::vector<double>& c) {
  std::vector<double> d;
  for (std::size_t k = 1; k < c.size(); ++k) d.push_back(k * c[k]);
  if (d.empty()) d.push_back(0.0);
  return d;
}

// Polynomial handle carrying `depth` analytic derivatives.
inline deforma::FunctionHandle polynomial(const std::vector<double>& c, int depth = 3) {
  deforma::FunctionHandle f([c](double x) { return deforma::Complex(horner(c, x), 0.0); });
  if (depth == 0) return f;
  return f.with_derivative(polynomial(derivative_coeffs(c), depth - 1));
}

// Black-box version: no analytic derivatives, forcing finite differences.
inline deforma::FunctionHandle opaque(const deforma::FunctionHandle& f) {
  return deforma::FunctionHandle([f](double x) { return f(x); }, f.domain(), f.parity_hint());
}

inline double relative_error(double got, double want, double scale) {
  return std::abs(got - want) / std::max(scale, 1e-300);
}

inline double relative_error(double got, double want) {
  return relative_error(got, want, std::max(std::abs(want), 1e-300));
}

}  // namespace testing
