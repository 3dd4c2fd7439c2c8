#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <vector>

#include "deforma/function.hpp"

namespace deforma {

using Rational = boost::multiprecision::cpp_rational;

/// Polynomial in the dimension symbol D with exact rational coefficients.
/// Stored by ascending power, no trailing zeros (the zero polynomial is empty).
class DPoly {
 public:
  DPoly() = default;
  DPoly(Rational constant);  // NOLINT: implicit lift of scalars is intended
  DPoly(int constant) : DPoly(Rational(constant)) {}  // NOLINT
  explicit DPoly(std::vector<Rational> coeffs);

  /// The symbol D itself.
  static DPoly symbol();

  bool is_zero() const { return coeffs_.empty(); }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  double evaluate(double D) const;
  std::string to_string() const;

  friend DPoly operator+(const DPoly& a, const DPoly& b);
  friend DPoly operator-(const DPoly& a, const DPoly& b);
  friend DPoly operator*(const DPoly& a, const DPoly& b);
  friend DPoly operator-(const DPoly& a);
  friend bool operator==(const DPoly& a, const DPoly& b) { return a.coeffs_ == b.coeffs_; }

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

/// p(xi) e^{-xi^2/2} with p a polynomial in xi whose coefficients are DPoly.
/// Canonical form: no trailing zero coefficients. All operations are exact.
class PolyGauss {
 public:
  PolyGauss() = default;
  explicit PolyGauss(std::vector<DPoly> coeffs);

  /// e^{-xi^2/2}
  static PolyGauss gaussian();

  const std::vector<DPoly>& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

  /// even if only even powers are present, odd if only odd, none otherwise.
  /// The zero function reports even.
  Parity parity() const;

  PolyGauss multiply_by_xi() const;
  /// (p e^{-xi^2/2})' = (p' - xi p) e^{-xi^2/2}
  PolyGauss differentiate() const;
  /// (odd part of p) / xi, as a PolyGauss.
  PolyGauss divide_odd_part_by_xi() const;
  /// p(-xi)
  PolyGauss reflect() const;
  PolyGauss even_part() const;
  PolyGauss odd_part() const;

  friend PolyGauss operator+(const PolyGauss& a, const PolyGauss& b);
  friend PolyGauss operator-(const PolyGauss& a, const PolyGauss& b);
  friend PolyGauss operator*(const DPoly& s, const PolyGauss& p);
  friend bool operator==(const PolyGauss& a, const PolyGauss& b) { return a.coeffs_ == b.coeffs_; }

  /// Value at xi for a numeric D.
  double evaluate(double xi, double D) const;

  /// Numeric handle for a fixed D (times `scale`), with an analytic derivative
  /// chain of the requested depth and the exact parity as hint.
  FunctionHandle to_function(double D, double scale = 1.0, int derivative_depth = 3) const;

  std::string to_string() const;

 private:
  void trim();
  std::vector<DPoly> coeffs_;
};

}  // namespace deforma
