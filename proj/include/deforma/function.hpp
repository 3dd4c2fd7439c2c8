#pragma once

#include <complex>
#include <functional>
#include <limits>
#include <memory>
#include <optional>

namespace deforma {

using Complex = std::complex<double>;

enum class Parity { even, odd, none };

const char* to_string(Parity parity);

/// Closed interval [lo, hi]; infinite endpoints allowed.
struct Interval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();

  bool contains(double x) const { return x >= lo && x <= hi; }
  static Interval real_line() { return {}; }
};

/// Immutable black-box real -> complex function. Copies share the evaluator.
///
/// A handle may carry an analytic derivative (itself a FunctionHandle); the
/// derivative helpers below use it instead of finite differences when present.
class FunctionHandle {
 public:
  using Evaluator = std::function<Complex(double)>;

  explicit FunctionHandle(Evaluator evaluator, Interval domain = Interval::real_line(),
                          Parity parity_hint = Parity::none);

  /// Throws DomainError outside the declared domain.
  Complex operator()(double x) const;
  double real(double x) const { return (*this)(x).real(); }

  const Interval& domain() const { return domain_; }
  Parity parity_hint() const { return parity_; }

  bool has_derivative() const { return derivative_ != nullptr; }
  /// Number of analytic derivatives available through the chain.
  int derivative_depth() const;
  const FunctionHandle& derivative() const;
  FunctionHandle with_derivative(FunctionHandle derivative) const;
  FunctionHandle with_parity(Parity parity) const;

 private:
  std::shared_ptr<const Evaluator> evaluator_;
  Interval domain_;
  Parity parity_;
  std::shared_ptr<const FunctionHandle> derivative_;
};

FunctionHandle constant_function(Complex value);
/// x^n with its analytic derivative chain.
FunctionHandle monomial(int n, Complex coefficient = 1.0);

inline constexpr double kFirstDerivativeStep = 1e-4;
inline constexpr double kSecondDerivativeStep = 1e-3;

/// f'(x): analytic when carried, otherwise a 4th-order stencil. Central when
/// x +/- 2h lies inside both f's domain and `window`, one-sided otherwise.
Complex first_derivative(const FunctionHandle& f, double x, double h = kFirstDerivativeStep,
                         Interval window = Interval::real_line());

/// f''(x): analytic chain when available, otherwise the 5-point 4th-order stencil.
Complex second_derivative(const FunctionHandle& f, double x, double h = kSecondDerivativeStep);

}  // namespace deforma
