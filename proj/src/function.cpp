#include "deforma/function.hpp"

#include <cmath>
#include <utility>

#include "deforma/errors.hpp"

namespace deforma {

const char* to_string(Parity parity) {
  switch (parity) {
    case Parity::even: return "even";
    case Parity::odd: return "odd";
    case Parity::none: return "none";
  }
  return "none";
}

FunctionHandle::FunctionHandle(Evaluator evaluator, Interval domain, Parity parity_hint)
    : evaluator_(std::make_shared<const Evaluator>(std::move(evaluator))),
      domain_(domain),
      parity_(parity_hint) {
  if (!*evaluator_) throw std::invalid_argument("FunctionHandle: empty evaluator");
  if (!(domain_.lo <= domain_.hi)) throw std::invalid_argument("FunctionHandle: empty domain");
}

Complex FunctionHandle::operator()(double x) const {
  if (!domain_.contains(x)) {
    throw DomainError("function evaluated outside its domain at x = " + std::to_string(x));
  }
  return (*evaluator_)(x);
}

int FunctionHandle::derivative_depth() const {
  int depth = 0;
  for (const FunctionHandle* f = this; f->has_derivative(); f = f->derivative_.get()) ++depth;
  return depth;
}

const FunctionHandle& FunctionHandle::derivative() const {
  if (!derivative_) throw std::logic_error("FunctionHandle: no analytic derivative attached");
  return *derivative_;
}

FunctionHandle FunctionHandle::with_derivative(FunctionHandle derivative) const {
  FunctionHandle copy = *this;
  copy.derivative_ = std::make_shared<const FunctionHandle>(std::move(derivative));
  return copy;
}

FunctionHandle FunctionHandle::with_parity(Parity parity) const {
  FunctionHandle copy = *this;
  copy.parity_ = parity;
  return copy;
}

FunctionHandle constant_function(Complex value) {
  FunctionHandle zero([](double) { return Complex{}; }, Interval::real_line(), Parity::even);
  return FunctionHandle([value](double) { return value; }, Interval::real_line(), Parity::even)
      .with_derivative(zero.with_derivative(zero));
}

FunctionHandle monomial(int n, Complex coefficient) {
  if (n < 0) throw DomainError("monomial: negative power");
  const Parity parity = (n % 2 == 0) ? Parity::even : Parity::odd;
  FunctionHandle f([n, coefficient](double x) { return coefficient * std::pow(x, n); },
                   Interval::real_line(), parity);
  if (n == 0) return f.with_derivative(constant_function(0.0));
  return f.with_derivative(monomial(n - 1, coefficient * static_cast<double>(n)));
}

Complex first_derivative(const FunctionHandle& f, double x, double h, Interval window) {
  if (f.has_derivative()) return f.derivative()(x);
  const Interval& dom = f.domain();
  const double lo = std::max(dom.lo, window.lo);
  const double hi = std::min(dom.hi, window.hi);
  if (x - 2 * h >= lo && x + 2 * h <= hi) {
    return (f(x - 2 * h) - 8.0 * f(x - h) + 8.0 * f(x + h) - f(x + 2 * h)) / (12.0 * h);
  }
  if (x + 4 * h <= hi) {
    return (-25.0 * f(x) + 48.0 * f(x + h) - 36.0 * f(x + 2 * h) + 16.0 * f(x + 3 * h) -
            3.0 * f(x + 4 * h)) / (12.0 * h);
  }
  if (x - 4 * h >= lo) {
    return (25.0 * f(x) - 48.0 * f(x - h) + 36.0 * f(x - 2 * h) - 16.0 * f(x - 3 * h) +
            3.0 * f(x - 4 * h)) / (12.0 * h);
  }
  throw DomainError("first_derivative: domain too narrow for the difference stencil");
}

Complex second_derivative(const FunctionHandle& f, double x, double h) {
  if (f.has_derivative()) return first_derivative(f.derivative(), x, kFirstDerivativeStep);
  return (-f(x - 2 * h) + 16.0 * f(x - h) - 30.0 * f(x) + 16.0 * f(x + h) - f(x + 2 * h)) /
         (12.0 * h * h);
}

}  // namespace deforma
