#include "deforma/polygauss.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace deforma {

DPoly::DPoly(Rational constant) : coeffs_{std::move(constant)} { trim(); }

DPoly::DPoly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

DPoly DPoly::symbol() { return DPoly(std::vector<Rational>{Rational(0), Rational(1)}); }

void DPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

double DPoly::evaluate(double D) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc = acc * D + it->convert_to<double>();
  }
  return acc;
}

std::string DPoly::to_string() const {
  if (coeffs_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    Rational c = coeffs_[k];
    if (c == 0) continue;
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    if (c < 0) c = -c;
    if (k == 0 || c != 1) os << c;
    if (k >= 1) os << (k == 0 || c != 1 ? "*D" : "D");
    if (k >= 2) os << "^" << k;
    first = false;
  }
  return os.str();
}

DPoly operator+(const DPoly& a, const DPoly& b) {
  std::vector<Rational> out(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) out[i] += a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) out[i] += b.coeffs_[i];
  return DPoly(std::move(out));
}

DPoly operator-(const DPoly& a) {
  std::vector<Rational> out = a.coeffs_;
  for (auto& c : out) c = -c;
  return DPoly(std::move(out));
}

DPoly operator-(const DPoly& a, const DPoly& b) { return a + (-b); }

DPoly operator*(const DPoly& a, const DPoly& b) {
  if (a.is_zero() || b.is_zero()) return DPoly();
  std::vector<Rational> out(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return DPoly(std::move(out));
}

PolyGauss::PolyGauss(std::vector<DPoly> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

PolyGauss PolyGauss::gaussian() { return PolyGauss({DPoly(1)}); }

void PolyGauss::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

Parity PolyGauss::parity() const {
  bool has_even = false;
  bool has_odd = false;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    if (coeffs_[k].is_zero()) continue;
    (k % 2 == 0 ? has_even : has_odd) = true;
  }
  if (has_even && has_odd) return Parity::none;
  return has_odd ? Parity::odd : Parity::even;
}

PolyGauss PolyGauss::multiply_by_xi() const {
  if (is_zero()) return {};
  std::vector<DPoly> out;
  out.reserve(coeffs_.size() + 1);
  out.emplace_back();
  out.insert(out.end(), coeffs_.begin(), coeffs_.end());
  return PolyGauss(std::move(out));
}

PolyGauss PolyGauss::differentiate() const {
  std::vector<DPoly> out(coeffs_.size() + 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) {
    out[k - 1] = out[k - 1] + DPoly(static_cast<int>(k)) * coeffs_[k];
  }
  for (std::size_t k = 0; k < coeffs_.size(); ++k) out[k + 1] = out[k + 1] - coeffs_[k];
  return PolyGauss(std::move(out));
}

PolyGauss PolyGauss::divide_odd_part_by_xi() const {
  std::vector<DPoly> out(coeffs_.size());
  for (std::size_t k = 1; k < coeffs_.size(); k += 2) out[k - 1] = coeffs_[k];
  return PolyGauss(std::move(out));
}

PolyGauss PolyGauss::reflect() const {
  std::vector<DPoly> out = coeffs_;
  for (std::size_t k = 1; k < out.size(); k += 2) out[k] = -out[k];
  return PolyGauss(std::move(out));
}

PolyGauss PolyGauss::even_part() const {
  std::vector<DPoly> out = coeffs_;
  for (std::size_t k = 1; k < out.size(); k += 2) out[k] = DPoly();
  return PolyGauss(std::move(out));
}

PolyGauss PolyGauss::odd_part() const {
  std::vector<DPoly> out = coeffs_;
  for (std::size_t k = 0; k < out.size(); k += 2) out[k] = DPoly();
  return PolyGauss(std::move(out));
}

PolyGauss operator+(const PolyGauss& a, const PolyGauss& b) {
  std::vector<DPoly> out(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) out[i] = out[i] + a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) out[i] = out[i] + b.coeffs_[i];
  return PolyGauss(std::move(out));
}

PolyGauss operator-(const PolyGauss& a, const PolyGauss& b) { return a + DPoly(-1) * b; }

PolyGauss operator*(const DPoly& s, const PolyGauss& p) {
  std::vector<DPoly> out = p.coeffs_;
  for (auto& c : out) c = s * c;
  return PolyGauss(std::move(out));
}

double PolyGauss::evaluate(double xi, double D) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * xi + it->evaluate(D);
  return acc * std::exp(-0.5 * xi * xi);
}

FunctionHandle PolyGauss::to_function(double D, double scale, int derivative_depth) const {
  // Coefficients are collapsed to doubles once; the exact form stays in *this.
  std::vector<double> numeric(coeffs_.size());
  for (std::size_t k = 0; k < coeffs_.size(); ++k) numeric[k] = coeffs_[k].evaluate(D);
  FunctionHandle f(
      [numeric = std::move(numeric), scale](double xi) {
        double acc = 0.0;
        for (auto it = numeric.rbegin(); it != numeric.rend(); ++it) acc = acc * xi + *it;
        return Complex(scale * acc * std::exp(-0.5 * xi * xi), 0.0);
      },
      Interval::real_line(), parity());
  if (derivative_depth <= 0) return f;
  return f.with_derivative(differentiate().to_function(D, scale, derivative_depth - 1));
}

std::string PolyGauss::to_string() const {
  if (coeffs_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    if (coeffs_[k].is_zero()) continue;
    if (!first) os << " + ";
    os << "[" << coeffs_[k].to_string() << "]*xi^" << k;
    first = false;
  }
  os << " * exp(-xi^2/2)";
  return os.str();
}

}  // namespace deforma
