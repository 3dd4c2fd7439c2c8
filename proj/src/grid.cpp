#include "deforma/grid.hpp"

#include <cmath>
#include <charconv>
#include <limits>
#include <stdexcept>

namespace deforma {

Grid Grid::uniform(double lo, double hi, std::size_t n) {
  if (n < 2) throw std::invalid_argument("Grid: need at least two points");
  if (!(hi > lo)) throw std::invalid_argument("Grid: require hi > lo");
  const double h = (hi - lo) / static_cast<double>(n - 1);
  std::vector<double> xs(n);
  for (std::size_t i = 0; i < n; ++i) xs[i] = lo + h * static_cast<double>(i);
  xs.back() = hi;
  return Grid(std::move(xs), h);
}

Grid Grid::from_points(std::vector<double> abscissae) {
  if (abscissae.size() < 2) throw std::invalid_argument("Grid: need at least two points");
  const double h = (abscissae.back() - abscissae.front()) / static_cast<double>(abscissae.size() - 1);
  if (!(h > 0)) throw std::invalid_argument("Grid: abscissae must increase");
  for (std::size_t i = 0; i + 1 < abscissae.size(); ++i) {
    const double step = abscissae[i + 1] - abscissae[i];
    const double rounding = 4.0 * std::numeric_limits<double>::epsilon() *
                            std::max(std::abs(abscissae[i]), std::abs(abscissae[i + 1]));
    if (std::abs(step - h) > 1e-12 * h + rounding) {
      throw std::invalid_argument("Grid: abscissae are not uniformly spaced");
    }
  }
  return Grid(std::move(abscissae), h);
}

Profile::Profile(Grid grid, std::vector<Complex> values, Meta meta)
    : grid_(std::move(grid)), values_(std::move(values)), meta_(std::move(meta)) {
  if (values_.size() != grid_.size()) {
    throw std::invalid_argument("Profile: value count does not match grid size");
  }
}

std::string format_number(double value) {
  // to_chars is locale independent; general format with precision 12 is %.12g.
  char buf[64];
  const auto result = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 12);
  return std::string(buf, result.ptr);
}

}  // namespace deforma
