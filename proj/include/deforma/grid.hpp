#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "deforma/function.hpp"

namespace deforma {

/// Uniform, strictly increasing abscissae.
class Grid {
 public:
  /// n >= 2 points from lo to hi inclusive.
  static Grid uniform(double lo, double hi, std::size_t n);
  /// Validates uniform spacing to 1e-12 relative.
  static Grid from_points(std::vector<double> abscissae);

  const std::vector<double>& abscissae() const { return abscissae_; }
  double spacing() const { return spacing_; }
  std::size_t size() const { return abscissae_.size(); }
  double operator[](std::size_t i) const { return abscissae_[i]; }

 private:
  Grid(std::vector<double> abscissae, double spacing)
      : abscissae_(std::move(abscissae)), spacing_(spacing) {}

  std::vector<double> abscissae_;
  double spacing_;
};

using Meta = std::map<std::string, std::string>;

/// Values sampled on a grid plus descriptive metadata.
class Profile {
 public:
  Profile(Grid grid, std::vector<Complex> values, Meta meta = {});

  const Grid& grid() const { return grid_; }
  const std::vector<Complex>& values() const { return values_; }
  const Meta& meta() const { return meta_; }
  std::size_t size() const { return values_.size(); }

 private:
  Grid grid_;
  std::vector<Complex> values_;
  Meta meta_;
};

/// Fixed "%.12g" rendering used for metadata and CSV cells.
std::string format_number(double value);

}  // namespace deforma
