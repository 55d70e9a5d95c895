#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace dwell {

// Uniform nodes x_0 = a, ..., x_m = b with an even number m of intervals.
class Grid {
 public:
  Grid(double a, double b, std::size_t intervals);

  double a() const { return a_; }
  double b() const { return b_; }
  std::size_t intervals() const { return intervals_; }
  std::size_t size() const { return intervals_ + 1; }
  double spacing() const { return (b_ - a_) / static_cast<double>(intervals_); }
  double node(std::size_t i) const;
  std::vector<double> nodes() const;

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  double a_;
  double b_;
  std::size_t intervals_;
};

// Sampled real function with C0 membership metadata. in_c0 is set when both
// endpoint values vanish within 1e-9 max(1, ||values||_inf).
class GridFunction {
 public:
  GridFunction(Grid grid, std::vector<double> values);

  const Grid& grid() const { return grid_; }
  std::span<const double> values() const { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }
  std::size_t size() const { return values_.size(); }
  bool in_c0() const { return in_c0_; }
  double sup_norm() const;

  // Value at an arbitrary x in [a, b] by local cubic Lagrange interpolation.
  double interpolate(double x) const;

 private:
  Grid grid_;
  std::vector<double> values_;
  bool in_c0_;
};

double endpoint_zero_tolerance(std::span<const double> values);

void require_same_grid(const GridFunction& lhs, const GridFunction& rhs);

// Composite Simpson over the whole grid. Throws QuadratureError on
// non-finite samples.
double simpson(const Grid& grid, std::span<const double> samples);
double simpson(const GridFunction& fn);

// Running integral from a to every node: composite Simpson at even nodes,
// previous even node plus a three-point single-interval rule at odd nodes.
// The first entry is exactly 0.
std::vector<double> cumulative_simpson(const Grid& grid, std::span<const double> samples);

template <class Fn>
std::vector<double> sample(const Grid& grid, Fn&& fn) {
  std::vector<double> out(grid.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = fn(grid.node(i));
  return out;
}

}  // namespace dwell
