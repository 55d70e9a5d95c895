#include "dwell/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dwell/errors.hpp"

namespace dwell {

Grid::Grid(double a, double b, std::size_t intervals) : a_(a), b_(b), intervals_(intervals) {
  if (!std::isfinite(a) || !std::isfinite(b) || !(a < b)) {
    throw DomainError("grid requires finite endpoints a < b");
  }
  if (intervals < 2 || intervals % 2 != 0) {
    throw DomainError("grid requires an even interval count >= 2, got " +
                      std::to_string(intervals));
  }
}

double Grid::node(std::size_t i) const {
  if (i == intervals_) return b_;
  return a_ + static_cast<double>(i) * spacing();
}

std::vector<double> Grid::nodes() const {
  return sample(*this, [](double x) { return x; });
}

double endpoint_zero_tolerance(std::span<const double> values) {
  double sup = 0.0;
  for (double v : values) sup = std::max(sup, std::abs(v));
  return 1e-9 * std::max(1.0, sup);
}

GridFunction::GridFunction(Grid grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)), in_c0_(false) {
  if (values_.size() != grid_.size()) {
    throw GridMismatch("grid function has " + std::to_string(values_.size()) +
                       " values for " + std::to_string(grid_.size()) + " nodes");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw QuadratureError("grid function holds a non-finite value");
  }
  const double tol = endpoint_zero_tolerance(values_);
  in_c0_ = std::abs(values_.front()) <= tol && std::abs(values_.back()) <= tol;
}

double GridFunction::sup_norm() const {
  double sup = 0.0;
  for (double v : values_) sup = std::max(sup, std::abs(v));
  return sup;
}

double GridFunction::interpolate(double x) const {
  if (!(x >= grid_.a() && x <= grid_.b())) {
    throw DomainError("interpolation point outside the grid");
  }
  const double h = grid_.spacing();
  const std::size_t last = grid_.intervals();
  auto cell = static_cast<std::size_t>(std::floor((x - grid_.a()) / h));
  cell = std::min(cell, last - 1);
  // Four-point stencil x_{j}..x_{j+3} containing the cell, clipped at the ends.
  std::size_t j = cell == 0 ? 0 : cell - 1;
  j = std::min(j, last >= 3 ? last - 3 : 0);
  const std::size_t count = std::min<std::size_t>(4, grid_.size());
  double result = 0.0;
  for (std::size_t k = 0; k < count; ++k) {
    double basis = 1.0;
    const double xk = grid_.node(j + k);
    for (std::size_t l = 0; l < count; ++l) {
      if (l == k) continue;
      const double xl = grid_.node(j + l);
      basis *= (x - xl) / (xk - xl);
    }
    result += basis * values_[j + k];
  }
  return result;
}

void require_same_grid(const GridFunction& lhs, const GridFunction& rhs) {
  if (!(lhs.grid() == rhs.grid())) throw GridMismatch("grid functions live on different grids");
}

namespace {

void require_samples(const Grid& grid, std::span<const double> samples) {
  if (samples.size() != grid.size()) {
    throw GridMismatch("sample count does not match the grid");
  }
  for (double v : samples) {
    if (!std::isfinite(v)) throw QuadratureError("non-finite sample in quadrature");
  }
}

}  // namespace

double simpson(const Grid& grid, std::span<const double> samples) {
  require_samples(grid, samples);
  const std::size_t m = grid.intervals();
  double odd = 0.0;
  double even = 0.0;
  for (std::size_t i = 1; i < m; i += 2) odd += samples[i];
  for (std::size_t i = 2; i < m; i += 2) even += samples[i];
  return grid.spacing() / 3.0 * (samples[0] + 4.0 * odd + 2.0 * even + samples[m]);
}

double simpson(const GridFunction& fn) { return simpson(fn.grid(), fn.values()); }

std::vector<double> cumulative_simpson(const Grid& grid, std::span<const double> samples) {
  require_samples(grid, samples);
  const double h = grid.spacing();
  std::vector<double> out(grid.size(), 0.0);
  for (std::size_t i = 2; i < out.size(); i += 2) {
    out[i] = out[i - 2] + h / 3.0 * (samples[i - 2] + 4.0 * samples[i - 1] + samples[i]);
  }
  for (std::size_t i = 1; i < out.size(); i += 2) {
    // Quadratic through x_{i-1}, x_i, x_{i+1} integrated over [x_{i-1}, x_i].
    out[i] = out[i - 1] + h / 12.0 * (5.0 * samples[i - 1] + 8.0 * samples[i] - samples[i + 1]);
  }
  return out;
}

}  // namespace dwell
