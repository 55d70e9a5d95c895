#pragma once

// Real functions on an interval used for the weight theta and the forcing f.
// Named presets carry an analytic antiderivative so that balance and L1
// checks have exact oracles; node samples fall back to quadrature.

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "dwell/grid.hpp"

namespace dwell {

class Profile {
 public:
  struct Constant {
    double value = 0.0;
  };
  // amplitude * sin(frequency x + phase), or cos when `cosine` is set.
  struct Sinusoid {
    double amplitude = 1.0;
    double frequency = 1.0;
    double phase = 0.0;
    bool cosine = false;
  };
  // sum_k coefficients[k] x^(lowest_power + k); negative powers allowed on
  // intervals that exclude 0.
  struct Laurent {
    int lowest_power = 0;
    std::vector<double> coefficients;
  };
  struct Samples {
    Grid grid;
    std::vector<double> values;
  };
  using Form = std::variant<Constant, Sinusoid, Laurent, Samples>;

  static Profile constant(double value);
  static Profile sine(double amplitude, double frequency = 1.0, double phase = 0.0);
  static Profile cosine(double amplitude, double frequency = 1.0, double phase = 0.0);
  static Profile polynomial(std::vector<double> coefficients, int lowest_power = 0);
  static Profile samples(Grid grid, std::vector<double> values);

  double operator()(double x) const;

  // Some primitive of the profile, when one is available in closed form.
  std::optional<double> antiderivative(double x) const;
  bool has_antiderivative() const;

  // x^k times this profile. Polynomials absorb the factor exactly.
  Profile times_power(int k) const;
  Profile scaled(double factor) const;

  // Node values. Sampled profiles must live on the requested grid.
  std::vector<double> sample_on(const Grid& grid) const;

  // Throws DomainError when the profile is undefined somewhere on [a, b]
  // (negative powers across 0) or sampled on another interval.
  void require_defined_on(double a, double b) const;

  std::string kind() const;
  const Form& form() const { return form_; }
  int extra_power() const { return power_; }
  double factor() const { return scale_; }

 private:
  explicit Profile(Form form) : form_(std::move(form)) {}

  Form form_;
  int power_ = 0;
  double scale_ = 1.0;
};

}  // namespace dwell
