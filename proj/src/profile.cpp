#include "dwell/profile.hpp"

#include <algorithm>
#include <cmath>

#include "dwell/errors.hpp"

namespace dwell {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double laurent_value(const Profile::Laurent& poly, double x) {
  // Horner on the non-negative part, then the x^lowest factor.
  double acc = 0.0;
  for (auto it = poly.coefficients.rbegin(); it != poly.coefficients.rend(); ++it) {
    acc = acc * x + *it;
  }
  return poly.lowest_power == 0 ? acc : acc * std::pow(x, poly.lowest_power);
}

double laurent_primitive(const Profile::Laurent& poly, double x) {
  double acc = 0.0;
  for (std::size_t k = 0; k < poly.coefficients.size(); ++k) {
    const int power = poly.lowest_power + static_cast<int>(k);
    const double c = poly.coefficients[k];
    if (c == 0.0) continue;
    if (power == -1) {
      acc += c * std::log(std::abs(x));
    } else {
      acc += c * std::pow(x, power + 1) / (power + 1);
    }
  }
  return acc;
}

double linear_lookup(const Profile::Samples& s, double x) {
  const Grid& g = s.grid;
  if (x <= g.a()) return s.values.front();
  if (x >= g.b()) return s.values.back();
  const double t = (x - g.a()) / g.spacing();
  const auto i = std::min(static_cast<std::size_t>(t), g.intervals() - 1);
  const double w = t - static_cast<double>(i);
  return (1.0 - w) * s.values[i] + w * s.values[i + 1];
}

}  // namespace

Profile Profile::constant(double value) { return Profile(Constant{value}); }

Profile Profile::sine(double amplitude, double frequency, double phase) {
  return Profile(Sinusoid{amplitude, frequency, phase, false});
}

Profile Profile::cosine(double amplitude, double frequency, double phase) {
  return Profile(Sinusoid{amplitude, frequency, phase, true});
}

Profile Profile::polynomial(std::vector<double> coefficients, int lowest_power) {
  if (coefficients.empty()) coefficients.push_back(0.0);
  return Profile(Laurent{lowest_power, std::move(coefficients)});
}

Profile Profile::samples(Grid grid, std::vector<double> values) {
  if (values.size() != grid.size()) {
    throw GridMismatch("sampled profile needs one value per grid node");
  }
  for (double v : values) {
    if (!std::isfinite(v)) throw QuadratureError("sampled profile holds a non-finite value");
  }
  return Profile(Samples{grid, std::move(values)});
}

double Profile::operator()(double x) const {
  const double base = std::visit(
      Overloaded{
          [](const Constant& c) { return c.value; },
          [x](const Sinusoid& s) {
            const double arg = s.frequency * x + s.phase;
            return s.amplitude * (s.cosine ? std::cos(arg) : std::sin(arg));
          },
          [x](const Laurent& p) { return laurent_value(p, x); },
          [x](const Samples& s) { return linear_lookup(s, x); },
      },
      form_);
  const double weight = power_ == 0 ? 1.0 : std::pow(x, power_);
  return scale_ * weight * base;
}

bool Profile::has_antiderivative() const {
  if (std::holds_alternative<Samples>(form_)) return false;
  return power_ == 0;
}

std::optional<double> Profile::antiderivative(double x) const {
  if (!has_antiderivative()) return std::nullopt;
  const double base = std::visit(
      Overloaded{
          [x](const Constant& c) { return c.value * x; },
          [x](const Sinusoid& s) {
            const double arg = s.frequency * x + s.phase;
            if (s.frequency == 0.0) {
              return s.amplitude * (s.cosine ? std::cos(s.phase) : std::sin(s.phase)) * x;
            }
            return s.cosine ? s.amplitude * std::sin(arg) / s.frequency
                            : -s.amplitude * std::cos(arg) / s.frequency;
          },
          [x](const Laurent& p) { return laurent_primitive(p, x); },
          [](const Samples&) { return 0.0; },
      },
      form_);
  return scale_ * base;
}

Profile Profile::times_power(int k) const {
  Profile out = *this;
  if (k == 0) return out;
  if (const auto* c = std::get_if<Constant>(&form_)) {
    out.form_ = Laurent{k + power_, {c->value}};
    out.power_ = 0;
  } else if (const auto* p = std::get_if<Laurent>(&form_)) {
    out.form_ = Laurent{p->lowest_power + k + power_, p->coefficients};
    out.power_ = 0;
  } else {
    out.power_ += k;
  }
  return out;
}

Profile Profile::scaled(double factor) const {
  Profile out = *this;
  out.scale_ *= factor;
  return out;
}

std::vector<double> Profile::sample_on(const Grid& grid) const {
  if (const auto* s = std::get_if<Samples>(&form_)) {
    if (!(s->grid == grid)) {
      throw GridMismatch("sampled profile was given on a different grid");
    }
    std::vector<double> out = s->values;
    for (std::size_t i = 0; i < out.size(); ++i) {
      const double weight = power_ == 0 ? 1.0 : std::pow(grid.node(i), power_);
      out[i] *= scale_ * weight;
    }
    return out;
  }
  return sample(grid, [this](double x) { return (*this)(x); });
}

void Profile::require_defined_on(double a, double b) const {
  bool negative_power = power_ < 0;
  if (const auto* p = std::get_if<Laurent>(&form_)) negative_power |= p->lowest_power < 0;
  if (negative_power && a <= 0.0 && b >= 0.0) {
    throw DomainError("profile with negative powers is undefined at x = 0 inside [a, b]");
  }
  if (const auto* s = std::get_if<Samples>(&form_)) {
    if (s->grid.a() != a || s->grid.b() != b) {
      throw DomainError("sampled profile does not cover [a, b]");
    }
  }
}

std::string Profile::kind() const {
  return std::visit(Overloaded{
                        [](const Constant&) { return std::string("constant"); },
                        [](const Sinusoid& s) { return std::string(s.cosine ? "cosine" : "sine"); },
                        [](const Laurent&) { return std::string("polynomial"); },
                        [](const Samples&) { return std::string("samples"); },
                    },
                    form_);
}

}  // namespace dwell
