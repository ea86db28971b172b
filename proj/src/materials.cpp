#include "hmmwave/materials.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hmmwave {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double slow_factor(const ProductSlowFast& m, double x) {
  return m.c0 + m.c1 * (std::cos(kTwoPi * x) - 1.0);
}

}  // namespace

double FrozenProfile::operator()(double y) const {
  return base + amp * std::sin(kTwoPi * y);
}

double material_value(const Material& m, double x, double y) {
  return std::visit(
      [&](const auto& v) -> double {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Constant>) {
          return v.c;
        } else if constexpr (std::is_same_v<T, SineFast>) {
          return v.alpha + v.beta_amp * std::sin(kTwoPi * y);
        } else if constexpr (std::is_same_v<T, SumSlowFast>) {
          return v.alpha + v.slow_amp * std::cos(kTwoPi * x) +
                 v.fast_amp * std::sin(kTwoPi * y);
        } else {
          return (v.fast.alpha + v.fast.beta_amp * std::sin(kTwoPi * y)) *
                 slow_factor(v, x);
        }
      },
      m);
}

double material_eval(const Material& m, double x, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("material_eval: eps must be > 0");
  return material_value(m, x, x / eps);
}

FrozenProfile frozen_fast_profile(const Material& m, double x_slow) {
  return std::visit(
      [&](const auto& v) -> FrozenProfile {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Constant>) {
          return {v.c, 0.0};
        } else if constexpr (std::is_same_v<T, SineFast>) {
          return {v.alpha, v.beta_amp};
        } else if constexpr (std::is_same_v<T, SumSlowFast>) {
          return {v.alpha + v.slow_amp * std::cos(kTwoPi * x_slow), v.fast_amp};
        } else {
          const double s = slow_factor(v, x_slow);
          return {v.fast.alpha * s, v.fast.beta_amp * s};
        }
      },
      m);
}

double harmonic_mean_barA(const Material& m, double x) {
  const FrozenProfile fp = frozen_fast_profile(m, x);
  if (fp.amp == 0.0) return fp.base;
  return std::sqrt(fp.base * fp.base - fp.amp * fp.amp);
}

namespace {

constexpr int kSamplesPerAxis = 10000;

// Extremum of the frozen profile's base over one slow period.
template <class Fn>
std::pair<double, double> scan_extrema(const Fn& f) {
  double lo = f(0.0);
  double hi = lo;
  for (int j = 1; j < kSamplesPerAxis; ++j) {
    const double v = f(double(j) / kSamplesPerAxis);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return {lo, hi};
}

std::pair<double, double> material_extrema(const Material& m) {
  // A is separable in (x, y) for every family, so per-axis scans suffice.
  return std::visit(
      [](const auto& v) -> std::pair<double, double> {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Constant>) {
          return {v.c, v.c};
        } else if constexpr (std::is_same_v<T, SineFast>) {
          return scan_extrema([&](double y) {
            return v.alpha + v.beta_amp * std::sin(kTwoPi * y);
          });
        } else if constexpr (std::is_same_v<T, SumSlowFast>) {
          auto [sl, sh] = scan_extrema(
              [&](double x) { return v.slow_amp * std::cos(kTwoPi * x); });
          auto [fl, fh] = scan_extrema(
              [&](double y) { return v.fast_amp * std::sin(kTwoPi * y); });
          return {v.alpha + sl + fl, v.alpha + sh + fh};
        } else {
          auto [sl, sh] = scan_extrema(
              [&](double x) { return v.c0 + v.c1 * (std::cos(kTwoPi * x) - 1.0); });
          auto [fl, fh] = scan_extrema([&](double y) {
            return v.fast.alpha + v.fast.beta_amp * std::sin(kTwoPi * y);
          });
          double lo = sl * fl, hi = sl * fl;
          for (double a : {sl, sh}) {
            for (double b : {fl, fh}) {
              lo = std::min(lo, a * b);
              hi = std::max(hi, a * b);
            }
          }
          return {lo, hi};
        }
      },
      m);
}

}  // namespace

double min_value(const Material& m) { return material_extrema(m).first; }
double max_value(const Material& m) { return material_extrema(m).second; }

void validate_material(const Material& m) {
  if (!(min_value(m) > 0.0)) {
    throw std::invalid_argument("material is not uniformly positive");
  }
}

bool has_slow_variation(const Material& m) {
  return std::visit(
      [](const auto& v) -> bool {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, SumSlowFast>) {
          return v.slow_amp != 0.0;
        } else if constexpr (std::is_same_v<T, ProductSlowFast>) {
          return v.c1 != 0.0;
        } else {
          return false;
        }
      },
      m);
}

Material material_A1() { return SineFast{1.1, 1.0}; }
Material material_A2() { return SumSlowFast{1.1, 0.5, 0.5}; }
Material material_A3() { return ProductSlowFast{SineFast{1.1, 1.0}, 1.5, 0.5}; }

Material parse_material(const std::string& key) {
  Material m;
  if (key == "A1") {
    m = material_A1();
  } else if (key == "A2") {
    m = material_A2();
  } else if (key == "A3") {
    m = material_A3();
  } else if (key.rfind("constant:", 0) == 0) {
    m = Constant{std::stod(key.substr(9))};
  } else if (key.rfind("sinefast:", 0) == 0) {
    const std::string args = key.substr(9);
    const auto comma = args.find(',');
    if (comma == std::string::npos) {
      throw std::invalid_argument("sinefast needs two parameters: " + key);
    }
    m = SineFast{std::stod(args.substr(0, comma)),
                 std::stod(args.substr(comma + 1))};
  } else {
    throw std::invalid_argument("unknown material: " + key);
  }
  validate_material(m);
  return m;
}

}  // namespace hmmwave
