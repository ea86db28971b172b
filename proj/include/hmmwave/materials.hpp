#pragma once

#include <string>
#include <variant>

namespace hmmwave {

/// A(x, y) = c.
struct Constant {
  double c = 1.0;
};

/// A(y) = alpha + beta_amp * sin(2 pi y); no slow dependence.
struct SineFast {
  double alpha = 1.0;
  double beta_amp = 0.0;
};

/// A(x, y) = alpha + slow_amp * cos(2 pi x) + fast_amp * sin(2 pi y).
struct SumSlowFast {
  double alpha = 1.0;
  double slow_amp = 0.0;
  double fast_amp = 0.0;
};

/// A(x, y) = fast(y) * (c0 + c1 * (cos(2 pi x) - 1)).
struct ProductSlowFast {
  SineFast fast;
  double c0 = 1.0;
  double c1 = 0.0;
};

using Material = std::variant<Constant, SineFast, SumSlowFast, ProductSlowFast>;

/// Fast profile with the slow variable frozen.  Every built-in family
/// freezes to the affine-in-sine form base + amp * sin(2 pi y).
struct FrozenProfile {
  double base = 1.0;
  double amp = 0.0;

  double operator()(double y) const;
};

/// A(x, y).
double material_value(const Material& m, double x, double y);

/// A(x, x / eps).
double material_eval(const Material& m, double x, double eps);

/// y -> A(x_slow, y), 1-periodic.
FrozenProfile frozen_fast_profile(const Material& m, double x_slow);

/// Harmonic mean over the fast variable, Abar(x) = (int_0^1 dy / A(x, y))^-1.
/// Uses the closed form sqrt(base^2 - amp^2) of the frozen profile.
double harmonic_mean_barA(const Material& m, double x);

/// Quadrature fallback: harmonic mean of an arbitrary positive 1-periodic
/// profile by periodic trapezoid with 2^12 points.
template <class Fn>
double harmonic_mean(const Fn& profile) {
  constexpr int kPoints = 1 << 12;
  double acc = 0.0;
  for (int j = 0; j < kPoints; ++j) acc += 1.0 / profile(double(j) / kPoints);
  return kPoints / acc;
}

/// Throws std::invalid_argument unless min A > 0 (dense per-axis sampling).
void validate_material(const Material& m);

double min_value(const Material& m);
double max_value(const Material& m);

/// True when A(x, y) actually depends on the slow variable x.
bool has_slow_variation(const Material& m);

/// Registry materials of the experiments.
Material material_A1();
Material material_A2();
Material material_A3();

/// Parses "A1" | "A2" | "A3" | "constant:<c>" | "sinefast:<alpha>,<beta>".
Material parse_material(const std::string& key);

}  // namespace hmmwave
