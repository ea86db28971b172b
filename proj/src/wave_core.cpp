#include "hmmwave/wave_core.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace hmmwave {

void require_cfl(double dt, double h, double max_coeff) {
  const double c = dt * std::sqrt(max_coeff) / h;
  if (!(c <= kCflLimit * (1.0 + 1e-12))) {
    throw std::invalid_argument("CFL violation: dt sqrt(max A)/h = " +
                                std::to_string(c) + " exceeds 6/7");
  }
}

double fd4_halfpoint_derivative(const Eigen::VectorXd& v, Eigen::Index m,
                                double h) {
  const Eigen::Index n = v.size();
  auto w = [n](Eigen::Index i) { return ((i % n) + n) % n; };
  return (v(w(m - 2)) - 27.0 * v(w(m - 1)) + 27.0 * v(w(m)) - v(w(m + 1))) /
         (24.0 * h);
}

double fd3_halfpoint_third_derivative(const Eigen::VectorXd& v, Eigen::Index m,
                                      double h) {
  const Eigen::Index n = v.size();
  auto w = [n](Eigen::Index i) { return ((i % n) + n) % n; };
  return (v(w(m + 1)) - 3.0 * v(w(m)) + 3.0 * v(w(m - 1)) - v(w(m - 2))) /
         (h * h * h);
}

namespace {

void fill_fluxes(const Eigen::VectorXd& u, const FluxProvider& flux,
                 Eigen::VectorXd& g) {
  const Eigen::Index n = u.size();
  for (Eigen::Index m = 0; m < n; ++m) g(m) = flux(u, m);
}

}  // namespace

void add_flux_divergence(const Eigen::VectorXd& g, double scale,
                         Eigen::VectorXd& out) {
  const Eigen::Index n = g.size();
  auto w = [n](Eigen::Index i) { return ((i % n) + n) % n; };
  // Interior m = 1 .. n-3 vectorized; the three wrapping entries separately.
  const Eigen::Index len = n - 3;
  out.segment(1, len) +=
      scale * (-g.segment(3, len) + 27.0 * g.segment(2, len) -
               27.0 * g.segment(1, len) + g.segment(0, len));
  for (Eigen::Index m : {Eigen::Index(0), n - 2, n - 1}) {
    out(m) += scale * (-g(w(m + 2)) + 27.0 * g(w(m + 1)) - 27.0 * g(m) +
                       g(w(m - 1)));
  }
}

WaveField leapfrog_step(const WaveField& w, const FluxProvider& flux,
                        double max_coeff) {
  if (!(w.dt > 0.0)) throw std::invalid_argument("leapfrog_step: dt must be > 0");
  require_cfl(w.dt, w.grid.h(), max_coeff);

  WaveField next;
  next.grid = w.grid;
  next.dt = w.dt;
  next.t = w.t + w.dt;
  next.u_prev = w.u_curr;
  next.u_curr = 2.0 * w.u_curr - w.u_prev;

  Eigen::VectorXd g(w.grid.n);
  fill_fluxes(w.u_curr, flux, g);
  add_flux_divergence(g, w.dt * w.dt / (24.0 * w.grid.h()), next.u_curr);
  return next;
}

WaveField leapfrog_start(const Grid1D& grid, const Eigen::VectorXd& u0,
                         double dt, const FluxProvider& flux,
                         double max_coeff) {
  if (grid.n < 8) throw std::invalid_argument("grid needs at least 8 cells");
  if (u0.size() != grid.n) throw std::invalid_argument("initial data size mismatch");
  require_cfl(dt, grid.h(), max_coeff);

  WaveField w;
  w.grid = grid;
  w.dt = dt;
  w.t = dt;
  w.u_prev = u0;
  w.u_curr = u0;

  Eigen::VectorXd g(grid.n);
  fill_fluxes(u0, flux, g);
  add_flux_divergence(g, dt * dt / (48.0 * grid.h()), w.u_curr);
  return w;
}

Trajectory run_leapfrog_from_rest(const Grid1D& grid,
                                  const Eigen::VectorXd& u0, double dt,
                                  Eigen::Index n_steps,
                                  const FluxProvider& flux, double max_coeff,
                                  Eigen::Index stride) {
  require_cfl(dt, grid.h(), max_coeff);

  Trajectory traj;
  traj.times.push_back(0.0);
  traj.snapshots.push_back(u0);

  if (n_steps == 0) {
    traj.final_state = WaveField{grid, u0, u0, 0.0, dt};
    return traj;
  }

  // Three-buffer loop with `leapfrog_step` semantics, no per-step copies.
  Eigen::VectorXd prev = u0;
  Eigen::VectorXd curr = u0;
  Eigen::VectorXd g(grid.n);
  const double h = grid.h();

  fill_fluxes(u0, flux, g);
  add_flux_divergence(g, dt * dt / (48.0 * h), curr);

  for (Eigen::Index k = 1; k < n_steps; ++k) {
    if (stride > 0 && k % stride == 0) {
      traj.times.push_back(double(k) * dt);
      traj.snapshots.push_back(curr);
    }
    fill_fluxes(curr, flux, g);
    Eigen::VectorXd next = 2.0 * curr - prev;
    add_flux_divergence(g, dt * dt / (24.0 * h), next);
    prev.swap(curr);
    curr.swap(next);
  }

  traj.times.push_back(double(n_steps) * dt);
  traj.snapshots.push_back(curr);
  traj.final_state = WaveField{grid, prev, curr, double(n_steps) * dt, dt};
  return traj;
}

namespace {

struct StepPlan {
  Eigen::Index n_steps;
  double dt;
};

// Integer step count landing exactly on T with dt as close to lambda h
// as possible.
StepPlan plan_steps(double T, double lambda, double h) {
  if (T <= 0.0) return {0, lambda * h};
  const auto n = Eigen::Index(std::llround(T / (lambda * h)));
  const Eigen::Index steps = std::max<Eigen::Index>(n, 1);
  return {steps, T / double(steps)};
}

Eigen::VectorXd sample_nodes(const Grid1D& grid,
                             const std::function<double(double)>& f) {
  Eigen::VectorXd u(grid.n);
  for (Eigen::Index i = 0; i < grid.n; ++i) u(i) = f(grid.node(i));
  return u;
}

}  // namespace

Trajectory run_dns(const Material& m, double eps,
                   const std::function<double(double)>& f, double T,
                   int rho_eps, double lambda, Eigen::Index snapshot_stride) {
  if (rho_eps < 16) {
    throw std::invalid_argument("run_dns: rho_eps must be >= 16");
  }
  Grid1D grid;
  grid.n = std::max<Eigen::Index>(Eigen::Index(std::llround(rho_eps / eps)), 8);
  const double h = grid.h();

  Eigen::VectorXd a_half(grid.n);
  for (Eigen::Index j = 0; j < grid.n; ++j) {
    a_half(j) = material_eval(m, grid.half_point(j), eps);
  }
  FluxProvider flux = [a_half, h](const Eigen::VectorXd& u, Eigen::Index j) {
    return a_half(j) * fd4_halfpoint_derivative(u, j, h);
  };

  const StepPlan plan = plan_steps(T, lambda, h);
  return run_leapfrog_from_rest(grid, sample_nodes(grid, f), plan.dt,
                                plan.n_steps, flux, max_value(m),
                                snapshot_stride);
}

Trajectory run_homogenized(const Material& m,
                           const std::function<double(double)>& f, double T,
                           int rho, double lambda,
                           Eigen::Index snapshot_stride) {
  Grid1D grid;
  grid.n = rho;
  const double h = grid.h();

  Eigen::VectorXd abar_half(grid.n);
  for (Eigen::Index j = 0; j < grid.n; ++j) {
    abar_half(j) = harmonic_mean_barA(m, grid.half_point(j));
  }
  FluxProvider flux = [abar_half, h](const Eigen::VectorXd& u, Eigen::Index j) {
    return abar_half(j) * fd4_halfpoint_derivative(u, j, h);
  };

  const StepPlan plan = plan_steps(T, lambda, h);
  return run_leapfrog_from_rest(grid, sample_nodes(grid, f), plan.dt,
                                plan.n_steps, flux, abar_half.maxCoeff(),
                                snapshot_stride);
}

Trajectory run_effective(const Material&, double eps,
                         const std::function<double(double)>& f, double T,
                         int rho, double lambda,
                         const std::function<EffectiveCoeffs(double)>& coeffs,
                         Eigen::Index snapshot_stride) {
  Grid1D grid;
  grid.n = rho;
  const double h = grid.h();
  if (h < eps / 4.0) {
    throw std::invalid_argument(
        "run_effective: grid too fine for the ill-posed dispersive term "
        "(requires h >= eps/4)");
  }

  Eigen::VectorXd abar_half(grid.n), beta_half(grid.n);
  for (Eigen::Index j = 0; j < grid.n; ++j) {
    const EffectiveCoeffs c = coeffs(grid.half_point(j));
    abar_half(j) = c.barA;
    beta_half(j) = c.beta;
  }
  const double eps2 = eps * eps;
  FluxProvider flux = [abar_half, beta_half, eps2,
                       h](const Eigen::VectorXd& u, Eigen::Index j) {
    return abar_half(j) * fd4_halfpoint_derivative(u, j, h) +
           eps2 * beta_half(j) * fd3_halfpoint_third_derivative(u, j, h);
  };

  const StepPlan plan = plan_steps(T, lambda, h);
  return run_leapfrog_from_rest(grid, sample_nodes(grid, f), plan.dt,
                                plan.n_steps, flux, abar_half.maxCoeff(),
                                snapshot_stride);
}

double l2_distance(const Eigen::VectorXd& a, const Eigen::VectorXd& b,
                   double h) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("l2_distance: length mismatch");
  }
  return std::sqrt(h * (a - b).squaredNorm());
}

Eigen::VectorXd resample_periodic(const Eigen::VectorXd& u, const Grid1D& from,
                                  const Grid1D& to) {
  Eigen::VectorXd out(to.n);
  const double len = from.b - from.a;
  for (Eigen::Index i = 0; i < to.n; ++i) {
    double s = (to.node(i) - from.a) / len;
    s -= std::floor(s);
    const double pos = s * double(from.n);
    const auto i0 = Eigen::Index(std::floor(pos));
    const double frac = pos - double(i0);
    out(i) = (1.0 - frac) * u(from.wrap(i0)) + frac * u(from.wrap(i0 + 1));
  }
  return out;
}

double gaussian_pulse_pair(double x) {
  return std::exp(-100.0 * x * x) + std::exp(-100.0 * (1.0 - x) * (1.0 - x));
}

}  // namespace hmmwave
