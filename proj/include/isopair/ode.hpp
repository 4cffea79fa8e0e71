#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace isopair {

struct IntegrationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using OdeRhs = std::function<void(double t, const std::vector<double>& y, std::vector<double>& dy)>;

namespace detail {

inline void check_finite(const std::vector<double>& y, double t) {
  for (double v : y)
    if (!std::isfinite(v))
      throw IntegrationError("integration aborted: non-finite state at t=" + std::to_string(t));
}

}  // namespace detail

/// Classical fourth-order step, fixed dt.
inline void rk4_step(const OdeRhs& f, double t, double dt, std::vector<double>& y) {
  const std::size_t n = y.size();
  std::vector<double> k1(n), k2(n), k3(n), k4(n), tmp(n);
  f(t, y, k1);
  for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * dt * k1[i];
  f(t + 0.5 * dt, tmp, k2);
  for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * dt * k2[i];
  f(t + 0.5 * dt, tmp, k3);
  for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + dt * k3[i];
  f(t + dt, tmp, k4);
  for (std::size_t i = 0; i < n; ++i) y[i] += dt / 6.0 * (k1[i] + 2.0 * (k2[i] + k3[i]) + k4[i]);
}

/// Fixed-step RK4 over [0,t_end]; calls sink(t, y) at every node including t=0.
inline void rk4_integrate(const OdeRhs& f, std::vector<double> y, double t_end, double dt,
                          const std::function<void(double, const std::vector<double>&)>& sink) {
  if (dt <= 0.0 || t_end <= 0.0) throw std::invalid_argument("rk4: dt and t_end must be positive");
  const auto steps = static_cast<std::size_t>(std::llround(t_end / dt));
  double t = 0.0;
  sink(t, y);
  for (std::size_t s = 0; s < steps; ++s) {
    rk4_step(f, t, dt, y);
    t = (s + 1) * dt;
    detail::check_finite(y, t);
    sink(t, y);
  }
}

/// Dormand-Prince 5(4) adaptive step with absolute/relative error control.
inline void rk45_integrate(const OdeRhs& f, std::vector<double> y, double t_end, double dt0,
                           double abs_tol, double rel_tol,
                           const std::function<void(double, const std::vector<double>&)>& sink) {
  static const double a[7][6] = {
      {},
      {1.0 / 5},
      {3.0 / 40, 9.0 / 40},
      {44.0 / 45, -56.0 / 15, 32.0 / 9},
      {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
      {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
      {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84}};
  static const double c[7] = {0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
  static const double b5[7] = {35.0 / 384, 0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84, 0};
  static const double b4[7] = {5179.0 / 57600,  0,           7571.0 / 16695, 393.0 / 640,
                               -92097.0 / 339200, 187.0 / 2100, 1.0 / 40};
  const std::size_t n = y.size();
  std::vector<std::vector<double>> k(7, std::vector<double>(n));
  std::vector<double> tmp(n), y5(n), y4(n);
  double t = 0.0, dt = dt0;
  sink(t, y);
  std::size_t rejects_in_row = 0;
  while (t < t_end) {
    dt = std::min(dt, t_end - t);
    for (int s = 0; s < 7; ++s) {
      for (std::size_t i = 0; i < n; ++i) {
        double acc = y[i];
        for (int j = 0; j < s; ++j) acc += dt * a[s][j] * k[j][i];
        tmp[i] = acc;
      }
      f(t + c[s] * dt, tmp, k[s]);
    }
    double err = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double s5 = y[i], s4 = y[i];
      for (int s = 0; s < 7; ++s) {
        s5 += dt * b5[s] * k[s][i];
        s4 += dt * b4[s] * k[s][i];
      }
      y5[i] = s5;
      y4[i] = s4;
      double scale = abs_tol + rel_tol * std::max(std::fabs(y[i]), std::fabs(s5));
      err = std::max(err, std::fabs(s5 - s4) / scale);
    }
    if (err <= 1.0) {
      t += dt;
      y = y5;
      detail::check_finite(y, t);
      sink(t, y);
      rejects_in_row = 0;
    } else if (++rejects_in_row > 60) {
      throw IntegrationError("rk45: repeated step rejection at t=" + std::to_string(t));
    }
    double factor = 0.9 * std::pow(std::max(err, 1e-12), -0.2);
    dt *= std::clamp(factor, 0.2, 5.0);
    if (dt < 1e-14) throw IntegrationError("rk45: step underflow at t=" + std::to_string(t));
  }
}

}  // namespace isopair
