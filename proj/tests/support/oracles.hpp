#pragma once

// Closed forms worked out by hand, kept free of library calls so they can
// judge the library.

#include <cmath>
#include <functional>
#include <numbers>

namespace oracle {

inline const double kSqrt2 = std::numbers::sqrt2;

// u = tanh(x / sqrt 2) solves u'' = u^3 - u.
inline double kink_u(double x) { return std::tanh(x / kSqrt2); }
inline double kink_du(double x) {
  const double c = std::cosh(x / kSqrt2);
  return 1.0 / (kSqrt2 * c * c);
}
inline double kink_ddu(double x) {
  const double c = std::cosh(x / kSqrt2);
  return -std::tanh(x / kSqrt2) / (c * c);
}
inline double double_well(double s) { return 0.25 * (1.0 - s * s) * (1.0 - s * s); }

// P = t/2 - F0(s), F0' = f: I = t^2 f'(s) / 2.
inline double ex1_I(double fprime, double t) { return 0.5 * t * t * fprime; }
// P = t: I = 2 t^2 f'(s).
inline double linear_P_I(double fprime, double t) { return 2.0 * t * t * fprime; }

// int_0^u (int_0^y sqrt(-f f'))^2 dy for f = W', W = a u^k.
inline double power_potential_integral(double a, double k, double u) {
  return a * a * k * (1.0 - k) / (2.0 * (k - 0.5) * (k - 0.5)) * std::pow(u, 2.0 * k);
}
// Same integral for f = e^{-u}: int_0^u (1 - e^{-y})^2 dy.
inline double exp_decay_integral(double u) {
  return u + 2.0 * std::exp(-u) - 2.0 + 0.5 - 0.5 * std::exp(-2.0 * u);
}

// Q(t) = int_0^t (Phi' + 2y Phi'') / rho for Phi = t + t^2/2.
inline double Q_rho_one(double t) { return t + 1.5 * t * t; }
inline double Q_rho_linear(double t) { return 3.0 * t - 2.0 * std::log1p(t); }

// Root of a monotone increasing g on [lo, hi] by plain bisection.
inline double bisect(const std::function<double(double)>& g, double lo, double hi) {
  for (int k = 0; k < 200 && hi - lo > 0.0; ++k) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    (g(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// Heteroclinic slopes v0^2 = T with Q(T) = 2 W(0) = 1/2.
inline double heteroclinic_T_rho_one() { return 1.0 / 3.0; }
inline double heteroclinic_T_rho_linear() {
  return bisect([](double T) { return Q_rho_linear(T) - 0.5; }, 0.0, 2.0);
}

// Mean of |x|^2 over the disc of radius r.
inline double disc_mean_r2(double r) { return r * r / 2.0; }

// u = c (x^2 + y^2) on B_2: ||u||_{H^1} and ||Delta u||_{L^2}.
inline double h1_norm_paraboloid(double c) { return std::abs(c) * std::sqrt(160.0 * std::numbers::pi / 3.0); }
inline double l2_laplacian_paraboloid(double c) { return 8.0 * std::abs(c) * std::sqrt(std::numbers::pi); }

}  // namespace oracle
