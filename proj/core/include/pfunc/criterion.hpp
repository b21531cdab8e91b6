#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "pfunc/funcalg.hpp"

namespace pfunc {

struct CriterionSubcheck {
  std::string name;
  bool pass = true;
  double worstValue = 0.0;
  double s = 0.0;
  double t = 0.0;
};

struct CriterionVerdict {
  bool pass = true;
  double minResidual = 0.0;
  double argminS = 0.0;
  double argminT = 0.0;
  std::size_t samplesChecked = 0;
  std::size_t samplesSkipped = 0;
  double tolerance = 0.0;
  std::string variant;
  std::vector<CriterionSubcheck> subchecks;
};

inline constexpr double kCriterionTol = 1e-9;
inline constexpr std::size_t kCriterionRandomSamples = 1000;
inline constexpr unsigned long long kCriterionSeed = 0x5EED;

/// I(s,t) = P_t P_s F + P_s^2/2 + 2t^2 P_t^2 F_s - 2t^2 P_t P_s F_t, with every
/// function evaluated at (s, t^2).
double eval_I(const Fn2& P, const Fn2& F, double s, double t);

/// The semilinear corollary's normalized form
/// P_s f + P_s^2 / (2 P_t) + 2 P_t t^2 f', partials at (s, t^2).
double eval_I_semilinear(const Fn2& P, const Fn1& f, double s, double t);

/// t^2 P_ss(s,t^2) P_t(s,t^2) + I(s,t).
double hypothesis2_quantity(const Fn2& P, const Fn2& F, double s, double t);

/// Tensor grid of n_s x n_t points on `rect` followed by the fixed-seed
/// random interior points.
std::vector<std::pair<double, double>> criterion_samples(const Rect& rect, int n_s, int n_t,
                                                         std::size_t n_random = kCriterionRandomSamples);

/// Hessian of P PSD (trace >= -tol, det >= -tol (1 + |H|_inf)) and I >= -tol.
CriterionVerdict check_hypothesis1(const Fn2& P, const Fn2& F, const Rect& rect, int n_s, int n_t,
                                   double tol = kCriterionTol);

/// |P_st| <= tol, P_tt >= -tol and t^2 P_ss P_t + I >= -tol.
CriterionVerdict check_hypothesis2(const Fn2& P, const Fn2& F, const Rect& rect, int n_s, int n_t,
                                   double tol = kCriterionTol);

/// Both alternatives of the Delta u = f(u) corollary; the verdict of the
/// better one is returned and `variant` names it. Throws PtNonPositive.
CriterionVerdict check_corollary_semilinear(const Fn2& P, const Fn1& f, const Rect& rect, int n_s, int n_t,
                                            double tol = kCriterionTol);

}  // namespace pfunc
