#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "pfunc/funcalg.hpp"
#include "pfunc/grid.hpp"

namespace pfunc {

enum class InitialGuess { ZeroField, BoundaryHarmonicLift, GivenField };

struct NewtonOpts {
  int maxIter = 50;
  double residualTol = 1e-10;  ///< infinity norm of the discrete equation
  int dampingHalvings = 20;
  InitialGuess initialGuess = InitialGuess::BoundaryHarmonicLift;
  std::optional<Field2> given;  ///< used with InitialGuess::GivenField; boundary values are overwritten
};

using BoundaryFn = std::function<double(double, double)>;

struct SolveResult {
  Field2 u;
  int iterations = 0;
  std::vector<double> residualHistory;  ///< infinity norms, initial guess first
  double recheckResidual = 0.0;         ///< independent re-evaluation on the returned field
};

/// Delta_h u = F(u, |grad_h u|^2) on interior nodes, u = bc on the boundary.
/// 5-point Laplacian, central gradient. Throws NoConvergence, LinearSolveFailure.
SolveResult solve_gradient_semilinear(const Fn2& F, const Grid2& grid, const BoundaryFn& bc,
                                      const NewtonOpts& opts = {});

/// div_h(Phi'(g) grad u) = rho(g) F'(u), g = |grad_h u|^2; face coefficients use
/// the mean of g at the two adjacent nodes. Throws NoConvergence,
/// EllipticityLost, LinearSolveFailure.
SolveResult solve_divergence_form(const DivergenceForm& eq, const Grid2& grid, const BoundaryFn& bc,
                                  const NewtonOpts& opts = {});

/// Discrete residuals used by the solvers, recomputed with grid operators.
Field2 residual_gradient_semilinear(const Fn2& F, const Field2& u);
Field2 residual_divergence_form(const DivergenceForm& eq, const Field2& u);

/// RK4 on (u, u') for the one-dimensional reduction of `eq`, started from
/// (u0, v0) at x0 and run in both directions to the ends of `span`.
/// Supports Semilinear, GradientSemilinear and DivergenceForm.
/// Throws BlowUp, DegenerateEllipticity, BadParams.
Profile1 integrate_profile(const EquationSpec& eq, double u0, double v0, double h, Interval span,
                           double x0 = 0.0);

/// u'' as a function of (u, u') for the one-dimensional reduction.
double profile_acceleration(const EquationSpec& eq, double u, double v);

/// Heteroclinic of u'' = u^3 - u: (tanh(x/sqrt2), (1 - u^2)/sqrt2).
std::pair<double, double> kink(double x);

}  // namespace pfunc
