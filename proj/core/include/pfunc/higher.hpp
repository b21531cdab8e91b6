#pragma once

#include <functional>
#include <string>
#include <vector>

#include "pfunc/funcalg.hpp"
#include "pfunc/grid.hpp"
#include "pfunc/verify.hpp"

namespace pfunc {

/// Closed-form field on a rectangle together with the equation it solves.
struct ManufacturedSolution {
  std::string id;
  std::string equation;  ///< "prop73", "prop74", "cor76", "red77", "monge_ampere", "harmonic"
  std::string description;
  std::function<double(double, double)> u;
  double xlo = 0.0;
  double xhi = 1.0;
  double ylo = 0.0;
  double yhi = 1.0;

  /// Grid with spacing h (rounded so the rectangle is covered exactly).
  [[nodiscard]] Grid2 grid(double h) const;
  [[nodiscard]] Field2 sample(double h) const;
};

/// Built-in manufactured solutions, sorted by id.
const std::vector<ManufacturedSolution>& manufactured_solutions();
/// Throws UnknownId.
const ManufacturedSolution& manufactured(const std::string& id);

inline constexpr double kConvexityTol = 1e-10;

/// a(Delta u)[|grad u|^2 Delta^2 u - Delta u (grad u . grad Delta u)] = b(u)|grad u|^4,
/// P = A(Delta u) - B(u). Checks R = |grad u|^2 Delta_h P - Delta_h u (grad_h P . grad_h u) >= -tol
/// (R divided by 1 + term magnitudes). Throws NotASolution, MarginTooSmall, BadParams (A' != a or B'' != b).
CheckReport residual_prop73(const Fn1& a, const Fn1& b, const Fn1& A, const Fn1& B, const Field2& u, double tol);

/// max(Delta_h u - A^{-1}(B(u))) <= tol. Throws HypothesisFail for B(u) < 0 or u_y <= 0.
CheckReport check_laplacian_bound(const Fn1& A, const Fn1& B, const Field2& u, double tol);

using Fn3 = std::function<double(double, double, double)>;

/// |Hes u|^2 = F3(u, |grad u|^2, Delta u) + (u/2) Delta^2 u with F3 >= w^2/2; P = |grad u|^2 - u Delta u.
/// Subchecks: identity |Delta_h P - (2F3 - (Delta u)^2)| <= tol and Delta_h P >= -tol.
/// extras["max_P"] carries the gradient-bound corollary value.
CheckReport residual_prop74(const Fn3& F3, const Field2& u, double tol);

/// Normalized residual of |Hes u|^2 = F3 + (u/2) Delta^2 u on the margin-2 region.
Field2 prop74_equation_residual(const Fn3& F3, const Field2& u);

/// max over B_1 of P versus (||u||_{H^1(B_2)} + ||Delta u||_{L^2(B_2)}) / pi, balls about the origin.
CheckReport check_pointwise_75(const Fn3& F3, const Field2& u, double tol);

/// c|Hes u|^2 - Delta^2 u = 0 family (convex subsolutions), P = (Delta u)^2.
/// Throws NotConvex, NotSubsolution.
CheckReport residual_cor76(double c, const Field2& u, double tol);

/// 2|Hes u|^2 = (Delta u)^2 + u Delta^2 u; P = |grad u|^2 - u Delta u harmonic and
/// constant on the window. Throws NotASolution.
CheckReport check_reduction_77(const Field2& u, double tol);

}  // namespace pfunc
