#pragma once

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "pfunc/funcalg.hpp"
#include "pfunc/grid.hpp"

namespace pfunc {

/// How worstResidual is compared with the tolerance.
enum class CheckKind {
  AtLeast,  ///< pass iff worst >= -tol
  AtMost,   ///< pass iff worst <= tol
  Exceeds,  ///< pass iff worst > tol
};

struct ResidualStats {
  double min = 0.0;
  double max = 0.0;
  double mean = 0.0;
};

struct CheckReport {
  std::string checkId;
  bool pass = false;
  bool vacuous = false;
  CheckKind kind = CheckKind::AtLeast;
  double worstResidual = 0.0;
  std::vector<double> worstLocation;  ///< {x, y} for fields, {x} for profiles
  double tolerance = 0.0;
  ResidualStats stats;
  std::map<std::string, std::string> provenance;
  std::map<std::string, double> extras;
  std::vector<CheckReport> subchecks;
  std::vector<std::string> notes;
  std::optional<std::string> error;
  std::optional<Field2> residualField;

  /// Recomputes `pass` from kind, worst and tolerance, and-ed with subchecks.
  void settle();
};

/// Worst value of `field` over its valid region (min for AtLeast, max
/// otherwise) with location and stats; ties go to the smallest (i, j).
CheckReport summarize(std::string id, CheckKind kind, const Field2& field, double tol);
/// Same over a sampled profile.
CheckReport summarize(std::string id, CheckKind kind, const std::vector<double>& xs,
                      const std::vector<double>& values, double tol);

/// P(u, |grad_h u|^2) with central gradients; margin grows by one.
Field2 eval_P_field(const PFunctionSpec& spec, const Field2& u);
/// P(u, u'^2) along a profile using its derivative samples.
std::vector<double> eval_P_profile(const PFunctionSpec& spec, const Profile1& prof);

inline constexpr double kDefaultCgrid = 10.0;
inline constexpr double kSolutionPrecheckTol = 1e-8;

/// R = P_t|grad u|^2 Delta_h P - (2 P_t |grad u|^2 F_t - P_s)(grad_h P . grad_h u) - |grad_h P|^2 / 2,
/// with P-field derivatives taken from the evaluated field. The returned
/// field is R divided by 1 + the sum of the term magnitudes; the check
/// requires it >= -cgrid h^2. A "pt_positive" subcheck guards the sign of mu.
/// Throws NotASolution when u misses Delta u = F(u, |grad u|^2) by > 1e-8.
std::pair<Field2, CheckReport> residual_main_inequality(const Fn2& P, const Fn2& F, const Field2& u,
                                                        double cgrid = kDefaultCgrid);

/// interiorMax <= boundaryMax + tol over the valid region's outermost ring.
CheckReport check_boundary_max_principle(const Field2& pfield, double tol);

/// max P <= tol after the hypothesis P(s, 0) <= tol on the sampled range of u
/// (throws HypothesisFail otherwise). Separable specs also report |grad u|^2 - Psi(u).
CheckReport check_gradient_bound(const PFunctionSpec& spec, const Field2& u, double tol);
CheckReport check_gradient_bound(const PFunctionSpec& spec, const Profile1& prof, double tol);

/// max - min of P along the profile <= tol.
CheckReport check_profile_first_integral(const PFunctionSpec& spec, const Profile1& prof, double tol);

/// |grad u|^2 = Psi(u) within tol (1 + max |Psi'|) once max |P| <= tol
/// (throws PNotConstant otherwise). Requires a separable spec.
CheckReport check_eikonal_reduction(const PFunctionSpec& spec, const Field2& u, double tol);
CheckReport check_eikonal_reduction(const PFunctionSpec& spec, const Profile1& prof, double tol);

/// Psi(u) = B^{-1}(Gamma(u)).
double separable_psi(const Separable& sep, double s);

struct GammaZeroPropagation {
  Fn1 Gamma;
};
/// P = g(|grad u|^2) with g vanishing only at 0.
struct GradPFunction {
  Fn1 g;
  double gradTol = 1e-6;
};
/// Delta u = G(|grad u|^2).
struct NonexistenceConstantTest {
  Fn1 G;
};
using LiouvilleMode = std::variant<GammaZeroPropagation, GradPFunction, NonexistenceConstantTest>;

CheckReport check_liouville(const Field2& u, const LiouvilleMode& mode, double tol);
/// Only GammaZeroPropagation applies to profiles (ModeMismatch otherwise).
CheckReport check_liouville(const Profile1& prof, const LiouvilleMode& mode, double tol);

/// g(p) of the gradient with its Hessian in p, for the Monge-Ampere checks.
struct GradFunction {
  std::string name;
  std::function<double(double, double)> value;
  std::function<std::array<double, 3>(double, double)> hessian;  ///< {gxx, gxy, gyy}

  static GradFunction squared_norm();
};

inline const std::vector<double> kBallRadii{0.1, 0.2, 0.4};

/// (a) det Hes u > eps, (b) Delta_h G - B . grad_h G >= -tol with G = g(grad u),
/// (c) G(centre) <= ball averages + tol when the drift vanishes.
CheckReport check_monge_ampere(const Field2& u, const GradFunction& g, double tol,
                               const std::vector<double>& radii = kBallRadii);

/// Ball averages nondecreasing in r and >= f(centre) - tol; f must satisfy
/// Delta_h f >= -tol (NotSubharmonic otherwise).
CheckReport check_mean_value_monotonicity(const Field2& f, double cx, double cy, const std::vector<double>& radii,
                                          double tol);

}  // namespace pfunc
