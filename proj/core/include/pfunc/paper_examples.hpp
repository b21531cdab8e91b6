#pragma once

#include <optional>
#include <variant>

#include "pfunc/funcalg.hpp"

namespace pfunc {

/// Delta u = f(u) with P = |grad u|^2 / 2 - F(u), F' = f. Without an explicit
/// potential F is the antiderivative of f based at 0.
struct Ex1 {
  Fn1 f;
  std::optional<Fn1> potential;
};

/// Delta u = f(u) with P = |grad u|^4 / 2 +- 2 int_0^s (int_0^y sqrt(+-f f') dz)^2 dy,
/// the sign following the (constant) sign of f f' on `domain`.
struct Ex2 {
  Fn1 f;
  Interval domain{-5.0, 5.0};
};

/// Delta u = u (k |grad u|^2 + lambda e^{-c u^2}).
struct Ex3 {
  double k = 1.0;
  double lambda = -1.0;
  double c = 1.0;
};

/// Delta u = G(|grad u|^2 - u) with G <= 1/2; P = |grad u|^2 - u.
struct Ex4 {
  Fn1 G;
  Interval sampled{-10.0, 10.0};
};

/// div(Phi'(|grad u|^2) grad u) = rho(|grad u|^2) F'(u);
/// P = Q(|grad u|^2) - 2F(u), Q(t) = int_0^t (Phi' + 2y Phi'') / rho dy.
struct Ex5 {
  Fn1 Phi;
  Fn1 rho;
  Fn1 Fpot;
  double tmax = 10.0;
};

using ExampleParams = std::variant<Ex1, Ex2, Ex3, Ex4, Ex5>;

/// How the registry entry's P-function property is established.
enum class CriterionRoute {
  CorollarySemilinear,  ///< Delta u = f(u) corollary
  Hypothesis2,          ///< P_st = 0, P_tt >= 0 alternative of the general criterion
  External,             ///< proved elsewhere (mu and L implicit); only field proxies apply
};

struct ExampleInstance {
  EquationSpec equation;
  PFunctionSpec pfunction;
  CriterionRoute route = CriterionRoute::External;
};

/// Builds the equation and its P-function. Throws BadParams when the
/// parameters violate the example's standing hypotheses.
ExampleInstance paper_example(const ExampleParams& params);

/// Antiderivative of f based at `base`, by quadrature; d1 = f, d2 = f'.
Fn1 antiderivative(const Fn1& f, double base = 0.0);

}  // namespace pfunc
