#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace pfunc {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Closed interval; infinite endpoints are allowed.
struct Interval {
  double lo = -kInf;
  double hi = kInf;

  [[nodiscard]] bool contains(double x) const { return x >= lo && x <= hi; }
  [[nodiscard]] bool bounded() const;
  [[nodiscard]] Interval intersect(const Interval& other) const;
};

/// Closed rectangle in the (s, t) plane.
struct Rect {
  Interval s;
  Interval t;

  [[nodiscard]] bool contains(double sv, double tv) const { return s.contains(sv) && t.contains(tv); }
};

/// `n` equispaced samples of `iv`; unbounded ends are clipped to +-window.
std::vector<double> sample_interval(const Interval& iv, int n, double window = 10.0);

/// Smooth scalar function of one variable with its first two derivatives.
/// Evaluation outside the declared domain throws DomainError.
class Fn1 {
 public:
  using Map = std::function<double(double)>;

  Fn1() = default;
  Fn1(std::string name, Map eval, Map d1, Map d2, Interval domain = {});

  double operator()(double x) const;
  [[nodiscard]] double d1(double x) const;
  [[nodiscard]] double d2(double x) const;

  [[nodiscard]] const std::string& name() const { return name_; }
  [[nodiscard]] const Interval& domain() const { return domain_; }
  [[nodiscard]] bool empty() const { return !eval_; }

  static Fn1 constant(double c, Interval domain = {});
  static Fn1 identity(Interval domain = {});

 private:
  void require_inside(double x) const;

  std::string name_;
  Map eval_;
  Map d1_;
  Map d2_;
  Interval domain_;
};

/// Central-difference partials of a function of two variables.
struct Partials2 {
  double ps = 0.0;
  double pt = 0.0;
  double pss = 0.0;
  double pst = 0.0;
  double ptt = 0.0;
};

/// Smooth scalar function of (s, t) carrying partials to order two.
class Fn2 {
 public:
  using Map = std::function<double(double, double)>;

  struct Derivatives {
    Map ps;
    Map pt;
    Map pss;
    Map pst;
    Map ptt;
  };

  Fn2() = default;
  Fn2(std::string name, Map eval, Derivatives partials, Rect domain = {});

  /// Wraps a bare closure; partials come from fd_partials at step `h`.
  static Fn2 from_closure(std::string name, Map raw, Rect domain = {}, double h = 1e-3);

  double operator()(double s, double t) const;
  [[nodiscard]] double ps(double s, double t) const;
  [[nodiscard]] double pt(double s, double t) const;
  [[nodiscard]] double pss(double s, double t) const;
  [[nodiscard]] double pst(double s, double t) const;
  [[nodiscard]] double ptt(double s, double t) const;
  [[nodiscard]] Partials2 partials(double s, double t) const;

  [[nodiscard]] const std::string& name() const { return name_; }
  [[nodiscard]] const Rect& domain() const { return domain_; }
  [[nodiscard]] bool empty() const { return !eval_; }

 private:
  void require_inside(double s, double t) const;

  std::string name_;
  Map eval_;
  Derivatives d_;
  Rect domain_;
};

/// Second-order central differences on the 9-point stencil around (s, t),
/// followed by one Richardson step (h and h/2). Throws NonFinite.
Partials2 fd_partials(const Fn2::Map& raw, double s, double t, double h);

/// Solves f(x) = y on a bracket where f is strictly monotone. Bisection,
/// with Newton steps accepted while they stay inside the current bracket.
/// Postcondition |f(x) - y| <= 1e-12 (1 + |y|) unless the bracket collapses
/// to adjacent doubles first.
double invert_monotone(const Fn1& f, double y, Interval bracket);

/// Like invert_monotone, but grows a bracket from `start` inside f's domain.
double invert_on_domain(const Fn1& f, double y, Interval start = {0.0, 1.0});

/// Adaptive tanh-sinh quadrature of f over [a, b]; a > b flips the sign.
/// Tolerates integrable endpoint singularities.
double integrate(const std::function<double(double)>& f, double a, double b, double tol = 1e-12);

/// int_0^s (int_0^y g(z) dz)^2 dy. Integrated as the ODE G' = g, Q' = G^2
/// when g is finite at 0, by nested quadrature otherwise.
double nested_square_integral(const std::function<double(double)>& g, double s);

// ---------------------------------------------------------------------------
// P-function and equation descriptions

enum class MuKind {
  PtTimesTSquared,   ///< mu = P_t |grad u|^2
  UnitMu,            ///< mu = 1
  CustomOfGradNorm,  ///< mu = m(|grad u|) for a supplied Fn1
};

struct Separable {
  Fn1 B;
  Fn1 Gamma;
};

struct PFunctionSpec {
  std::string id;
  Fn2 P;
  MuKind mu = MuKind::PtTimesTSquared;
  std::optional<Fn1> customMu;
  std::optional<Separable> separable;

  /// Checks the separable-form invariants (P = B - Gamma, B(0) = 0, B' > 0,
  /// B'' >= 0, Gamma >= 0) and P_t > 0 for t > 0 when mu is P_t |grad u|^2.
  /// Throws BadParams.
  void validate(int samples = 41) const;
};

struct Semilinear {
  Fn1 f;
};
struct GradientSemilinear {
  Fn2 F;
};
struct DivergenceForm {
  Fn1 Phi;
  Fn1 rho;
  Fn1 Fpot;
};
struct MongeAmpere {
  Fn1 rhs;
};
struct FourthOrder73 {
  Fn1 a;
  Fn1 b;
};
struct FourthOrder74 {
  std::function<double(double, double, double)> F3;
};
struct Biharmonic76 {
  double c = 0.0;
};
struct Reduction77 {};

using EquationForm = std::variant<Semilinear, GradientSemilinear, DivergenceForm, MongeAmpere,
                                  FourthOrder73, FourthOrder74, Biharmonic76, Reduction77>;

struct EquationSpec {
  std::string id;
  EquationForm form;
};

/// F(s, t) = f(s) for the semilinear family.
Fn2 as_gradient_semilinear(const Semilinear& eq);

/// Phi'(t) > 0, rho(t) > 0, Phi'(t) + 2t Phi''(t) > 0 on sampled [0, tmax].
void validate_ellipticity(const DivergenceForm& eq, double tmax, int samples = 101);

/// a > 0 and a' >= 0 on sampled `range`.
void validate_fourth_order73(const FourthOrder73& eq, Interval range, int samples = 101);

}  // namespace pfunc
