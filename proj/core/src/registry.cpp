#include "pfunc/registry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pfunc/error.hpp"
#include "pfunc/solver.hpp"

namespace pfunc {

namespace {

const Interval kNonNeg{0.0, kInf};

double zero2(double, double) { return 0.0; }

Fn1 allen_cahn_f() {
  return {"s^3-s", [](double s) { return s * s * s - s; }, [](double s) { return 3.0 * s * s - 1.0; },
          [](double s) { return 6.0 * s; }};
}

Fn1 double_well() {
  return {"(1-s^2)^2/4", [](double s) { return 0.25 * (1.0 - s * s) * (1.0 - s * s); },
          [](double s) { return s * s * s - s; }, [](double s) { return 3.0 * s * s - 1.0; }};
}

Fn1 two_w() {
  return {"2W", [](double s) { return 0.5 * (1.0 - s * s) * (1.0 - s * s); },
          [](double s) { return 2.0 * (s * s * s - s); }, [](double s) { return 6.0 * s * s - 2.0; }};
}

Fn1 exp_scaled(double sign, double rate, const std::string& name) {
  return {name, [=](double s) { return sign * std::exp(rate * s); },
          [=](double s) { return sign * rate * std::exp(rate * s); },
          [=](double s) { return sign * rate * rate * std::exp(rate * s); }};
}

Fn1 poly2(double c0, double c1, double c2, const std::string& name, Interval dom = {}) {
  return {name, [=](double t) { return c0 + c1 * t + c2 * t * t; }, [=](double t) { return c1 + 2.0 * c2 * t; },
          [=](double) { return 2.0 * c2; }, dom};
}

Fn2 constant2(double c) {
  return {"const", [c](double, double) { return c; }, Fn2::Derivatives{zero2, zero2, zero2, zero2, zero2}};
}

// v0 with P(u0, v0^2) = 0 along the profile, from P_t > 0.
double heteroclinic_speed(const PFunctionSpec& spec, double u0, double tmax) {
  const Fn2& P = spec.P;
  Fn1 q("P(u0,.)", [&P, u0](double t) { return P(u0, t); }, [&P, u0](double t) { return P.pt(u0, t); },
        [&P, u0](double t) { return P.ptt(u0, t); }, Interval{0.0, tmax});
  return std::sqrt(invert_monotone(q, 0.0, Interval{0.0, tmax}));
}

Case example_case(std::string id, std::string summary, const ExampleParams& params) {
  ExampleInstance ex = paper_example(params);
  Case c;
  c.id = std::move(id);
  c.summary = std::move(summary);
  ex.equation.id = c.id;
  ex.pfunction.id = c.id;
  c.equation = std::move(ex.equation);
  c.pfunction = std::move(ex.pfunction);
  c.route = ex.route;
  return c;
}

FieldSource solve_on_unit_square(double bc_value) {
  FieldSource f;
  f.kind = FieldSource::Kind::Solve;
  f.bc = FieldSource::Boundary::Constant;
  f.value = bc_value;
  return f;
}

FieldSource manufactured_source(const std::string& id, double h) {
  const ManufacturedSolution& m = manufactured(id);
  FieldSource f;
  f.kind = FieldSource::Kind::Manufactured;
  f.manufacturedId = id;
  f.xlo = m.xlo;
  f.xhi = m.xhi;
  f.ylo = m.ylo;
  f.yhi = m.yhi;
  f.h = h;
  return f;
}

Fn3 constant3(double c) {
  return [c](double, double, double) { return c; };
}

std::vector<Case> build_cases() {
  std::vector<Case> v;

  {
    Case c = example_case("ex1", "Allen-Cahn Delta u = u^3 - u with P = |grad u|^2/2 - W(u); kink profile",
                          Ex1{allen_cahn_f(), double_well()});
    c.field.kind = FieldSource::Kind::Kink;
    c.liouvilleGamma = two_w();
    v.push_back(std::move(c));
  }
  {
    Case c = example_case("ex1_bvp", "Allen-Cahn on [-1,1]x[0,1] with boundary data u = x; P-field max principle",
                          Ex1{allen_cahn_f(), double_well()});
    c.field = solve_on_unit_square(0.0);
    c.field.bc = FieldSource::Boundary::LinearX;
    c.field.xlo = -1.0;
    c.field.h = 1.0 / 32.0;
    v.push_back(std::move(c));
  }
  {
    Case c;
    c.id = "ex1_counterexample";
    c.summary = "Delta u = e^u with P = |grad u|^2/2 - e^u + e^-u: criterion holds, P(s,0) <= 0 fails for s < 0";
    c.equation = EquationSpec{c.id, Semilinear{exp_scaled(1.0, 1.0, "e^s")}};
    PFunctionSpec p;
    p.id = c.id;
    p.P = Fn2("t/2-e^s+e^-s", [](double s, double t) { return 0.5 * t - std::exp(s) + std::exp(-s); },
              Fn2::Derivatives{[](double s, double) { return -std::exp(s) - std::exp(-s); },
                               [](double, double) { return 0.5; },
                               [](double s, double) { return -std::exp(s) + std::exp(-s); }, zero2, zero2},
              Rect{Interval{}, kNonNeg});
    p.mu = MuKind::PtTimesTSquared;
    c.pfunction = std::move(p);
    c.route = CriterionRoute::CorollarySemilinear;
    c.field.kind = FieldSource::Kind::Counterexample;
    v.push_back(std::move(c));
  }
  {
    Case c = example_case("ex2", "Delta u = e^-u (f f' <= 0) with P = |grad u|^4/2 - 2 int int sqrt(-f f'); BVP u = 1",
                          Ex2{exp_scaled(1.0, -1.0, "e^-s"), Interval{-5.0, 5.0}});
    c.criterionRect = Rect{{0.0, 3.0}, {0.0, 2.0}};
    c.field = solve_on_unit_square(1.0);
    v.push_back(std::move(c));
  }
  {
    Case c = example_case("ex2_stable", "Delta u = -e^-u (f f' <= 0, f' >= 0), same P as ex2; BVP u = 1",
                          Ex2{exp_scaled(-1.0, -1.0, "-e^-s"), Interval{-5.0, 5.0}});
    c.criterionRect = Rect{{0.0, 3.0}, {0.0, 2.0}};
    c.field = solve_on_unit_square(1.0);
    v.push_back(std::move(c));
  }
  {
    Case c = example_case("ex3", "Delta u = u(k|grad u|^2 + lambda e^{-cu^2}), k=1, lambda=-1, c=1; BVP u = 1",
                          Ex3{1.0, -1.0, 1.0});
    c.field = solve_on_unit_square(1.0);
    v.push_back(std::move(c));
  }
  {
    Case c = example_case("ex3_critical", "Delta u = u(k|grad u|^2 + lambda e^{-cu^2}) at k = -c; BVP u = 1",
                          Ex3{-1.0, -1.0, 1.0});
    c.field = solve_on_unit_square(1.0);
    v.push_back(std::move(c));
  }
  {
    Fn1 G("tanh(z)/2", [](double z) { return 0.5 * std::tanh(z); },
          [](double z) { return 0.5 / (std::cosh(z) * std::cosh(z)); },
          [](double z) { return -std::tanh(z) / (std::cosh(z) * std::cosh(z)); });
    Case c = example_case("ex4", "Delta u = G(|grad u|^2 - u), G = tanh/2 <= 1/2, P = |grad u|^2 - u; BVP u = 1",
                          Ex4{G, Interval{-10.0, 10.0}});
    c.criterionRect = Rect{{0.0, 2.0}, {0.0, 2.0}};
    c.field = solve_on_unit_square(1.0);
    v.push_back(std::move(c));
  }
  {
    Case c = example_case("ex5",
                          "div((1+|grad u|^2) grad u) = (1+|grad u|^2) W'(u), P = Q(|grad u|^2) - 2W(u); heteroclinic",
                          Ex5{poly2(0.0, 1.0, 0.5, "t+t^2/2", kNonNeg), poly2(1.0, 1.0, 0.0, "1+t", kNonNeg),
                              double_well(), 10.0});
    c.field.kind = FieldSource::Kind::Profile;
    c.field.v0 = heteroclinic_speed(*c.pfunction, 0.0, 10.0);
    v.push_back(std::move(c));
  }
  {
    Case c = example_case("ex5_bvp", "div((1+|grad u|^2) grad u) = W'(u) on [-1,1]x[0,1], data from the 1D profile",
                          Ex5{poly2(0.0, 1.0, 0.5, "t+t^2/2", kNonNeg), Fn1::constant(1.0, kNonNeg), double_well(),
                              10.0});
    c.field = solve_on_unit_square(0.0);
    c.field.bc = FieldSource::Boundary::ProfileX;
    c.field.xlo = -1.0;
    c.field.h = 1.0 / 32.0;
    c.field.v0 = heteroclinic_speed(*c.pfunction, 0.0, 10.0);
    v.push_back(std::move(c));
  }
  {
    Case c = example_case("ex1_plane", "Allen-Cahn kink extended in y on [-2,2]x[0,1]", Ex1{allen_cahn_f(), double_well()});
    c.field.kind = FieldSource::Kind::KinkField;
    c.liouvilleGamma = two_w();
    c.field.xlo = -2.0;
    c.field.xhi = 2.0;
    v.push_back(std::move(c));
  }
  {
    Case c;
    c.id = "concave_bump";
    c.summary = "u = -(x^2+y^2) on [-1,1]^2 with P = u: interior maximum, negative control for the max principle";
    PFunctionSpec p;
    p.id = c.id;
    p.P = Fn2("s", [](double s, double) { return s; }, Fn2::Derivatives{[](double, double) { return 1.0; }, zero2, zero2, zero2, zero2});
    p.mu = MuKind::UnitMu;
    c.pfunction = std::move(p);
    c.field.kind = FieldSource::Kind::Bump;
    c.field.xlo = c.field.ylo = -1.0;
    c.field.h = 1.0 / 32.0;
    v.push_back(std::move(c));
  }
  for (const auto& [id, sign] : {std::pair{std::string("harmonic_linear"), 1.0},
                                 std::pair{std::string("harmonic_linear_negative"), -1.0}}) {
    Case c;
    c.id = id;
    c.summary = sign > 0 ? "u = x, Delta u = 0, P = t: residual vanishes identically"
                         : "u = x, Delta u = 0, P = -t: P_t < 0, negative control for the residual inequality";
    c.equation = EquationSpec{id, GradientSemilinear{constant2(0.0)}};
    PFunctionSpec p;
    p.id = id;
    p.P = Fn2(sign > 0 ? "t" : "-t", [sign](double, double t) { return sign * t; },
              Fn2::Derivatives{zero2, [sign](double, double) { return sign; }, zero2, zero2, zero2});
    p.mu = MuKind::PtTimesTSquared;
    c.pfunction = std::move(p);
    c.field.kind = FieldSource::Kind::Linear;
    c.field.h = 1.0 / 32.0;
    c.gradPg = Fn1::identity(kNonNeg);
    v.push_back(std::move(c));
  }
  {
    Case c;
    c.id = "liouville_constant";
    c.summary = "u = 3 with Gamma(s) = (s-3)^2: Gamma vanishes and u is flat";
    c.field.kind = FieldSource::Kind::Constant;
    c.field.value = 3.0;
    c.field.h = 1.0 / 16.0;
    c.liouvilleGamma = poly2(9.0, -6.0, 1.0, "(s-3)^2");
    c.gradPg = Fn1::identity(kNonNeg);
    v.push_back(std::move(c));
  }
  {
    Case c;
    c.id = "nonexistence_g1";
    c.summary = "Delta u = G(|grad u|^2) with G = 1: no constant solution since G(0) != 0";
    c.equation = EquationSpec{c.id, GradientSemilinear{constant2(1.0)}};
    c.field.kind = FieldSource::Kind::Constant;
    c.field.value = 0.0;
    c.field.h = 1.0 / 16.0;
    c.nonexistenceG = Fn1::constant(1.0, kNonNeg);
    v.push_back(std::move(c));
  }

  // Manufactured fourth-order and Monge-Ampere fields.
  const Interval pos{1e-12, kInf};
  Prop73Data cubic{Fn1::constant(1.0),
                   Fn1("-(4/3)s^(-5/3)", [](double s) { return -4.0 / 3.0 * std::pow(s, -5.0 / 3.0); },
                       [](double s) { return 20.0 / 9.0 * std::pow(s, -8.0 / 3.0); },
                       [](double s) { return -160.0 / 27.0 * std::pow(s, -11.0 / 3.0); }, pos),
                   Fn1::identity(),
                   Fn1("6s^(1/3)", [](double s) { return 6.0 * std::cbrt(s); },
                       [](double s) { return 2.0 * std::pow(s, -2.0 / 3.0); },
                       [](double s) { return -4.0 / 3.0 * std::pow(s, -5.0 / 3.0); }, pos)};
  Prop73Data harmonic{Fn1::constant(1.0), Fn1::constant(0.0), Fn1::identity(), Fn1::constant(1.0)};
  struct Manu {
    const char* id;
    double h;
    std::optional<Prop73Data> p73;
    std::optional<Fn3> f3;
  };
  const std::vector<Manu> manu{
      {"cor76_quadratic", 1.0 / 64.0, std::nullopt, std::nullopt},
      {"cor76_quartic", 1.0 / 64.0, std::nullopt, std::nullopt},
      {"ho73_cubic", 1.0 / 128.0, cubic, std::nullopt},
      {"ho73_harmonic", 1.0 / 32.0, harmonic, std::nullopt},
      {"ho74_quadratic", 1.0 / 64.0, std::nullopt, constant3(8.0)},
      {"ho75_quadratic", 1.0 / 64.0, std::nullopt, Fn3([](double, double, double w) { return 0.5 * w * w; })},
      {"ma_anisotropic", 1.0 / 64.0, std::nullopt, std::nullopt},
      {"ma_exp", 1.0 / 128.0, std::nullopt, std::nullopt},
      {"ma_quadratic", 1.0 / 64.0, std::nullopt, std::nullopt},
      {"red77_anisotropic", 1.0 / 64.0, std::nullopt, std::nullopt},
      {"red77_quadratic", 1.0 / 64.0, std::nullopt, std::nullopt},
  };
  for (const Manu& m : manu) {
    const ManufacturedSolution& ms = manufactured(m.id);
    Case c;
    c.id = m.id;
    c.summary = ms.description;
    c.field = manufactured_source(m.id, m.h);
    c.prop73 = m.p73;
    c.F3 = m.f3;
    if (ms.equation == "prop73" && m.p73) c.equation = EquationSpec{c.id, FourthOrder73{m.p73->a, m.p73->b}};
    if (ms.equation == "prop74" && m.f3) c.equation = EquationSpec{c.id, FourthOrder74{*m.f3}};
    if (ms.equation == "cor76") c.equation = EquationSpec{c.id, Biharmonic76{1.0}};
    if (ms.equation == "red77") c.equation = EquationSpec{c.id, Reduction77{}};
    if (ms.equation == "monge_ampere") c.meanValueCentre = std::vector<double>{0.0, 0.0};
    v.push_back(std::move(c));
  }

  std::sort(v.begin(), v.end(), [](const Case& a, const Case& b) { return a.id < b.id; });
  return v;
}

}  // namespace

Grid2 FieldSource::grid() const {
  const double cx = (xhi - xlo) / h;
  const double cy = (yhi - ylo) / h;
  const long nx = std::lround(cx);
  const long ny = std::lround(cy);
  if (!(h > 0.0) || std::abs(cx - nx) > 1e-9 || std::abs(cy - ny) > 1e-9) {
    throw Error(ErrorCode::ConfigError, "grid spacing does not divide the box");
  }
  return {static_cast<int>(nx) + 1, static_cast<int>(ny) + 1, h, h, xlo, ylo};
}

std::string to_string(FieldSource::Kind kind) {
  switch (kind) {
    case FieldSource::Kind::Solve: return "solve";
    case FieldSource::Kind::Profile: return "profile";
    case FieldSource::Kind::Kink: return "kink";
    case FieldSource::Kind::KinkField: return "kink_field";
    case FieldSource::Kind::Manufactured: return "manufactured";
    case FieldSource::Kind::Counterexample: return "counterexample";
    case FieldSource::Kind::Bump: return "bump";
    case FieldSource::Kind::Constant: return "constant";
    case FieldSource::Kind::Linear: return "linear";
  }
  return "?";
}

const std::vector<Case>& registry_cases() {
  static const std::vector<Case> cases = build_cases();
  return cases;
}

const Case& registry_case(const std::string& id) {
  for (const Case& c : registry_cases()) {
    if (c.id == id) return c;
  }
  throw Error(ErrorCode::UnknownId, "no registry entry '" + id + "'");
}

const std::vector<CheckInfo>& registry_checks() {
  static const std::vector<CheckInfo> checks{
      {"boundary_max_principle", "interior maximum of the P-field does not exceed its boundary maximum"},
      {"criterion", "P-function hypotheses on the declared (s,t) rectangle"},
      {"eikonal_reduction", "|grad u|^2 = Psi(u) once P vanishes identically"},
      {"gradient_bound", "P(u, |grad u|^2) <= 0, refused unless P(s,0) <= 0 on the range of u"},
      {"laplacian_bound", "Delta u <= A^{-1}(B(u)) under B(u) >= 0 and u_y > 0"},
      {"liouville", "Gamma-zero flatness, gradient P-function, or constant non-existence gate"},
      {"mean_value_monotonicity", "ball averages of a subharmonic field are nondecreasing in r"},
      {"monge_ampere", "det Hes u > 0, drift-corrected subharmonicity of g(grad u), ball sub-mean-value"},
      {"pointwise_75", "max over B_1 of |grad u|^2 - u Delta u bounded by norms over B_2"},
      {"profile_first_integral", "P constant along a one-dimensional profile"},
      {"reduction_77", "|grad u|^2 - u Delta u harmonic and constant on the window"},
      {"residual_cor76", "Delta (Delta u)^2 >= 0 and its proof identity for convex subsolutions"},
      {"residual_main_inequality", "discrete differential inequality satisfied by P along solutions"},
      {"residual_prop73", "inequality for P = A(Delta u) - B(u) on the fourth-order equation"},
      {"residual_prop74", "Delta P = 2F - (Delta u)^2 >= 0 for P = |grad u|^2 - u Delta u"},
      {"solution_residual", "independent re-evaluation of the discrete equation on u"},
  };
  return checks;
}

bool is_known_check(const std::string& id) {
  const auto& c = registry_checks();
  return std::any_of(c.begin(), c.end(), [&](const CheckInfo& k) { return k.id == id; });
}

std::string list_registry() {
  std::ostringstream os;
  for (const Case& c : registry_cases()) {
    std::string kind = c.pfunction ? "pfunction" : (c.equation ? "equation" : "fixture");
    os << "case   " << c.id << "  [" << kind << ", " << to_string(c.field.kind) << "]  " << c.summary << "\n";
  }
  for (const CheckInfo& k : registry_checks()) os << "check  " << k.id << "  " << k.summary << "\n";
  return os.str();
}

Profile1 kink_profile(double lo, double hi, double h) {
  const long n = std::lround((hi - lo) / h);
  if (n < 10) throw Error(ErrorCode::BadParams, "kink profile needs at least 10 steps");
  Profile1 p;
  p.h = h;
  for (long k = 0; k <= n; ++k) {
    const double x = lo + static_cast<double>(k) * h;
    const auto [u, du] = kink(x);
    p.xs.push_back(x);
    p.u.push_back(u);
    p.du.push_back(du);
  }
  return p;
}

Profile1 counterexample_profile(double h) {
  const long n = std::lround(3.0 / h);
  if (n < 10) throw Error(ErrorCode::BadParams, "profile needs at least 10 steps");
  Profile1 p;
  p.h = h;
  for (long k = 0; k <= n; ++k) {
    const double x = 1.0 + static_cast<double>(k) * h;
    p.xs.push_back(x);
    p.u.push_back(std::log(2.0 / (x * x)));
    p.du.push_back(-2.0 / x);
  }
  return p;
}

}  // namespace pfunc
