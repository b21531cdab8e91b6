#include "pfunc/higher.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "pfunc/error.hpp"

namespace pfunc {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

struct FourthOrderFields {
  Gradient gu;
  Hessian H;
  Field2 lap;
  Gradient glap;
  Field2 bih;
};

FourthOrderFields fourth_order_fields(const Field2& u) {
  const Grid2& g = u.grid();
  if (g.nx - 2 * u.margin() < 9 || g.ny - 2 * u.margin() < 9) {
    throw Error(ErrorCode::MarginTooSmall, "fourth-order checks need a 9x9 valid region, got " + g.describe());
  }
  return {gradient(u), hessian(u), laplacian(u), grad_laplacian(u), biharmonic(u)};
}

double sq(double v) { return v * v; }

double hes2(const Hessian& H, int i, int j) { return sq(H.xx(i, j)) + 2.0 * sq(H.xy(i, j)) + sq(H.yy(i, j)); }

double grad2(const Gradient& g, int i, int j) { return sq(g.x(i, j)) + sq(g.y(i, j)); }

// Throws NotASolution when the normalized equation residual exceeds 10 h^2.
void require_solution(const Field2& normalized, const std::string& equation) {
  const double h = normalized.grid().h();
  const double tol = kDefaultCgrid * h * h;
  const CheckReport r = summarize("precheck", CheckKind::AtMost,
                                  combine({&normalized}, [](std::span<const double> a) { return std::abs(a[0]); }), tol);
  if (!r.pass) {
    throw Error(ErrorCode::NotASolution, equation + " residual " + fmt(r.worstResidual) + " > " + fmt(tol) + " at (" +
                                             fmt(r.worstLocation[0]) + ", " + fmt(r.worstLocation[1]) + ")");
  }
}

double normalized(std::initializer_list<double> terms) {
  double sum = 0.0;
  double mag = 1.0;
  for (double t : terms) {
    sum += t;
    mag += std::abs(t);
  }
  return sum / mag;
}

// Analytic derivative against the declared one and against a five-point
// difference; rel tolerance 1e-8 and 1e-6 respectively.
void require_derivative(const Fn1& F, const Fn1& f, int order, double lo, double hi, const std::string& what) {
  const int n = 41;
  for (int k = 0; k < n; ++k) {
    const double x = lo + (hi - lo) * k / (n - 1);
    const double declared = order == 1 ? F.d1(x) : F.d2(x);
    const double target = f(x);
    if (std::abs(declared - target) > 1e-8 * (1.0 + std::abs(target))) {
      throw Error(ErrorCode::BadParams, what + " at " + fmt(x) + ": " + fmt(declared) + " vs " + fmt(target));
    }
    const double h = 1e-3 * std::max(1.0, std::abs(x));
    if (!F.domain().contains(x - 2 * h) || !F.domain().contains(x + 2 * h)) continue;
    const double fd =
        order == 1 ? (-F(x + 2 * h) + 8 * F(x + h) - 8 * F(x - h) + F(x - 2 * h)) / (12 * h)
                   : (-F(x + 2 * h) + 16 * F(x + h) - 30 * F(x) + 16 * F(x - h) - F(x - 2 * h)) / (12 * h * h);
    if (std::abs(fd - target) > 1e-6 * (1.0 + std::abs(target) + std::abs(F(x)))) {
      throw Error(ErrorCode::BadParams, what + " (difference quotient) at " + fmt(x) + ": " + fmt(fd) + " vs " +
                                            fmt(target));
    }
  }
}

std::pair<double, double> range_of(const Field2& f) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (int j = f.jlo(); j <= f.jhi(); ++j) {
    for (int i = f.ilo(); i <= f.ihi(); ++i) {
      lo = std::min(lo, f(i, j));
      hi = std::max(hi, f(i, j));
    }
  }
  return {lo, hi};
}

}  // namespace

Grid2 ManufacturedSolution::grid(double h) const {
  const double cx = (xhi - xlo) / h;
  const double cy = (yhi - ylo) / h;
  const long nx = std::lround(cx);
  const long ny = std::lround(cy);
  if (std::abs(cx - nx) > 1e-9 || std::abs(cy - ny) > 1e-9) {
    throw Error(ErrorCode::BadParams, id + ": h = " + fmt(h) + " does not divide the rectangle");
  }
  return {static_cast<int>(nx) + 1, static_cast<int>(ny) + 1, h, h, xlo, ylo};
}

Field2 ManufacturedSolution::sample(double h) const { return Field2::sample(grid(h), u); }

const std::vector<ManufacturedSolution>& manufactured_solutions() {
  static const std::vector<ManufacturedSolution> all = [] {
    std::vector<ManufacturedSolution> v{
        {"cor76_quadratic", "cor76", "x^2+y^2, c=1", [](double x, double y) { return x * x + y * y; }, 0, 2, 0, 2},
        {"cor76_quartic", "cor76", "x^4+y^4 on [1,2]^2, c=1",
         [](double x, double y) { return x * x * x * x + y * y * y * y; }, 1, 2, 1, 2},
        {"ho73_cubic", "prop73", "x^3 on [1,2]x[0,1], a=1, b(s)=-(4/3)s^(-5/3)",
         [](double x, double) { return x * x * x; }, 1, 2, 0, 1},
        {"ho73_harmonic", "prop73", "x^2-y^2+10y on [0,1]x[0,4], a=1, b=0",
         [](double x, double y) { return x * x - y * y + 10.0 * y; }, 0, 1, 0, 4},
        {"ho74_quadratic", "prop74", "x^2+y^2 on [0,2]^2, F3=8", [](double x, double y) { return x * x + y * y; }, 0, 2,
         0, 2},
        {"ho75_quadratic", "prop74", "c(x^2+y^2) on [-2.25,2.25]^2 (covers B_2), F3=w^2/2",
         [](double x, double y) { return x * x + y * y; }, -2.25, 2.25, -2.25, 2.25},
        {"ma_anisotropic", "monge_ampere", "(2x^2+3y^2)/2 on [-0.5,0.5]^2",
         [](double x, double y) { return 0.5 * (2.0 * x * x + 3.0 * y * y); }, -0.5, 0.5, -0.5, 0.5},
        {"ma_exp", "monge_ampere", "(x^2+y^2)/2 + 0.1e^x on [-0.5,0.5]^2",
         [](double x, double y) { return 0.5 * (x * x + y * y) + 0.1 * std::exp(x); }, -0.5, 0.5, -0.5, 0.5},
        {"ma_quadratic", "monge_ampere", "(x^2+y^2)/2 on [-0.5,0.5]^2",
         [](double x, double y) { return 0.5 * (x * x + y * y); }, -0.5, 0.5, -0.5, 0.5},
        {"red77_anisotropic", "red77", "x^2+2y^2 (not a solution)",
         [](double x, double y) { return x * x + 2.0 * y * y; }, 0, 2, 0, 2},
        {"red77_quadratic", "red77", "x^2+y^2 on [0,2]^2", [](double x, double y) { return x * x + y * y; }, 0, 2, 0, 2},
    };
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
    return v;
  }();
  return all;
}

const ManufacturedSolution& manufactured(const std::string& id) {
  for (const auto& m : manufactured_solutions()) {
    if (m.id == id) return m;
  }
  throw Error(ErrorCode::UnknownId, "no manufactured solution '" + id + "'");
}

CheckReport residual_prop73(const Fn1& a, const Fn1& b, const Fn1& A, const Fn1& B, const Field2& u, double tol) {
  const FourthOrderFields d = fourth_order_fields(u);
  const Grid2& g = u.grid();
  const int m2 = d.bih.margin();

  const auto [ulo, uhi] = range_of(u);
  const auto [llo, lhi] = range_of(d.lap);
  require_derivative(A, a, 1, llo, lhi, "A' != a");
  require_derivative(B, b, 2, ulo, uhi, "B'' != b");

  const Field2 eq = Field2::generate(g, m2, [&](int i, int j) {
    const double t = grad2(d.gu, i, j);
    const double lap = d.lap(i, j);
    const double coef = a(lap);
    const double lhs1 = coef * t * d.bih(i, j);
    const double lhs2 = -coef * lap * (d.gu.x(i, j) * d.glap.x(i, j) + d.gu.y(i, j) * d.glap.y(i, j));
    return normalized({lhs1, lhs2, -b(u(i, j)) * t * t});
  });
  require_solution(eq, "prop73");

  const Field2 P = Field2::generate(g, d.lap.margin(), [&](int i, int j) { return A(d.lap(i, j)) - B(u(i, j)); });
  const Field2 lapP = laplacian(P);
  const Gradient gP = gradient(P);
  const Field2 R = Field2::generate(g, lapP.margin(), [&](int i, int j) {
    const double first = grad2(d.gu, i, j) * lapP(i, j);
    const double second = -d.lap(i, j) * (gP.x(i, j) * d.gu.x(i, j) + gP.y(i, j) * d.gu.y(i, j));
    return normalized({first, second});
  });
  CheckReport r = summarize("residual_prop73", CheckKind::AtLeast, R, tol);
  r.notes.push_back("residual divided pointwise by 1 + sum of term magnitudes");
  r.residualField = R;
  return r;
}

CheckReport check_laplacian_bound(const Fn1& A, const Fn1& B, const Field2& u, double tol) {
  const Grid2& g = u.grid();
  const Field2 lap = laplacian(u);
  const Gradient gu = gradient(u);
  const int m = lap.margin();
  for (int i = m; i < g.nx - m; ++i) {
    for (int j = m; j < g.ny - m; ++j) {
      if (B(u(i, j)) < 0.0) {
        throw Error(ErrorCode::HypothesisFail, "B(u) >= 0 fails at (" + fmt(g.x(i)) + ", " + fmt(g.y(j)) + ")");
      }
      if (!(gu.y(i, j) > 0.0)) {
        throw Error(ErrorCode::HypothesisFail,
                    "u_y > 0 fails at (" + fmt(g.x(i)) + ", " + fmt(g.y(j)) + "), u_y = " + fmt(gu.y(i, j)));
      }
    }
  }
  const Field2 gap = Field2::generate(g, m, [&](int i, int j) {
    return lap(i, j) - invert_on_domain(A, B(u(i, j)), Interval{-1.0, 1.0});
  });
  CheckReport r = summarize("laplacian_bound", CheckKind::AtMost, gap, tol);
  r.residualField = gap;
  return r;
}

Field2 prop74_equation_residual(const Fn3& F3, const Field2& u) {
  const FourthOrderFields d = fourth_order_fields(u);
  return Field2::generate(u.grid(), d.bih.margin(), [&](int i, int j) {
    const double s = u(i, j);
    return normalized({hes2(d.H, i, j), -F3(s, grad2(d.gu, i, j), d.lap(i, j)), -0.5 * s * d.bih(i, j)});
  });
}

CheckReport residual_prop74(const Fn3& F3, const Field2& u, double tol) {
  const FourthOrderFields d = fourth_order_fields(u);
  const Grid2& g = u.grid();
  const int m1 = d.lap.margin();
  for (int i = m1; i < g.nx - m1; ++i) {
    for (int j = m1; j < g.ny - m1; ++j) {
      const double w = d.lap(i, j);
      const double f = F3(u(i, j), grad2(d.gu, i, j), w);
      if (f < 0.5 * w * w - 1e-12 * (1.0 + w * w)) {
        throw Error(ErrorCode::HypothesisFail, "F3 = " + fmt(f) + " < w^2/2 = " + fmt(0.5 * w * w) + " at (" +
                                                   fmt(g.x(i)) + ", " + fmt(g.y(j)) + ")");
      }
    }
  }
  require_solution(prop74_equation_residual(F3, u), "prop74");
  const Field2 P =
      Field2::generate(g, m1, [&](int i, int j) { return grad2(d.gu, i, j) - u(i, j) * d.lap(i, j); });
  const Field2 lapP = laplacian(P);
  const Field2 identity = Field2::generate(g, lapP.margin(), [&](int i, int j) {
    const double w = d.lap(i, j);
    return std::abs(lapP(i, j) - (2.0 * F3(u(i, j), grad2(d.gu, i, j), w) - w * w));
  });
  CheckReport r = summarize("residual_prop74", CheckKind::AtLeast, lapP, tol);
  r.subchecks.push_back(summarize("identity", CheckKind::AtMost, identity, tol));
  r.extras["max_P"] = range_of(P).second;
  r.extras["max_abs_laplacian_P"] = std::max(std::abs(r.stats.min), std::abs(r.stats.max));
  r.residualField = lapP;
  r.settle();
  return r;
}

CheckReport check_pointwise_75(const Fn3& F3, const Field2& u, double tol) {
  const Grid2& g = u.grid();
  const Field2 lap = laplacian(u);
  const Gradient gu = gradient(u);
  const int m = lap.margin();
  if (g.x(m) > -2.0 || g.x(g.nx - 1 - m) < 2.0 || g.y(m) > -2.0 || g.y(g.ny - 1 - m) < 2.0) {
    throw Error(ErrorCode::MarginTooSmall, "valid region must cover B_2 about the origin: " + g.describe());
  }
  require_solution(prop74_equation_residual(F3, u), "prop74");

  double maxP = -std::numeric_limits<double>::infinity();
  std::vector<double> loc{0.0, 0.0};
  double h1 = 0.0;
  double l2 = 0.0;
  const double cell = g.hx * g.hy;
  for (int i = m; i < g.nx - m; ++i) {
    for (int j = m; j < g.ny - m; ++j) {
      const double r2 = sq(g.x(i)) + sq(g.y(j));
      if (r2 < 4.0) {
        h1 += (sq(u(i, j)) + grad2(gu, i, j)) * cell;
        l2 += sq(lap(i, j)) * cell;
      }
      if (r2 < 1.0) {
        const double p = grad2(gu, i, j) - u(i, j) * lap(i, j);
        if (p > maxP) {
          maxP = p;
          loc = {g.x(i), g.y(j)};
        }
      }
    }
  }
  const double rhs = (std::sqrt(h1) + std::sqrt(l2)) / std::numbers::pi;
  CheckReport r;
  r.checkId = "pointwise_75";
  r.kind = CheckKind::AtMost;
  r.worstResidual = maxP - rhs;
  r.worstLocation = loc;
  r.tolerance = tol;
  r.stats = {r.worstResidual, r.worstResidual, r.worstResidual};
  r.extras["max_P_B1"] = maxP;
  r.extras["h1_norm_B2"] = std::sqrt(h1);
  r.extras["l2_laplacian_B2"] = std::sqrt(l2);
  r.extras["rhs"] = rhs;
  r.provenance["grid"] = g.describe();
  r.settle();
  return r;
}

CheckReport residual_cor76(double c, const Field2& u, double tol) {
  if (!(c >= 0.0)) throw Error(ErrorCode::BadParams, "cor76 needs c >= 0");
  const FourthOrderFields d = fourth_order_fields(u);
  const Grid2& g = u.grid();
  const int m1 = d.lap.margin();
  for (int i = m1; i < g.nx - m1; ++i) {
    for (int j = m1; j < g.ny - m1; ++j) {
      const double tr = d.H.xx(i, j) + d.H.yy(i, j);
      const double det = d.H.xx(i, j) * d.H.yy(i, j) - sq(d.H.xy(i, j));
      if (tr < -kConvexityTol || det < -kConvexityTol) {
        throw Error(ErrorCode::NotConvex, "Hessian not PSD at (" + fmt(g.x(i)) + ", " + fmt(g.y(j)) +
                                              "), trace " + fmt(tr) + ", det " + fmt(det));
      }
    }
  }
  const int m2 = d.bih.margin();
  const Field2 sub =
      Field2::generate(g, m2, [&](int i, int j) { return c * hes2(d.H, i, j) - d.bih(i, j); });
  const CheckReport subr = summarize("subsolution", CheckKind::AtLeast, sub, tol);
  if (!subr.pass) {
    throw Error(ErrorCode::NotSubsolution, "c|Hes u|^2 - Delta^2 u = " + fmt(subr.worstResidual) + " at (" +
                                               fmt(subr.worstLocation[0]) + ", " + fmt(subr.worstLocation[1]) + ")");
  }
  const Field2 P = combine({&d.lap}, [](std::span<const double> a) { return a[0] * a[0]; });
  const Field2 lapP = laplacian(P);
  const Field2 identity = Field2::generate(g, m2, [&](int i, int j) {
    const double rhs1 = 2.0 * (sq(d.glap.x(i, j)) + sq(d.glap.y(i, j)));
    const double rhs2 = 2.0 * d.lap(i, j) * d.bih(i, j);
    return std::abs(lapP(i, j) - rhs1 - rhs2) / (1.0 + std::abs(rhs1) + std::abs(rhs2));
  });
  CheckReport r = summarize("residual_cor76", CheckKind::AtLeast, lapP, tol);
  CheckReport id = summarize("proof_identity", CheckKind::AtMost, identity, tol);
  id.notes.push_back("divided pointwise by 1 + |2|grad Delta u|^2| + |2 Delta u Delta^2 u|");
  r.subchecks.push_back(id);
  r.extras["proof_identity_max"] = id.worstResidual;
  r.notes.push_back("P = (Delta u)^2; a pass on a bounded window is consistent with grad u constant, not a proof");
  r.residualField = lapP;
  r.settle();
  return r;
}

CheckReport check_reduction_77(const Field2& u, double tol) {
  const FourthOrderFields d = fourth_order_fields(u);
  const Grid2& g = u.grid();
  const int m2 = d.bih.margin();
  const Field2 eq = Field2::generate(g, m2, [&](int i, int j) {
    return normalized({2.0 * hes2(d.H, i, j), -sq(d.lap(i, j)), -u(i, j) * d.bih(i, j)});
  });
  require_solution(eq, "red77");
  const Field2 P = Field2::generate(g, d.lap.margin(), [&](int i, int j) {
    return grad2(d.gu, i, j) - u(i, j) * d.lap(i, j);
  });
  const Field2 lapP = laplacian(P);
  const Field2 absLap = combine({&lapP}, [](std::span<const double> a) { return std::abs(a[0]); });
  CheckReport r = summarize("reduction_77", CheckKind::AtMost, absLap, tol);
  const auto [lo, hi] = range_of(P);
  CheckReport flat;
  flat.checkId = "constancy_on_window";
  flat.kind = CheckKind::AtMost;
  flat.worstResidual = hi - lo;
  flat.tolerance = tol;
  flat.stats = {lo, hi, 0.5 * (lo + hi)};
  flat.worstLocation = r.worstLocation;
  flat.settle();
  r.subchecks.push_back(flat);
  r.extras["P_min"] = lo;
  r.extras["P_max"] = hi;
  r.residualField = P;
  r.settle();
  return r;
}

}  // namespace pfunc
