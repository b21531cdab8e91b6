#include "pfunc/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "pfunc/error.hpp"
#include "pfunc/solver.hpp"

namespace pfunc {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

// Short form for labels.
std::string label(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

std::string at_xy(double x, double y) { return "(" + fmt(x) + ", " + fmt(y) + ")"; }

std::pair<double, double> value_range(const Field2& u) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (int j = u.jlo(); j <= u.jhi(); ++j) {
    for (int i = u.ilo(); i <= u.ihi(); ++i) {
      lo = std::min(lo, u(i, j));
      hi = std::max(hi, u(i, j));
    }
  }
  return {lo, hi};
}

std::pair<double, double> value_range(const std::vector<double>& v) {
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  return {*lo, *hi};
}

// P(s, 0) <= tol on 201 samples of [lo, hi] plus the endpoints themselves.
void require_nonpositive_at_zero_gradient(const PFunctionSpec& spec, double lo, double hi, double tol) {
  const int n = 201;
  for (int k = 0; k < n; ++k) {
    const double s = lo + (hi - lo) * k / (n - 1);
    const double p = spec.P(s, 0.0);
    if (p > tol) {
      throw Error(ErrorCode::HypothesisFail,
                  "P(s, 0) = " + fmt(p) + " > " + fmt(tol) + " at s = " + fmt(s) + " (range of u is [" + fmt(lo) +
                      ", " + fmt(hi) + "]); the bound P <= 0 is not asserted");
    }
  }
}

double max_abs(const Field2& f) {
  double m = 0.0;
  for (int j = f.jlo(); j <= f.jhi(); ++j) {
    for (int i = f.ilo(); i <= f.ihi(); ++i) m = std::max(m, std::abs(f(i, j)));
  }
  return m;
}

CheckReport with_stats_only(std::string id, CheckKind kind, double worst, double tol) {
  CheckReport r;
  r.checkId = std::move(id);
  r.kind = kind;
  r.worstResidual = worst;
  r.tolerance = tol;
  r.stats = {worst, worst, worst};
  r.settle();
  return r;
}

// Psi'(s) = Gamma'(s) / B'(Psi(s)); nullopt where B' vanishes.
std::optional<double> psi_prime(const Separable& sep, double s) {
  const double psi = separable_psi(sep, s);
  const double bp = sep.B.d1(psi);
  if (!(std::abs(bp) > 1e-300)) return std::nullopt;
  return sep.Gamma.d1(s) / bp;
}

}  // namespace

void CheckReport::settle() {
  switch (kind) {
    case CheckKind::AtLeast:
      pass = worstResidual >= -tolerance;
      break;
    case CheckKind::AtMost:
      pass = worstResidual <= tolerance;
      break;
    case CheckKind::Exceeds:
      pass = worstResidual > tolerance;
      break;
  }
  for (const auto& s : subchecks) pass = pass && s.pass;
  if (error) pass = false;
}

CheckReport summarize(std::string id, CheckKind kind, const Field2& field, double tol) {
  const Grid2& g = field.grid();
  CheckReport r;
  r.checkId = std::move(id);
  r.kind = kind;
  r.tolerance = tol;
  bool seen = false;
  double sum = 0.0;
  std::size_t count = 0;
  int wi = 0;
  int wj = 0;
  for (int i = field.ilo(); i <= field.ihi(); ++i) {
    for (int j = field.jlo(); j <= field.jhi(); ++j) {
      const double v = field(i, j);
      const bool better = kind == CheckKind::AtMost ? v > r.worstResidual : v < r.worstResidual;
      if (!seen || better) {
        r.worstResidual = v;
        wi = i;
        wj = j;
      }
      if (!seen || v < r.stats.min) r.stats.min = v;
      if (!seen || v > r.stats.max) r.stats.max = v;
      seen = true;
      sum += v;
      ++count;
    }
  }
  r.stats.mean = sum / static_cast<double>(count);
  r.worstLocation = {g.x(wi), g.y(wj)};
  r.provenance["grid"] = g.describe();
  r.settle();
  return r;
}

CheckReport summarize(std::string id, CheckKind kind, const std::vector<double>& xs, const std::vector<double>& values,
                      double tol) {
  if (xs.size() != values.size() || xs.empty()) throw Error(ErrorCode::BadParams, "profile sample mismatch");
  CheckReport r;
  r.checkId = std::move(id);
  r.kind = kind;
  r.tolerance = tol;
  std::size_t w = 0;
  double sum = 0.0;
  r.stats.min = r.stats.max = values[0];
  for (std::size_t k = 0; k < values.size(); ++k) {
    const double v = values[k];
    const bool better = kind == CheckKind::AtMost ? v > values[w] : v < values[w];
    if (better) w = k;
    r.stats.min = std::min(r.stats.min, v);
    r.stats.max = std::max(r.stats.max, v);
    sum += v;
  }
  r.worstResidual = values[w];
  r.worstLocation = {xs[w]};
  r.stats.mean = sum / static_cast<double>(values.size());
  r.provenance["profile"] = "n=" + std::to_string(xs.size()) + " x=[" + fmt(xs.front()) + ", " + fmt(xs.back()) + "]";
  r.settle();
  return r;
}

Field2 eval_P_field(const PFunctionSpec& spec, const Field2& u) {
  const Gradient gr = gradient(u);
  return Field2::generate(u.grid(), u.margin() + 1, [&](int i, int j) {
    const double gx = gr.x(i, j);
    const double gy = gr.y(i, j);
    return spec.P(u(i, j), gx * gx + gy * gy);
  });
}

std::vector<double> eval_P_profile(const PFunctionSpec& spec, const Profile1& prof) {
  std::vector<double> out(prof.u.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = spec.P(prof.u[k], prof.du[k] * prof.du[k]);
  return out;
}

std::pair<Field2, CheckReport> residual_main_inequality(const Fn2& P, const Fn2& F, const Field2& u, double cgrid) {
  const Field2 eq = residual_gradient_semilinear(F, u);
  const CheckReport pre = summarize("solution_precheck", CheckKind::AtMost, combine({&eq}, [](std::span<const double> a) {
                                      return std::abs(a[0]);
                                    }),
                                    kSolutionPrecheckTol);
  if (!pre.pass) {
    throw Error(ErrorCode::NotASolution, "|Delta u - F(u, |grad u|^2)| = " + fmt(pre.worstResidual) + " at " +
                                             at_xy(pre.worstLocation[0], pre.worstLocation[1]));
  }

  PFunctionSpec spec;
  spec.P = P;
  const Field2 pf = eval_P_field(spec, u);
  const Field2 lapP = laplacian(pf);
  const Gradient gP = gradient(pf);
  const Gradient gu = gradient(u);
  const Grid2& g = u.grid();
  const int m = lapP.margin();

  const Field2 R = Field2::generate(g, m, [&](int i, int j) {
    const double s = u(i, j);
    const double ux = gu.x(i, j);
    const double uy = gu.y(i, j);
    const double t = ux * ux + uy * uy;
    const double pt = P.pt(s, t);
    const double ps = P.ps(s, t);
    const double a = pt * t * lapP(i, j);
    const double b = -(2.0 * pt * t * F.pt(s, t) - ps) * (gP.x(i, j) * ux + gP.y(i, j) * uy);
    const double c = -0.5 * (gP.x(i, j) * gP.x(i, j) + gP.y(i, j) * gP.y(i, j));
    return (a + b + c) / (1.0 + std::abs(a) + std::abs(b) + std::abs(c));
  });
  const double h = g.h();
  CheckReport rep = summarize("residual_main_inequality", CheckKind::AtLeast, R, cgrid * h * h);
  rep.notes.push_back("residual divided pointwise by 1 + sum of term magnitudes");

  // mu = P_t |grad u|^2 must be positive wherever the gradient is.
  double worst_pt = std::numeric_limits<double>::infinity();
  std::vector<double> loc{g.x(m), g.y(m)};
  for (int i = m; i < g.nx - m; ++i) {
    for (int j = m; j < g.ny - m; ++j) {
      const double t = gu.x(i, j) * gu.x(i, j) + gu.y(i, j) * gu.y(i, j);
      if (t <= 0.0) continue;
      const double pt = P.pt(u(i, j), t);
      if (pt < worst_pt) {
        worst_pt = pt;
        loc = {g.x(i), g.y(j)};
      }
    }
  }
  CheckReport gate = with_stats_only("pt_positive", CheckKind::Exceeds,
                                     std::isfinite(worst_pt) ? worst_pt : 1.0, 0.0);
  gate.worstLocation = loc;
  if (!std::isfinite(worst_pt)) gate.notes.push_back("gradient vanishes on the valid region");
  rep.subchecks.push_back(gate);
  rep.extras["solution_residual"] = pre.worstResidual;
  rep.settle();
  rep.residualField = R;
  return {R, rep};
}

CheckReport check_boundary_max_principle(const Field2& pfield, double tol) {
  const Extrema e = extrema(pfield);
  CheckReport r = with_stats_only("boundary_max_principle", CheckKind::AtMost,
                                  e.interiorMax.value - e.boundaryMax.value, tol);
  r.worstLocation = {e.interiorMax.x, e.interiorMax.y};
  r.extras["interior_max"] = e.interiorMax.value;
  r.extras["interior_argmax_x"] = e.interiorMax.x;
  r.extras["interior_argmax_y"] = e.interiorMax.y;
  r.extras["boundary_max"] = e.boundaryMax.value;
  r.extras["boundary_argmax_x"] = e.boundaryMax.x;
  r.extras["boundary_argmax_y"] = e.boundaryMax.y;
  r.provenance["grid"] = pfield.grid().describe();
  r.provenance["proxy"] = "bounded-domain maximum principle on the valid region";
  r.residualField = pfield;
  return r;
}

double separable_psi(const Separable& sep, double s) {
  const double gamma = sep.Gamma(s);
  if (gamma == 0.0) return 0.0;
  return invert_on_domain(sep.B, gamma, Interval{0.0, 1.0});
}

CheckReport check_gradient_bound(const PFunctionSpec& spec, const Field2& u, double tol) {
  const auto [lo, hi] = value_range(u);
  require_nonpositive_at_zero_gradient(spec, lo, hi, tol);
  const Field2 pf = eval_P_field(spec, u);
  CheckReport r = summarize("gradient_bound", CheckKind::AtMost, pf, tol);
  if (spec.separable) {
    const Gradient gr = gradient(u);
    try {
      const Field2 gap = Field2::generate(u.grid(), pf.margin(), [&](int i, int j) {
        const double t = gr.x(i, j) * gr.x(i, j) + gr.y(i, j) * gr.y(i, j);
        return t - separable_psi(*spec.separable, u(i, j));
      });
      const CheckReport s = summarize("grad2_minus_psi", CheckKind::AtMost, gap, tol);
      r.extras["max_grad2_minus_psi"] = s.worstResidual;
    } catch (const Error& e) {
      r.notes.push_back(std::string("separable bound not evaluated: ") + e.what());
    }
  }
  r.residualField = pf;
  r.provenance["pfunction"] = spec.id;
  return r;
}

CheckReport check_gradient_bound(const PFunctionSpec& spec, const Profile1& prof, double tol) {
  const auto [lo, hi] = value_range(prof.u);
  require_nonpositive_at_zero_gradient(spec, lo, hi, tol);
  CheckReport r = summarize("gradient_bound", CheckKind::AtMost, prof.xs, eval_P_profile(spec, prof), tol);
  if (spec.separable) {
    try {
      std::vector<double> gap(prof.u.size());
      for (std::size_t k = 0; k < gap.size(); ++k) {
        gap[k] = prof.du[k] * prof.du[k] - separable_psi(*spec.separable, prof.u[k]);
      }
      r.extras["max_grad2_minus_psi"] = *std::max_element(gap.begin(), gap.end());
    } catch (const Error& e) {
      r.notes.push_back(std::string("separable bound not evaluated: ") + e.what());
    }
  }
  r.provenance["pfunction"] = spec.id;
  return r;
}

CheckReport check_profile_first_integral(const PFunctionSpec& spec, const Profile1& prof, double tol) {
  const auto values = eval_P_profile(spec, prof);
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  CheckReport r = with_stats_only("profile_first_integral", CheckKind::AtMost, *hi - *lo, tol);
  r.worstLocation = {prof.xs[static_cast<std::size_t>(hi - values.begin())]};
  r.stats = summarize("p", CheckKind::AtMost, prof.xs, values, tol).stats;
  r.extras["p_min"] = *lo;
  r.extras["p_max"] = *hi;
  r.provenance["pfunction"] = spec.id;
  return r;
}

namespace {

CheckReport eikonal_common(const PFunctionSpec& spec, double maxP,
                           const std::vector<std::pair<double, double>>& samples /* (u, |grad u|^2) */,
                           const std::vector<std::vector<double>>& locs, double tol) {
  if (!spec.separable) throw Error(ErrorCode::BadParams, "eikonal reduction needs a separable P-function");
  if (maxP > tol) throw Error(ErrorCode::PNotConstant, "max |P| = " + fmt(maxP) + " > " + fmt(tol));
  double slope = 0.0;
  double worst = -1.0;
  std::size_t wk = 0;
  for (std::size_t k = 0; k < samples.size(); ++k) {
    const auto [s, t] = samples[k];
    if (auto d = psi_prime(*spec.separable, s)) slope = std::max(slope, std::abs(*d));
    const double gap = std::abs(t - separable_psi(*spec.separable, s));
    if (gap > worst) {
      worst = gap;
      wk = k;
    }
  }
  CheckReport r = with_stats_only("eikonal_reduction", CheckKind::AtMost, worst, tol * (1.0 + slope));
  r.worstLocation = locs[wk];
  r.extras["max_abs_P"] = maxP;
  r.extras["max_abs_psi_prime"] = slope;
  r.provenance["pfunction"] = spec.id;
  return r;
}

}  // namespace

CheckReport check_eikonal_reduction(const PFunctionSpec& spec, const Field2& u, double tol) {
  const Field2 pf = eval_P_field(spec, u);
  const Gradient gr = gradient(u);
  std::vector<std::pair<double, double>> samples;
  std::vector<std::vector<double>> locs;
  for (int i = pf.ilo(); i <= pf.ihi(); ++i) {
    for (int j = pf.jlo(); j <= pf.jhi(); ++j) {
      samples.emplace_back(u(i, j), gr.x(i, j) * gr.x(i, j) + gr.y(i, j) * gr.y(i, j));
      locs.push_back({u.grid().x(i), u.grid().y(j)});
    }
  }
  CheckReport r = eikonal_common(spec, max_abs(pf), samples, locs, tol);
  r.provenance["grid"] = u.grid().describe();
  return r;
}

CheckReport check_eikonal_reduction(const PFunctionSpec& spec, const Profile1& prof, double tol) {
  const auto values = eval_P_profile(spec, prof);
  double maxP = 0.0;
  for (double v : values) maxP = std::max(maxP, std::abs(v));
  std::vector<std::pair<double, double>> samples;
  std::vector<std::vector<double>> locs;
  for (std::size_t k = 0; k < prof.u.size(); ++k) {
    samples.emplace_back(prof.u[k], prof.du[k] * prof.du[k]);
    locs.push_back({prof.xs[k]});
  }
  return eikonal_common(spec, maxP, samples, locs, tol);
}

namespace {

// Flatness of u on {Gamma(u) <= tol} around the first sample with |Gamma(u)| <= tol.
CheckReport gamma_zero(const std::vector<double>& values, const std::vector<std::vector<double>>& locs,
                       const Fn1& Gamma, double tol) {
  std::optional<std::size_t> anchor;
  for (std::size_t k = 0; k < values.size() && !anchor; ++k) {
    if (std::abs(Gamma(values[k])) <= tol) anchor = k;
  }
  if (!anchor) {
    CheckReport r = with_stats_only("liouville", CheckKind::AtMost, 0.0, tol);
    r.vacuous = true;
    double least = std::numeric_limits<double>::infinity();
    for (double v : values) least = std::min(least, std::abs(Gamma(v)));
    r.extras["min_abs_gamma"] = least;
    r.notes.push_back("hypothesis not triggered: Gamma(u) never within tolerance of 0");
    return r;
  }
  const double u0 = values[*anchor];
  double worst = 0.0;
  std::size_t wk = *anchor;
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (Gamma(values[k]) > tol) continue;
    const double d = std::abs(values[k] - u0);
    if (d > worst) {
      worst = d;
      wk = k;
    }
  }
  CheckReport r = with_stats_only("liouville", CheckKind::AtMost, worst, tol);
  r.worstLocation = locs[wk];
  r.extras["anchor_u"] = u0;
  r.notes.push_back("flatness of u on {Gamma(u) <= tol} around the anchor sample");
  return r;
}

}  // namespace

CheckReport check_liouville(const Field2& u, const LiouvilleMode& mode, double tol) {
  const Grid2& g = u.grid();
  CheckReport r;
  if (const auto* gz = std::get_if<GammaZeroPropagation>(&mode)) {
    std::vector<double> values;
    std::vector<std::vector<double>> locs;
    for (int i = u.ilo(); i <= u.ihi(); ++i) {
      for (int j = u.jlo(); j <= u.jhi(); ++j) {
        values.push_back(u(i, j));
        locs.push_back({g.x(i), g.y(j)});
      }
    }
    r = gamma_zero(values, locs, gz->Gamma, tol);
    r.extras["mode_gamma_zero"] = 1.0;
  } else if (const auto* gp = std::get_if<GradPFunction>(&mode)) {
    const Gradient gr = gradient(u);
    const Field2 grad_norm = combine({&gr.x, &gr.y}, [](std::span<const double> a) { return std::hypot(a[0], a[1]); });
    const Field2 pf = combine({&grad_norm}, [gp](std::span<const double> a) { return gp->g(a[0] * a[0]); });
    const CheckReport supP = summarize("sup_p", CheckKind::AtMost, pf, tol);
    const CheckReport supG = summarize("sup_grad", CheckKind::AtMost, grad_norm, gp->gradTol);
    if (supP.worstResidual > tol) {
      r = with_stats_only("liouville", CheckKind::AtMost, 0.0, tol);
      r.vacuous = true;
      r.notes.push_back("hypothesis not triggered: sup P exceeds tolerance");
    } else {
      r = supG;
      r.checkId = "liouville";
    }
    r.extras["sup_p"] = supP.worstResidual;
    r.extras["sup_grad"] = supG.worstResidual;
  } else {
    const auto& nc = std::get<NonexistenceConstantTest>(mode);
    const double c = u(g.nx / 2, g.ny / 2);
    const Field2 constant = Field2::sample(g, [c](double, double) { return c; });
    const Field2 lap = laplacian(constant);
    const Field2 res = combine({&lap}, [&nc](std::span<const double> a) { return std::abs(a[0] - nc.G(0.0)); });
    r = summarize("liouville", CheckKind::Exceeds, res, tol);
    r.extras["G0"] = nc.G(0.0);
    r.notes.push_back("no constant field solves Delta u = G(|grad u|^2); bounded entire solutions are excluded");
  }
  r.provenance["grid"] = g.describe();
  r.settle();
  return r;
}

CheckReport check_liouville(const Profile1& prof, const LiouvilleMode& mode, double tol) {
  const auto* gz = std::get_if<GammaZeroPropagation>(&mode);
  if (!gz) throw Error(ErrorCode::ModeMismatch, "only GammaZeroPropagation applies to a profile");
  std::vector<std::vector<double>> locs;
  for (double x : prof.xs) locs.push_back({x});
  CheckReport r = gamma_zero(prof.u, locs, gz->Gamma, tol);
  r.settle();
  return r;
}

GradFunction GradFunction::squared_norm() {
  return {"|p|^2", [](double a, double b) { return a * a + b * b; },
          [](double, double) { return std::array<double, 3>{2.0, 0.0, 2.0}; }};
}

CheckReport check_monge_ampere(const Field2& u, const GradFunction& gfn, double tol,
                               const std::vector<double>& radii) {
  const Grid2& g = u.grid();
  const Field2 det = det_hessian(u);
  const Gradient drift = ma_drift(u);  // throws DegenerateHessian
  const Gradient gu = gradient(u);
  const int m1 = u.margin() + 1;

  for (int i = m1; i < g.nx - m1; ++i) {
    for (int j = m1; j < g.ny - m1; ++j) {
      const auto h = gfn.hessian(gu.x(i, j), gu.y(i, j));
      const double tr = h[0] + h[2];
      const double dt = h[0] * h[2] - h[1] * h[1];
      if (tr < -1e-10 || dt < -1e-10) {
        throw Error(ErrorCode::HypothesisFail, "Hessian of g not PSD at grad u = " + at_xy(gu.x(i, j), gu.y(i, j)));
      }
    }
  }

  const Field2 G = Field2::generate(g, m1, [&](int i, int j) { return gfn.value(gu.x(i, j), gu.y(i, j)); });
  const Field2 lapG = laplacian(G);
  const Gradient gG = gradient(G);
  const Field2 res = Field2::generate(g, drift.x.margin(), [&](int i, int j) {
    return lapG(i, j) - (drift.x(i, j) * gG.x(i, j) + drift.y(i, j) * gG.y(i, j));
  });

  CheckReport r = summarize("monge_ampere", CheckKind::AtLeast, res, tol);
  CheckReport a = summarize("det_positive", CheckKind::Exceeds, det, kDetEpsilon);
  r.subchecks.push_back(a);
  double drift_max = std::max(max_abs(drift.x), max_abs(drift.y));
  r.extras["drift_max_abs"] = drift_max;
  const CheckReport lapStats = summarize("lap_g", CheckKind::AtLeast, lapG, 0.0);
  r.extras["laplacian_g_min"] = lapStats.stats.min;
  r.extras["laplacian_g_max"] = lapStats.stats.max;

  if (drift_max <= 1e-8) {
    const double cx = 0.5 * (g.x(0) + g.x(g.nx - 1));
    const double cy = 0.5 * (g.y(0) + g.y(g.ny - 1));
    const auto [ci, cj] = g.nearest(cx, cy);
    const double centre = G(ci, cj);
    std::vector<double> avgs;
    for (double rad : radii) {
      const double avg = ball_average(G, g.x(ci), g.y(cj), rad);
      avgs.push_back(avg);
      CheckReport s = with_stats_only("sub_mean_value_r" + label(rad), CheckKind::AtLeast, avg - centre, tol);
      s.worstLocation = {g.x(ci), g.y(cj)};
      s.extras["ball_average"] = avg;
      s.extras["centre_value"] = centre;
      r.subchecks.push_back(s);
    }
    double mono = std::numeric_limits<double>::infinity();
    for (std::size_t k = 1; k < avgs.size(); ++k) mono = std::min(mono, avgs[k] - avgs[k - 1]);
    if (avgs.size() > 1) r.subchecks.push_back(with_stats_only("ball_average_monotone", CheckKind::AtLeast, mono, tol));
  } else {
    r.notes.push_back("drift nonzero: ball sub-mean-value subcheck applies only to the pure Laplacian case");
  }
  r.provenance["g"] = gfn.name;
  r.provenance["proxy"] = "balls in place of the sections D_R";
  r.residualField = res;
  r.settle();
  return r;
}

CheckReport check_mean_value_monotonicity(const Field2& f, double cx, double cy, const std::vector<double>& radii,
                                          double tol) {
  if (radii.empty()) throw Error(ErrorCode::BadParams, "no radii given");
  const Field2 lap = laplacian(f);
  const CheckReport sub = summarize("subharmonic", CheckKind::AtLeast, lap, tol);
  if (!sub.pass) {
    throw Error(ErrorCode::NotSubharmonic, "Delta_h f = " + fmt(sub.worstResidual) + " at " +
                                               at_xy(sub.worstLocation[0], sub.worstLocation[1]));
  }
  const Grid2& g = f.grid();
  const auto [ci, cj] = g.nearest(cx, cy);
  const double centre = f(ci, cj);
  double worst = std::numeric_limits<double>::infinity();
  double prev = centre;
  CheckReport r;
  for (std::size_t k = 0; k < radii.size(); ++k) {
    if (k > 0 && !(radii[k] > radii[k - 1])) throw Error(ErrorCode::BadParams, "radii must ascend");
    const double avg = ball_average(f, g.x(ci), g.y(cj), radii[k]);
    r.extras["average_r" + label(radii[k])] = avg;
    worst = std::min(worst, avg - prev);
    prev = avg;
  }
  r.checkId = "mean_value_monotonicity";
  r.kind = CheckKind::AtLeast;
  r.worstResidual = worst;
  r.tolerance = tol;
  r.stats = {worst, worst, worst};
  r.worstLocation = {g.x(ci), g.y(cj)};
  r.extras["centre_value"] = centre;
  r.provenance["grid"] = g.describe();
  r.provenance["proxy"] = "balls in place of the sections D_R";
  r.settle();
  return r;
}

}  // namespace pfunc
