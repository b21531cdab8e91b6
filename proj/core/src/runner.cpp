#include "pfunc/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "pfunc/criterion.hpp"
#include "pfunc/error.hpp"
#include "pfunc/higher.hpp"

namespace pfunc {

namespace {

using json = nlohmann::json;

[[noreturn]] void config_error(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::ConfigError, path + ": " + what);
}

void allow_keys(const json& obj, const std::string& path, std::initializer_list<const char*> keys) {
  if (!obj.is_object()) config_error(path, "expected an object");
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (std::none_of(keys.begin(), keys.end(), [&](const char* k) { return it.key() == k; })) {
      config_error(path + "." + it.key(), "unknown key");
    }
  }
}

std::string get_string(const json& obj, const char* key, const std::string& path) {
  const json& v = obj.at(key);
  if (!v.is_string()) config_error(path + "." + key, "expected a string");
  return v.get<std::string>();
}

double get_number(const json& obj, const char* key, const std::string& path) {
  const json& v = obj.at(key);
  if (!v.is_number()) config_error(path + "." + key, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) config_error(path + "." + key, "expected a finite number");
  return d;
}

int get_int(const json& obj, const char* key, const std::string& path) {
  const json& v = obj.at(key);
  if (!v.is_number_integer()) config_error(path + "." + key, "expected an integer");
  return v.get<int>();
}

void maybe(const json& obj, const char* key, const std::string& path, double& out) {
  if (obj.contains(key)) out = get_number(obj, key, path);
}

FieldSource::Kind parse_kind(const std::string& s, const std::string& path) {
  using K = FieldSource::Kind;
  for (K k : {K::Solve, K::Profile, K::Kink, K::KinkField, K::Manufactured, K::Counterexample, K::Bump, K::Constant,
              K::Linear}) {
    if (to_string(k) == s) return k;
  }
  config_error(path, "unknown field kind '" + s + "'");
}

FieldSource::Boundary parse_boundary(const std::string& s, const std::string& path) {
  if (s == "constant") return FieldSource::Boundary::Constant;
  if (s == "linear_x") return FieldSource::Boundary::LinearX;
  if (s == "profile_x") return FieldSource::Boundary::ProfileX;
  config_error(path, "unknown boundary '" + s + "'");
}

bool known_error_code(const std::string& name) {
  for (int k = 0; k <= static_cast<int>(ErrorCode::UnknownId); ++k) {
    if (to_string(static_cast<ErrorCode>(k)) == name) return true;
  }
  return false;
}

void validate_expect(const std::string& e, const std::string& path) {
  if (e == "pass" || e == "fail" || e == "vacuous" || e == "error") return;
  if (e.rfind("error:", 0) == 0 && known_error_code(e.substr(6))) return;
  config_error(path, "expect must be pass, fail, vacuous, error or error:<Code>");
}

CheckRequest parse_check(const json& v, const std::string& path) {
  CheckRequest r;
  if (v.is_string()) {
    r.id = v.get<std::string>();
  } else {
    allow_keys(v, path, {"id", "tol", "expect", "params", "mode"});
    if (!v.contains("id")) config_error(path + ".id", "missing");
    r.id = get_string(v, "id", path);
    if (v.contains("tol")) {
      r.tol = get_number(v, "tol", path);
      if (!(*r.tol >= 0.0)) config_error(path + ".tol", "must be nonnegative");
    }
    if (v.contains("expect")) r.expect = get_string(v, "expect", path);
    if (v.contains("mode")) {
      r.mode = get_string(v, "mode", path);
      if (*r.mode != "gamma_zero" && *r.mode != "grad_p" && *r.mode != "nonexistence") {
        config_error(path + ".mode", "expected gamma_zero, grad_p or nonexistence");
      }
    }
    if (v.contains("params")) {
      const json& p = v.at("params");
      if (!p.is_object()) config_error(path + ".params", "expected an object");
      for (auto it = p.begin(); it != p.end(); ++it) r.params[it.key()] = get_number(p, it.key().c_str(), path + ".params");
    }
  }
  if (!is_known_check(r.id)) config_error(path, "unknown check id '" + r.id + "'");
  validate_expect(r.expect, path + ".expect");
  return r;
}

std::string registry_ref(const json& job, const char* key, const std::string& path) {
  const std::string id = get_string(job, key, path);
  try {
    (void)registry_case(id);
  } catch (const Error&) {
    config_error(path + "." + key, "unknown registry id '" + id + "'");
  }
  return id;
}

JobConfig parse_job(const json& j, const std::string& path) {
  allow_keys(j, path, {"jobId", "equation", "pfunction", "field", "grid", "solver", "checks", "outputs", "description"});
  for (const char* req : {"jobId", "equation", "checks"}) {
    if (!j.contains(req)) config_error(path + "." + req, "missing");
  }
  JobConfig job;
  job.jobId = get_string(j, "jobId", path);
  if (job.jobId.empty() || job.jobId.find_first_of("/\\") != std::string::npos) {
    config_error(path + ".jobId", "must be a nonempty name without path separators");
  }
  job.equation = registry_ref(j, "equation", path);
  job.pfunction = j.contains("pfunction") ? registry_ref(j, "pfunction", path) : job.equation;
  job.field = registry_case(job.equation).field;

  if (j.contains("field")) {
    const json& f = j.at("field");
    const std::string fp = path + ".field";
    allow_keys(f, fp, {"kind", "bc", "value", "u0", "v0", "x0", "spanLo", "spanHi", "profileH", "manufacturedId", "scale"});
    if (f.contains("kind")) job.field.kind = parse_kind(get_string(f, "kind", fp), fp + ".kind");
    if (f.contains("bc")) job.field.bc = parse_boundary(get_string(f, "bc", fp), fp + ".bc");
    maybe(f, "value", fp, job.field.value);
    maybe(f, "u0", fp, job.field.u0);
    maybe(f, "v0", fp, job.field.v0);
    maybe(f, "x0", fp, job.field.x0);
    maybe(f, "spanLo", fp, job.field.spanLo);
    maybe(f, "spanHi", fp, job.field.spanHi);
    maybe(f, "profileH", fp, job.field.profileH);
    maybe(f, "scale", fp, job.field.scale);
    if (f.contains("manufacturedId")) {
      job.field.manufacturedId = get_string(f, "manufacturedId", fp);
      try {
        (void)manufactured(job.field.manufacturedId);
      } catch (const Error&) {
        config_error(fp + ".manufacturedId", "unknown manufactured solution '" + job.field.manufacturedId + "'");
      }
    }
    if (job.field.kind == FieldSource::Kind::Manufactured && job.field.manufacturedId.empty()) {
      config_error(fp + ".manufacturedId", "required for manufactured fields");
    }
  }
  if (j.contains("grid")) {
    const json& g = j.at("grid");
    const std::string gp = path + ".grid";
    allow_keys(g, gp, {"xlo", "xhi", "ylo", "yhi", "h"});
    maybe(g, "xlo", gp, job.field.xlo);
    maybe(g, "xhi", gp, job.field.xhi);
    maybe(g, "ylo", gp, job.field.ylo);
    maybe(g, "yhi", gp, job.field.yhi);
    maybe(g, "h", gp, job.field.h);
  }
  if (job.field.is_profile()) {
    if (!(job.field.profileH > 0.0) || !(job.field.spanHi > job.field.spanLo)) {
      config_error(path + ".field", "profile needs profileH > 0 and spanLo < spanHi");
    }
  } else {
    try {
      (void)job.field.grid();
    } catch (const Error& e) {
      config_error(path + ".grid", e.what());
    }
  }
  if (j.contains("solver")) {
    const json& s = j.at("solver");
    const std::string sp = path + ".solver";
    allow_keys(s, sp, {"maxIter", "residualTol", "dampingHalvings", "initialGuess"});
    if (s.contains("maxIter")) job.solver.maxIter = get_int(s, "maxIter", sp);
    if (s.contains("dampingHalvings")) job.solver.dampingHalvings = get_int(s, "dampingHalvings", sp);
    maybe(s, "residualTol", sp, job.solver.residualTol);
    if (s.contains("initialGuess")) {
      const std::string g = get_string(s, "initialGuess", sp);
      if (g == "zero") {
        job.solver.initialGuess = InitialGuess::ZeroField;
      } else if (g == "harmonic_lift") {
        job.solver.initialGuess = InitialGuess::BoundaryHarmonicLift;
      } else {
        config_error(sp + ".initialGuess", "expected zero or harmonic_lift");
      }
    }
    if (job.solver.maxIter < 1 || job.solver.dampingHalvings < 0 || !(job.solver.residualTol > 0.0)) {
      config_error(sp, "maxIter >= 1, dampingHalvings >= 0 and residualTol > 0 required");
    }
  }
  const json& checks = j.at("checks");
  if (!checks.is_array() || checks.empty()) config_error(path + ".checks", "expected a nonempty array");
  std::set<std::string> seen;
  for (std::size_t k = 0; k < checks.size(); ++k) {
    const std::string cp = path + ".checks[" + std::to_string(k) + "]";
    CheckRequest r = parse_check(checks[k], cp);
    if (!seen.insert(r.id).second) config_error(cp, "duplicate check id '" + r.id + "'");
    job.checks.push_back(std::move(r));
  }
  job.reportPath = job.jobId + ".json";
  if (j.contains("outputs")) {
    const json& o = j.at("outputs");
    const std::string op = path + ".outputs";
    allow_keys(o, op, {"reportPath", "fieldDumpDir"});
    if (o.contains("reportPath")) job.reportPath = get_string(o, "reportPath", op);
    if (o.contains("fieldDumpDir")) job.fieldDumpDir = get_string(o, "fieldDumpDir", op);
  }
  return job;
}

// ---------------------------------------------------------------------------
// fields

double hermite(const Profile1& p, double x) {
  const double pos = (x - p.xs.front()) / p.h;
  const auto last = static_cast<long>(p.xs.size()) - 1;
  long k = std::clamp(static_cast<long>(std::floor(pos)), 0L, last - 1);
  const double t = pos - static_cast<double>(k);
  const auto a = static_cast<std::size_t>(k);
  const double t2 = t * t;
  const double t3 = t2 * t;
  return (2 * t3 - 3 * t2 + 1) * p.u[a] + (t3 - 2 * t2 + t) * p.h * p.du[a] + (-2 * t3 + 3 * t2) * p.u[a + 1] +
         (t3 - t2) * p.h * p.du[a + 1];
}

const EquationSpec& need_equation(const Case& c) {
  if (!c.equation) throw Error(ErrorCode::BadParams, "case '" + c.id + "' has no equation");
  return *c.equation;
}

std::optional<Fn2> gradient_form(const EquationSpec& eq) {
  if (const auto* s = std::get_if<Semilinear>(&eq.form)) return as_gradient_semilinear(*s);
  if (const auto* g = std::get_if<GradientSemilinear>(&eq.form)) return g->F;
  return std::nullopt;
}

Fn2 need_F(const Case& c) {
  auto F = gradient_form(need_equation(c));
  if (!F) throw Error(ErrorCode::BadParams, "case '" + c.id + "' is not of the form Delta u = F(u, |grad u|^2)");
  return *F;
}

Materialized solve_field(const JobConfig& job, const Case& c) {
  const FieldSource& f = job.field;
  const EquationSpec& eq = need_equation(c);
  const Grid2 g = f.grid();
  BoundaryFn bc;
  switch (f.bc) {
    case FieldSource::Boundary::Constant:
      bc = [v = f.value](double, double) { return v; };
      break;
    case FieldSource::Boundary::LinearX:
      bc = [v = f.value, s = f.scale](double x, double) { return v + s * x; };
      break;
    case FieldSource::Boundary::ProfileX: {
      const double lo = std::min(f.xlo, f.x0) - 0.05;
      const double hi = std::max(f.xhi, f.x0) + 0.05;
      Profile1 prof = integrate_profile(eq, f.u0, f.v0, f.profileH, Interval{lo, hi}, f.x0);
      bc = [prof = std::move(prof)](double x, double) { return hermite(prof, x); };
      break;
    }
  }
  SolveResult res;
  SolverTelemetry tel;
  if (const auto* d = std::get_if<DivergenceForm>(&eq.form)) {
    res = solve_divergence_form(*d, g, bc, job.solver);
    tel.solver = "newton_divergence_form";
  } else if (auto F = gradient_form(eq)) {
    res = solve_gradient_semilinear(*F, g, bc, job.solver);
    tel.solver = "newton_gradient_semilinear";
  } else {
    throw Error(ErrorCode::BadParams, "no solver for the equation of case '" + c.id + "'");
  }
  tel.iterations = res.iterations;
  tel.residualHistory = res.residualHistory;
  tel.recheckResidual = res.recheckResidual;
  return {std::move(res.u), std::move(tel)};
}

Field2 closed_form(const FieldSource& f, const std::function<double(double, double)>& fn) {
  return Field2::sample(f.grid(), [&fn, s = f.scale](double x, double y) { return s * fn(x, y); });
}

// ---------------------------------------------------------------------------
// checks

double param(const CheckRequest& r, const std::string& key, double fallback) {
  auto it = r.params.find(key);
  return it == r.params.end() ? fallback : it->second;
}

const Field2& need_field(const Materialized* m, const std::string& check) {
  if (m == nullptr || !std::holds_alternative<Field2>(m->u)) {
    throw Error(ErrorCode::BadParams, check + " needs a grid field");
  }
  return std::get<Field2>(m->u);
}

const PFunctionSpec& need_pfunction(const JobConfig& job) {
  const Case& p = registry_case(job.pfunction);
  if (!p.pfunction) throw Error(ErrorCode::BadParams, "case '" + job.pfunction + "' has no P-function");
  return *p.pfunction;
}

double grid_tol(const Field2& u, double c = kDefaultCgrid) {
  const double h = u.grid().h();
  return c * h * h;
}

CheckReport from_verdict(const CriterionVerdict& v, const std::string& route) {
  CheckReport r;
  r.checkId = "criterion";
  r.kind = CheckKind::AtLeast;
  r.worstResidual = v.minResidual;
  r.worstLocation = {v.argminS, v.argminT};
  r.tolerance = v.tolerance;
  r.stats = {v.minResidual, v.minResidual, v.minResidual};
  r.provenance["route"] = route;
  r.provenance["variant"] = v.variant;
  r.extras["samples_checked"] = static_cast<double>(v.samplesChecked);
  r.extras["samples_skipped"] = static_cast<double>(v.samplesSkipped);
  r.notes.push_back("worst sample over (s, t); stats summarize that sample only");
  for (const CriterionSubcheck& sc : v.subchecks) {
    CheckReport s;
    s.checkId = sc.name;
    s.kind = CheckKind::AtLeast;
    s.worstResidual = sc.worstValue;
    s.worstLocation = {sc.s, sc.t};
    s.tolerance = v.tolerance;
    s.stats = {sc.worstValue, sc.worstValue, sc.worstValue};
    s.pass = sc.pass;
    r.subchecks.push_back(std::move(s));
  }
  r.pass = v.pass;
  return r;
}

CheckReport check_criterion(const JobConfig& job, const CheckRequest& req) {
  const Case& c = registry_case(job.pfunction);
  const PFunctionSpec& spec = need_pfunction(job);
  const Case& eqCase = registry_case(job.equation);
  const double tol = req.tol.value_or(kCriterionTol);
  const int ns = static_cast<int>(param(req, "n_s", 41));
  const int nt = static_cast<int>(param(req, "n_t", 41));
  switch (c.route) {
    case CriterionRoute::CorollarySemilinear: {
      const auto* s = std::get_if<Semilinear>(&need_equation(eqCase).form);
      if (!s) throw Error(ErrorCode::BadParams, "corollary route needs Delta u = f(u)");
      return from_verdict(check_corollary_semilinear(spec.P, s->f, c.criterionRect, ns, nt, tol), "corollary_semilinear");
    }
    case CriterionRoute::Hypothesis2:
      return from_verdict(check_hypothesis2(spec.P, need_F(eqCase), c.criterionRect, ns, nt, tol), "hypothesis2");
    case CriterionRoute::External:
      break;
  }
  CheckReport r;
  r.checkId = "criterion";
  r.kind = CheckKind::AtMost;
  r.tolerance = tol;
  r.vacuous = true;
  r.provenance["route"] = "external";
  r.notes.push_back("P-function property established outside the sampled criterion; only field proxies apply");
  r.settle();
  return r;
}

CheckReport check_solution_residual(const JobConfig& job, const CheckRequest& req, const Materialized* m) {
  const Field2& u = need_field(m, "solution_residual");
  const EquationSpec& eq = need_equation(registry_case(job.equation));
  Field2 res = [&] {
    if (const auto* d = std::get_if<DivergenceForm>(&eq.form)) return residual_divergence_form(*d, u);
    if (auto F = gradient_form(eq)) return residual_gradient_semilinear(*F, u);
    throw Error(ErrorCode::BadParams, "solution_residual supports second-order equations only");
  }();
  const Field2 absres = combine({&res}, [](std::span<const double> a) { return std::abs(a[0]); });
  const double tol = job.field.kind == FieldSource::Kind::Solve ? kSolutionPrecheckTol : grid_tol(u);
  CheckReport r = summarize("solution_residual", CheckKind::AtMost, absres, req.tol.value_or(tol));
  r.residualField = absres;
  r.settle();
  return r;
}

LiouvilleMode liouville_mode(const Case& c, const std::optional<std::string>& requested) {
  const std::string mode = requested.value_or(c.nonexistenceG ? "nonexistence"
                                              : c.liouvilleGamma ? "gamma_zero"
                                              : c.gradPg ? "grad_p"
                                                         : "");
  if (mode == "nonexistence" && c.nonexistenceG) return NonexistenceConstantTest{*c.nonexistenceG};
  if (mode == "gamma_zero" && c.liouvilleGamma) return GammaZeroPropagation{*c.liouvilleGamma};
  if (mode == "grad_p" && c.gradPg) return GradPFunction{*c.gradPg};
  throw Error(ErrorCode::BadParams, "case '" + c.id + "' has no data for liouville mode '" + mode + "'");
}

Field2 grad_function_field(const GradFunction& g, const Field2& u) {
  const Gradient gr = gradient(u);
  return combine({&gr.x, &gr.y}, [&g](std::span<const double> a) { return g.value(a[0], a[1]); });
}

CheckReport dispatch(const JobConfig& job, const CheckRequest& req, const Materialized* m) {
  const std::string& id = req.id;
  const Case& c = registry_case(job.equation);
  const Profile1* prof = m ? std::get_if<Profile1>(&m->u) : nullptr;

  if (id == "criterion") return check_criterion(job, req);
  if (id == "solution_residual") return check_solution_residual(job, req, m);
  if (id == "residual_main_inequality") {
    const Field2& u = need_field(m, id);
    const double h = u.grid().h();
    const double cgrid = req.tol ? *req.tol / (h * h) : param(req, "cgrid", kDefaultCgrid);
    return residual_main_inequality(need_pfunction(job).P, need_F(c), u, cgrid).second;
  }
  if (id == "boundary_max_principle") {
    const Field2 pf = eval_P_field(need_pfunction(job), need_field(m, id));
    double scale = 0.0;
    for (int i = pf.ilo(); i <= pf.ihi(); ++i) {
      for (int j = pf.jlo(); j <= pf.jhi(); ++j) scale = std::max(scale, std::abs(pf(i, j)));
    }
    CheckReport r = check_boundary_max_principle(pf, req.tol.value_or(grid_tol(pf) * (1.0 + scale)));
    const Field2& u = need_field(m, id);
    const Gradient gu = gradient(u);
    const auto [i, j] = u.grid().nearest(r.worstLocation[0], r.worstLocation[1]);
    const double g2 = gu.x(i, j) * gu.x(i, j) + gu.y(i, j) * gu.y(i, j);
    r.extras["grad2_at_interior_max"] = g2;
    if (g2 <= 1e-8) r.notes.push_back("interior maximum sits at a critical point of u, where mu = P_t |grad u|^2 vanishes");
    return r;
  }
  if (id == "gradient_bound") {
    if (prof) return check_gradient_bound(need_pfunction(job), *prof, req.tol.value_or(1e-10));
    const Field2& u = need_field(m, id);
    return check_gradient_bound(need_pfunction(job), u, req.tol.value_or(grid_tol(u)));
  }
  if (id == "profile_first_integral") {
    if (!prof) throw Error(ErrorCode::BadParams, "profile_first_integral needs a profile");
    return check_profile_first_integral(need_pfunction(job), *prof, req.tol.value_or(1e-7));
  }
  if (id == "eikonal_reduction") {
    if (prof) return check_eikonal_reduction(need_pfunction(job), *prof, req.tol.value_or(1e-8));
    const Field2& u = need_field(m, id);
    return check_eikonal_reduction(need_pfunction(job), u, req.tol.value_or(grid_tol(u)));
  }
  if (id == "liouville") {
    const LiouvilleMode mode = liouville_mode(c, req.mode);
    const double tol = req.tol.value_or(1e-12);
    if (prof) return check_liouville(*prof, mode, tol);
    return check_liouville(need_field(m, id), mode, tol);
  }
  if (id == "monge_ampere") {
    const Field2& u = need_field(m, id);
    return check_monge_ampere(u, c.maG, req.tol.value_or(grid_tol(u)));
  }
  if (id == "mean_value_monotonicity") {
    const Field2& u = need_field(m, id);
    const Grid2& g = u.grid();
    const std::vector<double> centre =
        c.meanValueCentre.value_or(std::vector<double>{g.x(g.nx / 2), g.y(g.ny / 2)});
    const Field2 G = grad_function_field(c.maG, u);
    CheckReport r = check_mean_value_monotonicity(G, param(req, "cx", centre[0]), param(req, "cy", centre[1]),
                                                  kBallRadii, req.tol.value_or(grid_tol(u)));
    r.provenance["g"] = c.maG.name;
    return r;
  }
  if (id == "laplacian_bound" || id == "residual_prop73") {
    if (!c.prop73) throw Error(ErrorCode::BadParams, "case '" + c.id + "' has no fourth-order (a, b, A, B) data");
    const Field2& u = need_field(m, id);
    if (id == "laplacian_bound") return check_laplacian_bound(c.prop73->A, c.prop73->B, u, req.tol.value_or(1e-10));
    return residual_prop73(c.prop73->a, c.prop73->b, c.prop73->A, c.prop73->B, u, req.tol.value_or(grid_tol(u)));
  }
  if (id == "residual_prop74" || id == "pointwise_75") {
    if (!c.F3) throw Error(ErrorCode::BadParams, "case '" + c.id + "' has no F3");
    const Field2& u = need_field(m, id);
    if (id == "residual_prop74") return residual_prop74(*c.F3, u, req.tol.value_or(grid_tol(u)));
    return check_pointwise_75(*c.F3, u, req.tol.value_or(grid_tol(u)));
  }
  if (id == "residual_cor76") {
    const Field2& u = need_field(m, id);
    return residual_cor76(param(req, "c", c.c76), u, req.tol.value_or(grid_tol(u)));
  }
  if (id == "reduction_77") {
    const Field2& u = need_field(m, id);
    return check_reduction_77(u, req.tol.value_or(grid_tol(u)));
  }
  throw Error(ErrorCode::UnknownId, "no check '" + id + "'");
}

CheckReport error_report(const std::string& id, const std::string& message) {
  CheckReport r;
  r.checkId = id;
  r.error = message;
  r.pass = false;
  return r;
}

bool needs_field(const std::string& check) { return check != "criterion"; }

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::BadParams, "cannot write " + path.string());
  out << text;
}

std::filesystem::path resolve(const std::filesystem::path& outDir, const std::string& p) {
  const std::filesystem::path path(p);
  return path.is_absolute() ? path : outDir / path;
}

void write_csv(const Field2& f, const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  f.write_csv(path);
}

std::map<std::string, std::string> describe_field(const JobConfig& job, const Materialized* m) {
  const FieldSource& f = job.field;
  std::map<std::string, std::string> d;
  d["kind"] = to_string(f.kind);
  auto num = [](double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  if (f.kind == FieldSource::Kind::Manufactured) d["manufacturedId"] = f.manufacturedId;
  if (f.scale != 1.0) d["scale"] = num(f.scale);
  if (m) {
    if (const auto* u = std::get_if<Field2>(&m->u)) d["grid"] = u->grid().describe();
    if (const auto* p = std::get_if<Profile1>(&m->u)) {
      d["profile"] = "n=" + std::to_string(p->xs.size()) + " h=" + num(p->h) + " x=[" + num(p->xs.front()) + ", " +
                     num(p->xs.back()) + "]";
    }
  }
  switch (f.kind) {
    case FieldSource::Kind::Solve:
      d["proxy"] = "bounded-domain BVP solution standing in for an entire solution";
      break;
    case FieldSource::Kind::Kink:
    case FieldSource::Kind::KinkField:
      d["proxy"] = "closed-form entire solution restricted to a window";
      break;
    case FieldSource::Kind::Profile:
      d["proxy"] = "one-dimensional profile on a window";
      break;
    default:
      break;
  }
  return d;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    const std::size_t upto = std::min<std::size_t>(e.byte, text.size());
    const long line = 1 + std::count(text.begin(), text.begin() + static_cast<long>(upto), '\n');
    throw Error(ErrorCode::ConfigError, "line " + std::to_string(line) + ": " + e.what());
  }
  try {
    allow_keys(doc, "$", {"jobs", "description"});
    if (!doc.contains("jobs") || !doc["jobs"].is_array()) config_error("$.jobs", "expected an array");
    RunConfig cfg;
    std::set<std::string> ids;
    for (std::size_t k = 0; k < doc["jobs"].size(); ++k) {
      const std::string path = "$.jobs[" + std::to_string(k) + "]";
      JobConfig job = parse_job(doc["jobs"][k], path);
      if (!ids.insert(job.jobId).second) config_error(path + ".jobId", "duplicate jobId '" + job.jobId + "'");
      cfg.jobs.push_back(std::move(job));
    }
    return cfg;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ConfigError, e.what());
  }
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ConfigError, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

Materialized materialize(const JobConfig& job) {
  const Case& c = registry_case(job.equation);
  const FieldSource& f = job.field;
  using K = FieldSource::Kind;
  switch (f.kind) {
    case K::Solve:
      return solve_field(job, c);
    case K::Profile:
      return {integrate_profile(need_equation(c), f.u0, f.v0, f.profileH, Interval{f.spanLo, f.spanHi}, f.x0), {}};
    case K::Kink:
      return {kink_profile(f.spanLo, f.spanHi, f.profileH), {}};
    case K::Counterexample:
      return {counterexample_profile(f.profileH), {}};
    case K::KinkField:
      return {closed_form(f, [](double x, double) { return kink(x).first; }), {}};
    case K::Manufactured:
      return {closed_form(f, manufactured(f.manufacturedId).u), {}};
    case K::Bump:
      return {closed_form(f, [](double x, double y) { return -(x * x + y * y); }), {}};
    case K::Constant:
      return {Field2::sample(f.grid(), [v = f.value](double, double) { return v; }), {}};
    case K::Linear:
      return {closed_form(f, [](double x, double) { return x; }), {}};
  }
  throw Error(ErrorCode::BadParams, "unknown field kind");
}

CheckReport run_check(const JobConfig& job, const CheckRequest& req, const Materialized* field) {
  CheckReport r;
  try {
    r = dispatch(job, req, field);
  } catch (const Error& e) {
    r = error_report(req.id, e.what());
  } catch (const std::exception& e) {
    r = error_report(req.id, std::string("BadParams: ") + e.what());
  }
  r.checkId = req.id;
  return r;
}

namespace {

std::pair<JobReport, std::optional<Materialized>> execute(const JobConfig& job) {
  const auto start = std::chrono::steady_clock::now();
  JobReport rep;
  rep.jobId = job.jobId;
  rep.equation = job.equation;
  rep.pfunction = registry_case(job.pfunction).pfunction ? job.pfunction : "";

  std::optional<Materialized> m;
  std::optional<std::string> fieldError;
  const bool anyField = std::any_of(job.checks.begin(), job.checks.end(),
                                    [](const CheckRequest& r) { return needs_field(r.id); });
  if (anyField) {
    try {
      m = materialize(job);
      rep.telemetry = m->telemetry;
    } catch (const std::exception& e) {
      fieldError = e.what();
      rep.error = std::string("field: ") + e.what();
    }
  }
  rep.field = describe_field(job, m ? &*m : nullptr);

  rep.asExpected = true;
  for (const CheckRequest& req : job.checks) {
    CheckOutcome out;
    out.expect = req.expect;
    if (needs_field(req.id) && fieldError) {
      out.report = error_report(req.id, *fieldError);
    } else {
      out.report = run_check(job, req, m ? &*m : nullptr);
    }
    out.asExpected = outcome_matches(out.report, req.expect);
    rep.asExpected = rep.asExpected && out.asExpected;
    rep.checks.push_back(std::move(out));
  }
  rep.wallTimeMs = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return {std::move(rep), std::move(m)};
}

std::string dump_name(const std::string& jobId, const std::string& what) { return jobId + "_" + what + ".csv"; }

}  // namespace

JobReport run_job(const JobConfig& job) { return execute(job).first; }

RunSummary run(const RunConfig& config, const std::filesystem::path& outDir) {
  RunSummary sum;
  for (const JobConfig& job : config.jobs) {
    auto [rep, m] = execute(job);
    const std::filesystem::path reportPath = resolve(outDir, job.reportPath);
    write_text(reportPath, to_json(rep));
    sum.written.push_back(reportPath);
    if (job.fieldDumpDir) {
      const std::filesystem::path dir = resolve(outDir, *job.fieldDumpDir);
      if (m) {
        if (const auto* u = std::get_if<Field2>(&m->u)) {
          write_csv(*u, dir / dump_name(job.jobId, "u"));
          sum.written.push_back(dir / dump_name(job.jobId, "u"));
        }
      }
      for (const CheckOutcome& c : rep.checks) {
        if (!c.report.residualField) continue;
        write_csv(*c.report.residualField, dir / dump_name(job.jobId, c.report.checkId));
        sum.written.push_back(dir / dump_name(job.jobId, c.report.checkId));
      }
    }
    if (!rep.asExpected || rep.error) sum.exitStatus = 1;
    sum.reports.push_back(std::move(rep));
  }
  return sum;
}

std::filesystem::path dump_field(const RunConfig& config, const std::string& jobId, const std::string& checkId,
                                 const std::filesystem::path& outDir) {
  const auto job = std::find_if(config.jobs.begin(), config.jobs.end(),
                                [&](const JobConfig& j) { return j.jobId == jobId; });
  if (job == config.jobs.end()) throw Error(ErrorCode::UnknownId, "no job '" + jobId + "' in the config");
  const auto req = std::find_if(job->checks.begin(), job->checks.end(),
                                [&](const CheckRequest& r) { return r.id == checkId; });
  if (req == job->checks.end()) throw Error(ErrorCode::UnknownId, "job '" + jobId + "' has no check '" + checkId + "'");
  JobConfig single = *job;
  single.checks = {*req};
  auto [rep, m] = execute(single);
  const CheckReport& r = rep.checks.front().report;
  if (!r.residualField) {
    throw Error(ErrorCode::BadParams, "check '" + checkId + "' produced no field" +
                                          (r.error ? " (" + *r.error + ")" : std::string()));
  }
  const std::filesystem::path path = outDir / dump_name(jobId, checkId);
  write_csv(*r.residualField, path);
  return path;
}

}  // namespace pfunc
