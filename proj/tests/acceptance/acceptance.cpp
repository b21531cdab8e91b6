// One line per acceptance criterion: "PASS <n>. ..." or "FAIL <n>. ...".
// Exit status is nonzero when a criterion fails, except those named with
// --known-failing (still printed as FAIL, with the measured numbers).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "oracles.hpp"
#include "pfunc/criterion.hpp"
#include "pfunc/error.hpp"
#include "pfunc/funcalg.hpp"
#include "pfunc/higher.hpp"
#include "pfunc/paper_examples.hpp"
#include "pfunc/registry.hpp"
#include "pfunc/runner.hpp"
#include "pfunc/solver.hpp"
#include "pfunc/verify.hpp"

using namespace pfunc;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v == 0.0 ? 0.0 : v);
  return buf;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

double zero2(double, double) { return 0.0; }

Fn1 allen_cahn() {
  return {"s^3-s", [](double s) { return s * s * s - s; }, [](double s) { return 3 * s * s - 1; },
          [](double s) { return 6 * s; }};
}

Fn1 double_well() {
  return {"W", oracle::double_well, [](double s) { return s * s * s - s; }, [](double s) { return 3 * s * s - 1; }};
}

const CheckOutcome& check_of(const JobReport& rep, const std::string& id) {
  for (const auto& c : rep.checks) {
    if (c.report.checkId == id) return c;
  }
  throw std::runtime_error("check " + id + " missing from job " + rep.jobId);
}

JobReport run_one(const std::string& json) { return run_job(parse_config(json).jobs.front()); }

Outcome c1() {
  const auto t0 = Clock::now();
  const ExampleInstance ex = paper_example(Ex1{allen_cahn(), std::nullopt});
  const Fn2 F = as_gradient_semilinear(Semilinear{allen_cahn()});
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> S(-2, 2), T(0, 2);
  double worst = 0.0;
  for (int k = 0; k < 10000; ++k) {
    worst = std::max(worst, std::abs(hypothesis2_quantity(ex.pfunction.P, F, S(rng), T(rng))));
  }
  const double secs = seconds_since(t0);
  return {worst <= 1e-12 && secs < 1.0, "max |t^2 P_ss P_t + I| = " + num(worst) + ", " + num(secs) + " s"};
}

Outcome c2() {
  const Fn2 P("t", [](double, double t) { return t; },
              Fn2::Derivatives{zero2, [](double, double) { return 1.0; }, zero2, zero2, zero2});
  const std::vector<Fn1> fs_{Fn1::identity(),
                             Fn1("e^s", [](double s) { return std::exp(s); }, [](double s) { return std::exp(s); },
                                 [](double s) { return std::exp(s); })};
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> S(-2, 2), T(0, 2);
  double worst = 0.0;
  for (const Fn1& f : fs_) {
    const Fn2 F = as_gradient_semilinear(Semilinear{f});
    for (int k = 0; k < 1000; ++k) {
      const double s = S(rng);
      const double t = T(rng);
      const double want = oracle::linear_P_I(f.d1(s), t);
      worst = std::max(worst, std::abs(eval_I(P, F, s, t) - want) / (1.0 + std::abs(want)));
    }
  }
  return {worst <= 1e-12, "max deviation from 2 t^2 f'(s) = " + num(worst)};
}

Outcome c3() {
  double modica = 0.0;
  for (int k = 0; k <= 20000; ++k) {
    const double x = -10.0 + k * 1e-3;
    const double u = oracle::kink_u(x);
    const double du = oracle::kink_du(x);
    modica = std::max(modica, std::abs(0.5 * du * du - oracle::double_well(u)));
  }
  const EquationSpec eq{"ac", Semilinear{allen_cahn()}};
  const Profile1 p = integrate_profile(eq, 0.0, 1.0 / std::sqrt(2.0), 1e-3, Interval{-10, 10});
  double profile_err = 0.0;
  for (std::size_t k = 0; k < p.xs.size(); ++k) profile_err = std::max(profile_err, std::abs(p.u[k] - oracle::kink_u(p.xs[k])));
  const CheckReport drift = check_profile_first_integral(*registry_case("ex1").pfunction, p, 1e-8);
  return {modica <= 1e-10 && profile_err <= 1e-6 && drift.pass,
          "Modica " + num(modica) + ", RK4 vs tanh " + num(profile_err) + ", P drift " + num(drift.worstResidual)};
}

Outcome c4() {
  const auto t0 = Clock::now();
  const double a = 1.0;
  const double k = 0.9;
  const double u = 0.5;
  const double got = nested_square_integral(
      [=](double z) { return a * k * std::sqrt(1.0 - k) * std::pow(z, k - 1.5); }, u);
  const double want = oracle::power_potential_integral(a, k, u);
  const double rel = std::abs(got - want) / want;
  const double secs = seconds_since(t0);
  return {rel <= 1e-6 && secs < 1.0, "relative error " + num(rel) + ", " + num(secs) + " s"};
}

Outcome c5() {
  const Interval nonneg{0, kInf};
  const Fn1 Phi("t+t^2/2", [](double t) { return t + t * t / 2; }, [](double t) { return 1 + t; },
                [](double) { return 1.0; }, nonneg);
  const Fn1 rho("1+t", [](double t) { return 1 + t; }, [](double) { return 1.0; }, [](double) { return 0.0; }, nonneg);
  const ExampleInstance ex = paper_example(Ex5{Phi, rho, double_well(), 10.0});
  const double v0 = std::sqrt(oracle::heteroclinic_T_rho_linear());
  const Profile1 p = integrate_profile(ex.equation, 0.0, v0, 1e-3, Interval{-5, 5});
  const CheckReport r = check_profile_first_integral(ex.pfunction, p, 1e-7);
  return {r.pass, "max - min of P = " + num(r.worstResidual)};
}

Outcome c6() {
  const JobReport ex2 = run_one(R"({"jobs": [{"jobId": "ex2", "equation": "ex2", "checks": ["boundary_max_principle"]}]})");
  const CheckReport& mp = check_of(ex2, "boundary_max_principle").report;
  const JobReport bump =
      run_one(R"({"jobs": [{"jobId": "bump", "equation": "concave_bump", "checks": ["boundary_max_principle"]}]})");
  const CheckReport& neg = check_of(bump, "boundary_max_principle").report;
  const bool ok = !mp.error && mp.pass && !neg.error && !neg.pass;
  return {ok, "interiorMax - boundaryMax = " + num(mp.worstResidual) + " vs tol " + num(mp.tolerance) +
                  (mp.pass ? "" : " (maximum at the symmetric centre, where grad u = 0)") + "; bump control " +
                  (neg.pass ? "passed" : "failed")};
}

Outcome c7() {
  const JobReport a = run_one(R"({"jobs": [{"jobId": "a", "equation": "ex2", "checks": ["residual_main_inequality"]}]})");
  const JobReport b = run_one(
      R"({"jobs": [{"jobId": "b", "equation": "ex2", "grid": {"h": 0.0078125}, "checks": ["residual_main_inequality"]}]})");
  const CheckReport& ra = check_of(a, "residual_main_inequality").report;
  const CheckReport& rb = check_of(b, "residual_main_inequality").report;
  const bool ok = !ra.error && !rb.error && ra.pass && rb.pass && rb.worstResidual >= -rb.tolerance;
  return {ok, "worst " + num(ra.worstResidual) + " (tol " + num(ra.tolerance) + ") at h=1/64, " + num(rb.worstResidual) +
                  " (tol " + num(rb.tolerance) + ") at h=1/128"};
}

Outcome c8() {
  const Field2 u = manufactured("ma_quadratic").sample(1.0 / 64);
  const CheckReport r = check_monge_ampere(u, GradFunction::squared_norm(), 1e-3);
  const double lapMin = r.extras.at("laplacian_g_min");
  const double lapMax = r.extras.at("laplacian_g_max");
  const double drift = r.extras.at("drift_max_abs");
  const CheckReport det = r.subchecks.front();
  bool ok = r.pass && std::abs(lapMin - 4.0) <= 1e-9 && std::abs(lapMax - 4.0) <= 1e-9 && drift <= 1e-9 &&
            std::abs(det.stats.min - 1.0) <= 1e-9 && std::abs(det.stats.max - 1.0) <= 1e-9;
  std::string avgs;
  double prev = -1.0;
  for (const auto& s : r.subchecks) {
    const auto it = s.extras.find("ball_average");
    if (it == s.extras.end()) continue;
    avgs += num(it->second) + " ";
    ok = ok && it->second >= prev && s.pass;
    prev = it->second;
  }
  // |x|^2 = 2u against the polar-integral oracle
  for (double rad : kBallRadii) {
    const double avg = ball_average(combine({&u}, [](std::span<const double> v) { return 2.0 * v[0]; }), 0, 0, rad);
    ok = ok && std::abs(avg - oracle::disc_mean_r2(rad)) <= 1e-3;
  }
  return {ok, "Delta g in [" + num(lapMin) + ", " + num(lapMax) + "], drift " + num(drift) + ", ball averages " + avgs};
}

Outcome c9() {
  std::string d;
  bool ok = true;
  {
    const CheckReport r = residual_prop74(*registry_case("ho74_quadratic").F3, manufactured("ho74_quadratic").sample(1.0 / 64), 1e-10);
    const bool a = r.pass && r.extras.at("max_abs_laplacian_P") <= 1e-10 && r.extras.at("max_P") <= 1e-10;
    ok = ok && a;
    d += "(a) |Delta P| " + num(r.extras.at("max_abs_laplacian_P")) + ", max P " + num(r.extras.at("max_P"));
  }
  {
    const Prop73Data& p = *registry_case("ho73_cubic").prop73;
    const double h = 1.0 / 128;
    const CheckReport r = residual_prop73(p.a, p.b, p.A, p.B, manufactured("ho73_cubic").sample(h), 10 * h * h);
    ok = ok && r.pass;
    d += "; (b) worst " + num(r.worstResidual) + " vs " + num(10 * h * h);
  }
  {
    std::vector<double> ids;
    bool pass = true;
    for (double h : {1.0 / 32, 1.0 / 64, 1.0 / 128}) {
      const CheckReport r = residual_cor76(1.0, manufactured("cor76_quartic").sample(h), 10 * h * h);
      pass = pass && r.pass;
      ids.push_back(r.extras.at("proof_identity_max"));
    }
    const double q1 = ids[0] / ids[1];
    const double q2 = ids[1] / ids[2];
    ok = ok && pass && q1 >= 3.0 && q2 >= 3.0;
    d += "; (c) identity ratios " + num(q1) + ", " + num(q2);
  }
  {
    const CheckReport r = check_reduction_77(manufactured("red77_quadratic").sample(1.0 / 64), 1e-12);
    const double pmax = std::max(std::abs(r.extras.at("P_min")), std::abs(r.extras.at("P_max")));
    std::string neg = "no error";
    try {
      (void)check_reduction_77(manufactured("red77_anisotropic").sample(1.0 / 64), 1e-12);
    } catch (const Error& e) {
      neg = std::string(to_string(e.code()));
    }
    ok = ok && r.pass && pmax <= 1e-12 && neg == "NotASolution";
    d += "; (d) |P| " + num(pmax) + ", anisotropic " + neg;
  }
  return {ok, d};
}

Outcome c10() {
  const Fn3& F3 = *registry_case("ho75_quadratic").F3;
  const Field2 base = manufactured("ho75_quadratic").sample(1.0 / 64);
  bool ok = true;
  std::string d;
  for (double c : {0.1, 1.0, 10.0}) {
    std::vector<double> v = base.values();
    for (double& x : v) x *= c;
    const CheckReport r = check_pointwise_75(F3, Field2(base.grid(), v), 1.0 / 64 / 64 * 10);
    ok = ok && r.pass;
    d += "c=" + num(c) + ": max P " + num(r.extras.at("max_P_B1")) + " <= " + num(r.extras.at("rhs")) + "  ";
  }
  return {ok, d};
}

Outcome c11() {
  const Field2 u = Field2::sample(Grid2::box(0, 1, 0, 1, 16, 16), [](double, double) { return 0.0; });
  const CheckReport r = check_liouville(u, NonexistenceConstantTest{Fn1::constant(1.0)}, 1e-12);
  std::string gate = "no error";
  try {
    (void)check_gradient_bound(*registry_case("ex1_counterexample").pfunction, counterexample_profile(1e-3), 1e-10);
  } catch (const Error& e) {
    gate = std::string(to_string(e.code()));
  }
  return {r.pass && gate == "HypothesisFail", "constant residual " + num(r.worstResidual) + ", counterexample " + gate};
}

std::string strip_timing(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::string line;
  std::string out;
  while (std::getline(in, line)) {
    if (line.find("\"wallTimeMs\"") != std::string::npos) continue;
    out += line;
    out += '\n';
  }
  return out;
}

int run_suite(const fs::path& dir) {
  fs::remove_all(dir);
  fs::create_directories(dir);
  const std::string cmd = std::string("\"") + PFUNC_EXE + "\" run \"" + PFUNC_SUITE + "\" --out \"" + dir.string() +
                          "\" > \"" + (dir / "stdout.txt").string() + "\" 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

Outcome c12() {
  const fs::path root = fs::temp_directory_path() / "pfunc_acceptance_determinism";
  const auto t0 = Clock::now();
  const int sa = run_suite(root / "a");
  const double secs = seconds_since(t0);
  const int sb = run_suite(root / "b");
  std::size_t files = 0;
  std::vector<std::string> differing;
  for (const auto& e : fs::recursive_directory_iterator(root / "a")) {
    if (!e.is_regular_file()) continue;
    const fs::path rel = fs::relative(e.path(), root / "a");
    if (rel == "stdout.txt") continue;
    ++files;
    if (strip_timing(e.path()) != strip_timing(root / "b" / rel)) differing.push_back(rel.string());
  }
  const bool ok = sa == 0 && sb == 0 && files > 0 && differing.empty() && secs < 60.0;
  return {ok, std::to_string(files) + " artifacts, " + std::to_string(differing.size()) + " differ, exit " +
                  std::to_string(sa) + "/" + std::to_string(sb) + ", " + num(secs) + " s per run"};
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> known;
  for (int k = 1; k < argc; ++k) {
    if (std::string(argv[k]) == "--known-failing" && k + 1 < argc) known.insert(std::atoi(argv[++k]));
  }
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"criterion identity for Allen-Cahn (hypothesis-2 quantity)", c1},
      {"I formula for P = t", c2},
      {"Modica equality on the kink", c3},
      {"power-potential closed form", c4},
      {"divergence-form first integral", c5},
      {"discrete maximum principle on Delta u = e^-u", c6},
      {"main-inequality residual under refinement", c7},
      {"Monge-Ampere quadratic", c8},
      {"fourth-order checks", c9},
      {"pointwise estimate under scaling", c10},
      {"non-existence and counterexample gates", c11},
      {"end-to-end determinism", c12},
  };
  int unexpected = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const int n = static_cast<int>(k) + 1;
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s %d. %s: %s%s\n", o.pass ? "PASS" : "FAIL", n, criteria[k].first.c_str(), o.detail.c_str(),
                !o.pass && known.count(n) ? " [known failure]" : "");
    if (!o.pass && !known.count(n)) ++unexpected;
  }
  std::fflush(stdout);
  return unexpected == 0 ? 0 : 1;
}
