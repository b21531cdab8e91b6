#include "pfunc/criterion.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>
#include <sstream>
#include <tuple>

#include "pfunc/error.hpp"

namespace pfunc {

namespace {

// Tracks the minimum of one subcheck; ties resolve to the lexicographically
// smaller (s, t).
class Worst {
 public:
  explicit Worst(std::string name) : name_(std::move(name)) {}

  void add(double value, double s, double t) {
    if (!seen_ || std::tie(value, s, t) < std::tie(value_, s_, t_)) {
      value_ = value;
      s_ = s;
      t_ = t;
      seen_ = true;
    }
  }

  [[nodiscard]] CriterionSubcheck finish(double tol) const {
    return {name_, !seen_ || value_ >= -tol, seen_ ? value_ : 0.0, s_, t_};
  }

 private:
  std::string name_;
  double value_ = 0.0;
  double s_ = 0.0;
  double t_ = 0.0;
  bool seen_ = false;
};

double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

void require_rect(const Rect& rect, int n_s, int n_t) {
  if (n_s < 2 || n_t < 2) throw Error(ErrorCode::BadParams, "need at least 2 samples per axis");
  if (!rect.s.bounded() || !rect.t.bounded() || rect.t.lo < 0.0 || rect.s.lo > rect.s.hi || rect.t.lo > rect.t.hi) {
    throw Error(ErrorCode::DomainError, "criterion rectangle must be bounded with t >= 0");
  }
}

// min(trace, det / scale); PSD within tol iff value >= -tol.
double psd_margin(const Partials2& d) {
  const double trace = d.pss + d.ptt;
  const double det = d.pss * d.ptt - d.pst * d.pst;
  const double scale = 1.0 + std::max(std::abs(d.pss) + std::abs(d.pst), std::abs(d.pst) + std::abs(d.ptt));
  return std::min(trace, det / scale);
}

CriterionVerdict assemble(std::vector<Worst> parts, std::size_t residual_index, double tol, std::size_t checked,
                          std::size_t skipped) {
  CriterionVerdict v;
  v.tolerance = tol;
  v.samplesChecked = checked;
  v.samplesSkipped = skipped;
  for (const auto& w : parts) {
    v.subchecks.push_back(w.finish(tol));
    v.pass = v.pass && v.subchecks.back().pass;
  }
  if (residual_index < v.subchecks.size()) {
    v.minResidual = v.subchecks[residual_index].worstValue;
    v.argminS = v.subchecks[residual_index].s;
    v.argminT = v.subchecks[residual_index].t;
  }
  return v;
}

// P_t > 0 for t > 0; returns a failed verdict when violated.
std::optional<CriterionVerdict> pt_gate(const Fn2& P, const std::vector<std::pair<double, double>>& pts, double tol) {
  Worst w("pt_positive");
  bool ok = true;
  for (auto [s, t] : pts) {
    if (t <= 0.0) continue;
    const double pt = P.pt(s, t * t);
    w.add(pt, s, t);
    ok = ok && pt > 0.0;
  }
  if (ok) return std::nullopt;
  CriterionVerdict v = assemble({w}, 1, tol, pts.size(), 0);
  v.pass = false;
  v.subchecks.front().pass = false;
  return v;
}

}  // namespace

double eval_I(const Fn2& P, const Fn2& F, double s, double t) {
  const double tt = t * t;
  const double ps = P.ps(s, tt);
  const double pt = P.pt(s, tt);
  const double f = F(s, tt);
  return pt * ps * f + 0.5 * ps * ps + 2.0 * tt * pt * pt * F.ps(s, tt) - 2.0 * tt * pt * ps * F.pt(s, tt);
}

double eval_I_semilinear(const Fn2& P, const Fn1& f, double s, double t) {
  const double tt = t * t;
  const double ps = P.ps(s, tt);
  const double pt = P.pt(s, tt);
  return ps * f(s) + ps * ps / (2.0 * pt) + 2.0 * pt * tt * f.d1(s);
}

double hypothesis2_quantity(const Fn2& P, const Fn2& F, double s, double t) {
  const double tt = t * t;
  return tt * P.pss(s, tt) * P.pt(s, tt) + eval_I(P, F, s, t);
}

std::vector<std::pair<double, double>> criterion_samples(const Rect& rect, int n_s, int n_t, std::size_t n_random) {
  std::vector<std::pair<double, double>> pts;
  pts.reserve(static_cast<std::size_t>(n_s * n_t) + n_random);
  for (double s : sample_interval(rect.s, n_s)) {
    for (double t : sample_interval(rect.t, n_t)) pts.emplace_back(s, t);
  }
  std::mt19937_64 rng(kCriterionSeed);
  for (std::size_t k = 0; k < n_random; ++k) {
    const double s = rect.s.lo + (rect.s.hi - rect.s.lo) * unit_uniform(rng);
    const double t = rect.t.lo + (rect.t.hi - rect.t.lo) * unit_uniform(rng);
    pts.emplace_back(s, t);
  }
  return pts;
}

CriterionVerdict check_hypothesis1(const Fn2& P, const Fn2& F, const Rect& rect, int n_s, int n_t, double tol) {
  require_rect(rect, n_s, n_t);
  const auto pts = criterion_samples(rect, n_s, n_t);
  if (auto gate = pt_gate(P, pts, tol)) return *gate;

  Worst psd("hessian_psd");
  Worst ival("I_nonnegative");
  for (auto [s, t] : pts) {
    const double tt = t * t;
    const Partials2 d = P.partials(s, tt);
    psd.add(psd_margin(d), s, t);
    const double f = F(s, tt);
    const double a = d.pt * d.ps * f;
    const double b = 0.5 * d.ps * d.ps;
    const double c = 2.0 * tt * d.pt * d.pt * F.ps(s, tt);
    const double e = -2.0 * tt * d.pt * d.ps * F.pt(s, tt);
    ival.add((a + b + c + e) / (1.0 + std::abs(a) + std::abs(b) + std::abs(c) + std::abs(e)), s, t);
  }
  CriterionVerdict v = assemble({psd, ival}, 1, tol, pts.size(), 0);
  v.variant = "hypothesis1";
  return v;
}

CriterionVerdict check_hypothesis2(const Fn2& P, const Fn2& F, const Rect& rect, int n_s, int n_t, double tol) {
  require_rect(rect, n_s, n_t);
  const auto pts = criterion_samples(rect, n_s, n_t);
  if (auto gate = pt_gate(P, pts, tol)) return *gate;

  Worst mixed("pst_zero");
  Worst convex("ptt_nonnegative");
  Worst quantity("t2_pss_pt_plus_I");
  for (auto [s, t] : pts) {
    const double tt = t * t;
    const Partials2 d = P.partials(s, tt);
    mixed.add(-std::abs(d.pst), s, t);
    convex.add(d.ptt, s, t);
    const double f = F(s, tt);
    const double terms[] = {tt * d.pss * d.pt, d.pt * d.ps * f, 0.5 * d.ps * d.ps,
                            2.0 * tt * d.pt * d.pt * F.ps(s, tt), -2.0 * tt * d.pt * d.ps * F.pt(s, tt)};
    double sum = 0.0;
    double mag = 1.0;
    for (double x : terms) {
      sum += x;
      mag += std::abs(x);
    }
    quantity.add(sum / mag, s, t);
  }
  CriterionVerdict v = assemble({mixed, convex, quantity}, 2, tol, pts.size(), 0);
  v.variant = "hypothesis2";
  return v;
}

CriterionVerdict check_corollary_semilinear(const Fn2& P, const Fn1& f, const Rect& rect, int n_s, int n_t,
                                            double tol) {
  require_rect(rect, n_s, n_t);
  const auto pts = criterion_samples(rect, n_s, n_t);

  Worst psd("hessian_psd");
  Worst v1("corollary_I");
  Worst mixed("pst_zero");
  Worst convex("ptt_nonnegative");
  Worst v2("t2_pss_plus_corollary_I");
  std::size_t skipped = 0;
  for (auto [s, t] : pts) {
    const double tt = t * t;
    const Partials2 d = P.partials(s, tt);
    if (!(d.pt > 0.0)) {
      if (t > 0.0) {
        std::ostringstream os;
        os.precision(17);
        os << "P_t = " << d.pt << " at (s, t) = (" << s << ", " << t << ")";
        throw Error(ErrorCode::PtNonPositive, os.str());
      }
      ++skipped;  // the normalized I divides by P_t, undefined on t = 0 here
      continue;
    }
    const double fs = f(s);
    const double a = d.ps * fs;
    const double b = d.ps * d.ps / (2.0 * d.pt);
    const double c = 2.0 * d.pt * tt * f.d1(s);
    const double e = tt * d.pss;
    psd.add(psd_margin(d), s, t);
    v1.add((a + b + c) / (1.0 + std::abs(a) + std::abs(b) + std::abs(c)), s, t);
    mixed.add(-std::abs(d.pst), s, t);
    convex.add(d.ptt, s, t);
    v2.add((e + a + b + c) / (1.0 + std::abs(e) + std::abs(a) + std::abs(b) + std::abs(c)), s, t);
  }
  const std::size_t checked = pts.size() - skipped;
  CriterionVerdict first = assemble({psd, v1}, 1, tol, checked, skipped);
  first.variant = "corollary_variant1";
  CriterionVerdict second = assemble({mixed, convex, v2}, 2, tol, checked, skipped);
  second.variant = "corollary_variant2";
  if (second.pass) return second;
  if (first.pass) return first;
  return second.minResidual >= first.minResidual ? second : first;
}

}  // namespace pfunc
