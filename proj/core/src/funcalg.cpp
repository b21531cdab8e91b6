#include "pfunc/funcalg.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/numeric/odeint.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "pfunc/error.hpp"

namespace pfunc {

namespace {

std::string fmt_point(double s, double t) {
  std::ostringstream os;
  os.precision(17);
  os << "(" << s << ", " << t << ")";
  return os.str();
}

}  // namespace

bool Interval::bounded() const { return std::isfinite(lo) && std::isfinite(hi); }

Interval Interval::intersect(const Interval& other) const {
  return {std::max(lo, other.lo), std::min(hi, other.hi)};
}

std::vector<double> sample_interval(const Interval& iv, int n, double window) {
  const double lo = std::isfinite(iv.lo) ? iv.lo : std::min(-window, iv.hi - 2.0 * window);
  const double hi = std::isfinite(iv.hi) ? iv.hi : std::max(window, lo + 2.0 * window);
  std::vector<double> out;
  if (n <= 1 || lo == hi) {
    out.push_back(lo);
    return out;
  }
  out.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    out.push_back(k == n - 1 ? hi : lo + (hi - lo) * static_cast<double>(k) / (n - 1));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Fn1

Fn1::Fn1(std::string name, Map eval, Map d1, Map d2, Interval domain)
    : name_(std::move(name)), eval_(std::move(eval)), d1_(std::move(d1)), d2_(std::move(d2)), domain_(domain) {}

void Fn1::require_inside(double x) const {
  if (!domain_.contains(x)) {
    std::ostringstream os;
    os.precision(17);
    os << name_ << " evaluated at " << x << " outside [" << domain_.lo << ", " << domain_.hi << "]";
    throw Error(ErrorCode::DomainError, os.str());
  }
}

double Fn1::operator()(double x) const {
  require_inside(x);
  return eval_(x);
}

double Fn1::d1(double x) const {
  require_inside(x);
  return d1_(x);
}

double Fn1::d2(double x) const {
  require_inside(x);
  return d2_(x);
}

Fn1 Fn1::constant(double c, Interval domain) {
  return {"const", [c](double) { return c; }, [](double) { return 0.0; }, [](double) { return 0.0; }, domain};
}

Fn1 Fn1::identity(Interval domain) {
  return {"identity", [](double x) { return x; }, [](double) { return 1.0; }, [](double) { return 0.0; },
          domain};
}

// ---------------------------------------------------------------------------
// Fn2

Fn2::Fn2(std::string name, Map eval, Derivatives partials, Rect domain)
    : name_(std::move(name)), eval_(std::move(eval)), d_(std::move(partials)), domain_(domain) {}

Fn2 Fn2::from_closure(std::string name, Map raw, Rect domain, double h) {
  auto part = [raw, h](auto member) {
    return [raw, h, member](double s, double t) { return fd_partials(raw, s, t, h).*member; };
  };
  return {std::move(name), raw,
          Derivatives{part(&Partials2::ps), part(&Partials2::pt), part(&Partials2::pss),
                      part(&Partials2::pst), part(&Partials2::ptt)},
          domain};
}

void Fn2::require_inside(double s, double t) const {
  if (!domain_.contains(s, t)) {
    throw Error(ErrorCode::DomainError, name_ + " evaluated at " + fmt_point(s, t) + " outside its rectangle");
  }
}

double Fn2::operator()(double s, double t) const {
  require_inside(s, t);
  return eval_(s, t);
}
double Fn2::ps(double s, double t) const {
  require_inside(s, t);
  return d_.ps(s, t);
}
double Fn2::pt(double s, double t) const {
  require_inside(s, t);
  return d_.pt(s, t);
}
double Fn2::pss(double s, double t) const {
  require_inside(s, t);
  return d_.pss(s, t);
}
double Fn2::pst(double s, double t) const {
  require_inside(s, t);
  return d_.pst(s, t);
}
double Fn2::ptt(double s, double t) const {
  require_inside(s, t);
  return d_.ptt(s, t);
}

Partials2 Fn2::partials(double s, double t) const {
  require_inside(s, t);
  return {d_.ps(s, t), d_.pt(s, t), d_.pss(s, t), d_.pst(s, t), d_.ptt(s, t)};
}

// ---------------------------------------------------------------------------
// finite differences

namespace {

Partials2 central_partials(const Fn2::Map& raw, double s, double t, double h) {
  std::array<double, 9> v{};  // v[3*(di+1) + (dj+1)] = raw(s + di h, t + dj h)
  for (int di = -1; di <= 1; ++di) {
    for (int dj = -1; dj <= 1; ++dj) {
      const double x = raw(s + di * h, t + dj * h);
      if (!std::isfinite(x)) {
        throw Error(ErrorCode::NonFinite, "stencil sample at " + fmt_point(s + di * h, t + dj * h));
      }
      v[static_cast<std::size_t>(3 * (di + 1) + (dj + 1))] = x;
    }
  }
  auto at = [&](int di, int dj) { return v[static_cast<std::size_t>(3 * (di + 1) + (dj + 1))]; };
  Partials2 p;
  p.ps = (at(1, 0) - at(-1, 0)) / (2.0 * h);
  p.pt = (at(0, 1) - at(0, -1)) / (2.0 * h);
  p.pss = (at(1, 0) - 2.0 * at(0, 0) + at(-1, 0)) / (h * h);
  p.ptt = (at(0, 1) - 2.0 * at(0, 0) + at(0, -1)) / (h * h);
  p.pst = (at(1, 1) - at(1, -1) - at(-1, 1) + at(-1, -1)) / (4.0 * h * h);
  return p;
}

}  // namespace

Partials2 fd_partials(const Fn2::Map& raw, double s, double t, double h) {
  if (!(h > 0.0)) throw Error(ErrorCode::BadParams, "fd_partials step must be positive");
  const Partials2 coarse = central_partials(raw, s, t, h);
  const Partials2 fine = central_partials(raw, s, t, 0.5 * h);
  auto rich = [](double c, double f) { return (4.0 * f - c) / 3.0; };
  return {rich(coarse.ps, fine.ps), rich(coarse.pt, fine.pt), rich(coarse.pss, fine.pss),
          rich(coarse.pst, fine.pst), rich(coarse.ptt, fine.ptt)};
}

// ---------------------------------------------------------------------------
// inversion

double invert_monotone(const Fn1& f, double y, Interval bracket) {
  if (!bracket.bounded() || !(bracket.lo < bracket.hi)) {
    throw Error(ErrorCode::NoBracket, "bracket must be a bounded nonempty interval");
  }
  constexpr int kSignSamples = 65;
  int pos = 0;
  int neg = 0;
  for (double x : sample_interval(bracket, kSignSamples)) {
    const double d = f.d1(x);
    if (d > 0.0) ++pos;
    if (d < 0.0) ++neg;
  }
  if ((pos > 0 && neg > 0) || (pos == 0 && neg == 0)) {
    throw Error(ErrorCode::NotMonotone, f.name() + " is not strictly monotone on the bracket");
  }
  const double sign = pos > 0 ? 1.0 : -1.0;
  const double tol = 1e-12 * (1.0 + std::abs(y));

  double a = bracket.lo;
  double b = bracket.hi;
  const double fa = f(a) - y;
  const double fb = f(b) - y;
  if (std::abs(fa) <= tol) return a;
  if (std::abs(fb) <= tol) return b;
  if (sign * fa > 0.0 || sign * fb < 0.0) {
    std::ostringstream os;
    os.precision(17);
    os << "value " << y << " not in [" << std::min(fa, fb) + y << ", " << std::max(fa, fb) + y << "]";
    throw Error(ErrorCode::NoBracket, os.str());
  }

  // Invariant: sign * (f(a) - y) < 0 < sign * (f(b) - y).
  double x = 0.5 * (a + b);
  double r = f(x) - y;
  for (int it = 0; it < 400; ++it) {
    if (std::abs(r) <= tol) break;
    if (sign * r < 0.0) {
      a = x;
    } else {
      b = x;
    }
    const double d = f.d1(x);
    double next = 0.5 * (a + b);
    if (d != 0.0 && std::isfinite(d)) {
      const double newton = x - r / d;
      if (newton > a && newton < b) next = newton;
    }
    if (next == x || b - a <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(a), std::abs(b))) {
      break;
    }
    x = next;
    r = f(x) - y;
  }
  // Polish: a few guarded Newton steps that keep improving the residual.
  for (int it = 0; it < 3 && r != 0.0; ++it) {
    const double d = f.d1(x);
    if (d == 0.0 || !std::isfinite(d)) break;
    const double cand = x - r / d;
    if (!bracket.contains(cand)) break;
    const double rc = f(cand) - y;
    if (std::abs(rc) >= std::abs(r)) break;
    x = cand;
    r = rc;
  }
  return x;
}

double invert_on_domain(const Fn1& f, double y, Interval start) {
  const Interval dom = f.domain();
  Interval br = start.intersect(dom);
  if (!(br.lo < br.hi)) br = Interval{dom.lo, std::isfinite(dom.lo) ? dom.lo + 1.0 : dom.hi};
  for (int grow = 0; grow < 64; ++grow) {
    const double flo = f(br.lo);
    const double fhi = f(br.hi);
    if (y >= std::min(flo, fhi) && y <= std::max(flo, fhi)) return invert_monotone(f, y, br);
    const double w = br.hi - br.lo;
    const Interval wider = Interval{br.lo - w, br.hi + w}.intersect(dom);
    if (wider.lo == br.lo && wider.hi == br.hi) break;
    br = wider;
  }
  std::ostringstream os;
  os.precision(17);
  os << "no bracket for " << f.name() << " = " << y << " inside its domain";
  throw Error(ErrorCode::NoBracket, os.str());
}

// ---------------------------------------------------------------------------
// quadrature

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
  if (a == b) return 0.0;
  if (a > b) return -integrate(f, b, a, tol);
  thread_local boost::math::quadrature::tanh_sinh<double> rule;
  double err = 0.0;
  double l1 = 0.0;
  std::size_t levels = 0;
  return rule.integrate(f, a, b, tol, &err, &l1, &levels);
}

double nested_square_integral(const std::function<double(double)>& g, double s) {
  if (s == 0.0) return 0.0;
  if (!std::isfinite(g(0.0))) {
    return integrate(
        [&g](double y) {
          const double G = integrate(g, 0.0, y);
          return G * G;
        },
        0.0, s);
  }
  using State = std::array<double, 2>;
  namespace ode = boost::numeric::odeint;
  State x{0.0, 0.0};
  auto rhs = [&g](const State& v, State& dv, double y) {
    dv[0] = g(y);
    dv[1] = v[0] * v[0];
  };
  ode::integrate_adaptive(ode::make_controlled<ode::runge_kutta_dopri5<State>>(1e-14, 1e-14), rhs, x, 0.0, s,
                          s / 64.0);
  return x[1];
}

// ---------------------------------------------------------------------------
// specs

void PFunctionSpec::validate(int samples) const {
  const Interval tpos{std::max(P.domain().t.lo, 0.0), P.domain().t.hi};
  const auto svals = sample_interval(P.domain().s, samples);
  auto tvals = sample_interval(tpos, samples);
  if (mu == MuKind::PtTimesTSquared) {
    for (double s : svals) {
      for (double t : tvals) {
        if (t > 0.0 && !(P.pt(s, t) > 0.0)) {
          throw Error(ErrorCode::BadParams, id + ": P_t <= 0 at " + fmt_point(s, t));
        }
      }
    }
  }
  if (mu == MuKind::CustomOfGradNorm && (!customMu || customMu->empty())) {
    throw Error(ErrorCode::BadParams, id + ": custom mu kind without a function");
  }
  if (!separable) return;

  const Fn1& B = separable->B;
  const Fn1& G = separable->Gamma;
  if (std::abs(B(0.0)) > 1e-12) throw Error(ErrorCode::BadParams, id + ": B(0) != 0");
  const auto tb = sample_interval(tpos.intersect(B.domain()), samples);
  for (double t : tb) {
    if (t <= 0.0) continue;
    if (!(B.d1(t) > 0.0)) throw Error(ErrorCode::BadParams, id + ": B' <= 0 at t = " + std::to_string(t));
    if (B.d2(t) < -1e-9 * (1.0 + std::abs(B.d1(t)))) {
      throw Error(ErrorCode::BadParams, id + ": B'' < 0 at t = " + std::to_string(t));
    }
  }
  const auto sg = sample_interval(G.domain().intersect(P.domain().s), samples);
  for (double s : sg) {
    if (G(s) < -1e-12) throw Error(ErrorCode::BadParams, id + ": Gamma < 0 at s = " + std::to_string(s));
    for (double t : tb) {
      const double p = P(s, t);
      if (std::abs(p - (B(t) - G(s))) > 1e-12 * (1.0 + std::abs(p))) {
        throw Error(ErrorCode::BadParams, id + ": P != B - Gamma at " + fmt_point(s, t));
      }
    }
  }
}

Fn2 as_gradient_semilinear(const Semilinear& eq) {
  const Fn1 f = eq.f;
  auto zero = [](double, double) { return 0.0; };
  return {"F(s,t)=" + f.name() + "(s)", [f](double s, double) { return f(s); },
          Fn2::Derivatives{[f](double s, double) { return f.d1(s); }, zero, [f](double s, double) { return f.d2(s); },
                           zero, zero},
          Rect{f.domain(), Interval{0.0, kInf}}};
}

void validate_ellipticity(const DivergenceForm& eq, double tmax, int samples) {
  for (double t : sample_interval(Interval{0.0, tmax}, samples)) {
    const double p1 = eq.Phi.d1(t);
    const double combo = p1 + 2.0 * t * eq.Phi.d2(t);
    if (!(p1 > 0.0) || !(eq.rho(t) > 0.0) || !(combo > 0.0)) {
      throw Error(ErrorCode::BadParams, "ellipticity fails at t = " + std::to_string(t));
    }
  }
}

void validate_fourth_order73(const FourthOrder73& eq, Interval range, int samples) {
  for (double w : sample_interval(range, samples)) {
    if (!(eq.a(w) > 0.0) || eq.a.d1(w) < 0.0) {
      throw Error(ErrorCode::BadParams, "need a > 0 and a' >= 0; fails at " + std::to_string(w));
    }
  }
}

}  // namespace pfunc
