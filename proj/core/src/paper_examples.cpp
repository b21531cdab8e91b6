#include "pfunc/paper_examples.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pfunc/error.hpp"

namespace pfunc {

namespace {

const Interval kNonNeg{0.0, kInf};

double zero2(double, double) { return 0.0; }

ExampleInstance build(const Ex1& p) {
  const Fn1 f = p.f;
  const Fn1 F = p.potential ? *p.potential : antiderivative(f, 0.0);
  if (p.potential) {
    for (double s : sample_interval(f.domain().intersect(F.domain()), 101)) {
      if (std::abs(F.d1(s) - f(s)) > 1e-8 * (1.0 + std::abs(f(s)))) {
        throw Error(ErrorCode::BadParams, "ex1: potential' != f at s = " + std::to_string(s));
      }
    }
  }
  const Rect dom{f.domain().intersect(F.domain()), kNonNeg};
  Fn2 P("t/2-" + F.name(), [F](double s, double t) { return 0.5 * t - F(s); },
        Fn2::Derivatives{[f](double s, double) { return -f(s); }, [](double, double) { return 0.5; },
                         [f](double s, double) { return -f.d1(s); }, zero2, zero2},
        dom);

  ExampleInstance out;
  out.equation = EquationSpec{"ex1", Semilinear{f}};
  out.pfunction.id = "ex1";
  out.pfunction.P = std::move(P);
  out.pfunction.mu = MuKind::PtTimesTSquared;
  out.route = CriterionRoute::CorollarySemilinear;

  bool nonneg = true;
  for (double s : sample_interval(dom.s, 101)) nonneg = nonneg && F(s) >= 0.0;
  if (nonneg) {
    Fn1 B("t/2", [](double t) { return 0.5 * t; }, [](double) { return 0.5; }, [](double) { return 0.0; }, kNonNeg);
    out.pfunction.separable = Separable{std::move(B), F};
  }
  return out;
}

ExampleInstance build(const Ex2& p) {
  if (!p.domain.bounded() || !p.domain.contains(0.0)) {
    throw Error(ErrorCode::BadParams, "ex2: declared domain must be bounded and contain 0");
  }
  const Fn1 f = p.f;
  int pos = 0;
  int neg = 0;
  for (double s : sample_interval(p.domain, 201)) {
    const double v = f(s) * f.d1(s);
    if (v > 1e-14) ++pos;
    if (v < -1e-14) ++neg;
  }
  if (pos > 0 && neg > 0) {
    throw Error(ErrorCode::BadParams, "ex2: f f' changes sign on the declared domain");
  }
  const double sigma = neg > 0 ? -1.0 : 1.0;

  auto root = [f, sigma](double z) { return std::sqrt(std::max(0.0, sigma * f(z) * f.d1(z))); };
  auto inner = [root](double y) { return integrate(root, 0.0, y); };
  auto q = [root, sigma](double s) { return sigma * 2.0 * nested_square_integral(root, s); };

  const Rect dom{p.domain, kNonNeg};
  Fn2 P(sigma < 0 ? "t^2/2-2II(-ff')" : "t^2/2+2II(ff')",
        [q](double s, double t) { return 0.5 * t * t + q(s); },
        Fn2::Derivatives{[inner, sigma](double s, double) { const double g = inner(s); return 2.0 * sigma * g * g; },
                         [](double, double t) { return t; },
                         [inner, root, sigma](double s, double) { return 4.0 * sigma * inner(s) * root(s); },
                         zero2, [](double, double) { return 1.0; }},
        dom);

  ExampleInstance out;
  out.equation = EquationSpec{"ex2", Semilinear{f}};
  out.pfunction.id = "ex2";
  out.pfunction.P = std::move(P);
  out.pfunction.mu = MuKind::PtTimesTSquared;
  out.route = CriterionRoute::CorollarySemilinear;
  if (sigma < 0.0 && p.domain.hi > 0.0) {
    Fn1 B("t^2/2", [](double t) { return 0.5 * t * t; }, [](double t) { return t; }, [](double) { return 1.0; },
          kNonNeg);
    Fn1 Gamma("2II(-ff')", [q](double s) { return -q(s); },
              [inner](double s) { const double g = inner(s); return 2.0 * g * g; },
              [inner, root](double s) { return 4.0 * inner(s) * root(s); }, Interval{0.0, p.domain.hi});
    out.pfunction.separable = Separable{std::move(B), std::move(Gamma)};
  }
  return out;
}

ExampleInstance build(const Ex3& p) {
  const double k = p.k;
  const double lam = p.lambda;
  const double c = p.c;
  const Rect dom{Interval{}, kNonNeg};

  Fn2 F("s(kt+lambda e^{-cs^2})",
        [=](double s, double t) { return s * (k * t + lam * std::exp(-c * s * s)); },
        Fn2::Derivatives{
            [=](double s, double t) { return k * t + lam * std::exp(-c * s * s) * (1.0 - 2.0 * c * s * s); },
            [=](double s, double) { return k * s; },
            [=](double s, double) { return lam * std::exp(-c * s * s) * (-6.0 * c * s + 4.0 * c * c * s * s * s); },
            [=](double, double) { return k; }, zero2},
        dom);

  Fn2 P;
  if (k != -c) {
    const double m = lam / (k + c);
    const double kc = k + c;
    P = Fn2("t e^{-ks^2}+lambda/(k+c) e^{-(k+c)s^2}",
            [=](double s, double t) { return t * std::exp(-k * s * s) + m * std::exp(-kc * s * s); },
            Fn2::Derivatives{
                [=](double s, double t) {
                  return -2.0 * k * s * t * std::exp(-k * s * s) - 2.0 * kc * s * m * std::exp(-kc * s * s);
                },
                [=](double s, double) { return std::exp(-k * s * s); },
                [=](double s, double t) {
                  return t * std::exp(-k * s * s) * (-2.0 * k + 4.0 * k * k * s * s) +
                         m * std::exp(-kc * s * s) * (-2.0 * kc + 4.0 * kc * kc * s * s);
                },
                [=](double s, double) { return -2.0 * k * s * std::exp(-k * s * s); }, zero2},
            dom);
  } else {
    P = Fn2("t e^{cs^2}-lambda s^2", [=](double s, double t) { return t * std::exp(c * s * s) - lam * s * s; },
            Fn2::Derivatives{
                [=](double s, double t) { return 2.0 * c * s * t * std::exp(c * s * s) - 2.0 * lam * s; },
                [=](double s, double) { return std::exp(c * s * s); },
                [=](double s, double t) { return t * std::exp(c * s * s) * (2.0 * c + 4.0 * c * c * s * s) - 2.0 * lam; },
                [=](double s, double) { return 2.0 * c * s * std::exp(c * s * s); }, zero2},
            dom);
  }

  ExampleInstance out;
  out.equation = EquationSpec{"ex3", GradientSemilinear{std::move(F)}};
  out.pfunction.id = "ex3";
  out.pfunction.P = std::move(P);
  out.pfunction.mu = MuKind::UnitMu;
  out.route = CriterionRoute::External;
  return out;
}

ExampleInstance build(const Ex4& p) {
  const Fn1 G = p.G;
  for (double z : sample_interval(p.sampled.intersect(G.domain()), 401)) {
    if (G(z) > 0.5) throw Error(ErrorCode::BadParams, "ex4: G > 1/2 at z = " + std::to_string(z));
  }
  Fn2 F("G(t-s)", [G](double s, double t) { return G(t - s); },
        Fn2::Derivatives{[G](double s, double t) { return -G.d1(t - s); },
                         [G](double s, double t) { return G.d1(t - s); },
                         [G](double s, double t) { return G.d2(t - s); },
                         [G](double s, double t) { return -G.d2(t - s); },
                         [G](double s, double t) { return G.d2(t - s); }},
        Rect{Interval{}, kNonNeg});
  Fn2 P("t-s", [](double s, double t) { return t - s; },
        Fn2::Derivatives{[](double, double) { return -1.0; }, [](double, double) { return 1.0; }, zero2, zero2,
                         zero2},
        Rect{kNonNeg, kNonNeg});

  ExampleInstance out;
  out.equation = EquationSpec{"ex4", GradientSemilinear{std::move(F)}};
  out.pfunction.id = "ex4";
  out.pfunction.P = std::move(P);
  out.pfunction.mu = MuKind::PtTimesTSquared;
  out.pfunction.separable =
      Separable{Fn1::identity(kNonNeg), Fn1("s", [](double s) { return s; }, [](double) { return 1.0; },
                                            [](double) { return 0.0; }, kNonNeg)};
  out.route = CriterionRoute::Hypothesis2;
  return out;
}

ExampleInstance build(const Ex5& p) {
  DivergenceForm eq{p.Phi, p.rho, p.Fpot};
  validate_ellipticity(eq, p.tmax);
  const Fn1 Phi = p.Phi;
  const Fn1 rho = p.rho;
  const Interval tdom{0.0, p.tmax};

  auto density = [Phi, rho](double y) { return (Phi.d1(y) + 2.0 * y * Phi.d2(y)) / rho(y); };
  auto density_prime = [density, tdom](double t) {
    const double h = 1e-4 * std::max(1.0, std::abs(t));
    if (t - 2.0 * h < tdom.lo) {
      return (-25.0 * density(t) + 48.0 * density(t + h) - 36.0 * density(t + 2 * h) + 16.0 * density(t + 3 * h) -
              3.0 * density(t + 4 * h)) /
             (12.0 * h);
    }
    if (t + 2.0 * h > tdom.hi) {
      return (25.0 * density(t) - 48.0 * density(t - h) + 36.0 * density(t - 2 * h) - 16.0 * density(t - 3 * h) +
              3.0 * density(t - 4 * h)) /
             (12.0 * h);
    }
    return (-density(t + 2 * h) + 8.0 * density(t + h) - 8.0 * density(t - h) + density(t - 2 * h)) / (12.0 * h);
  };
  Fn1 Q("Q", [density](double t) { return integrate(density, 0.0, t); }, density, density_prime, tdom);

  const Fn1 Fp = p.Fpot;
  Fn1 twoF("2" + Fp.name(), [Fp](double s) { return 2.0 * Fp(s); }, [Fp](double s) { return 2.0 * Fp.d1(s); },
           [Fp](double s) { return 2.0 * Fp.d2(s); }, Fp.domain());

  Fn2 P("Q(t)-2F(s)", [Q, Fp](double s, double t) { return Q(t) - 2.0 * Fp(s); },
        Fn2::Derivatives{[Fp](double s, double) { return -2.0 * Fp.d1(s); },
                         [Q](double, double t) { return Q.d1(t); },
                         [Fp](double s, double) { return -2.0 * Fp.d2(s); }, zero2,
                         [Q](double, double t) { return Q.d2(t); }},
        Rect{Fp.domain(), tdom});

  ExampleInstance out;
  out.equation = EquationSpec{"ex5", std::move(eq)};
  out.pfunction.id = "ex5";
  out.pfunction.P = std::move(P);
  out.pfunction.mu = MuKind::UnitMu;
  out.route = CriterionRoute::External;
  bool nonneg = true;
  for (double s : sample_interval(Fp.domain(), 101)) nonneg = nonneg && Fp(s) >= 0.0;
  if (nonneg) out.pfunction.separable = Separable{std::move(Q), std::move(twoF)};
  return out;
}

}  // namespace

Fn1 antiderivative(const Fn1& f, double base) {
  return {"int " + f.name(), [f, base](double x) { return integrate([&f](double z) { return f(z); }, base, x); },
          [f](double x) { return f(x); }, [f](double x) { return f.d1(x); }, f.domain()};
}

ExampleInstance paper_example(const ExampleParams& params) {
  return std::visit([](const auto& p) { return build(p); }, params);
}

}  // namespace pfunc
