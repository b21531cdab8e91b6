#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "oracles.hpp"
#include "pfunc/banded.hpp"
#include "pfunc/error.hpp"
#include "pfunc/paper_examples.hpp"
#include "pfunc/solver.hpp"

using namespace pfunc;

namespace {

double zero2(double, double) { return 0.0; }

Fn2 zero_F() { return Fn2("0", zero2, Fn2::Derivatives{zero2, zero2, zero2, zero2, zero2}); }

Fn2 exp_decay_F() {
  return Fn2("e^-s", [](double s, double) { return std::exp(-s); },
             Fn2::Derivatives{[](double s, double) { return -std::exp(-s); }, zero2,
                              [](double s, double) { return std::exp(-s); }, zero2, zero2});
}

const Interval kNonNeg{0.0, kInf};

Fn1 double_well() {
  return {"W", [](double s) { return oracle::double_well(s); }, [](double s) { return s * s * s - s; },
          [](double s) { return 3 * s * s - 1; }};
}

double at(const Profile1& p, double x) {
  const auto it = std::min_element(p.xs.begin(), p.xs.end(),
                                   [x](double a, double b) { return std::abs(a - x) < std::abs(b - x); });
  EXPECT_NEAR(*it, x, 1e-12);
  return p.u[static_cast<std::size_t>(it - p.xs.begin())];
}

double max_dev(const Field2& u, const std::function<double(double, double)>& want) {
  double worst = 0.0;
  for (int j = 0; j < u.grid().ny; ++j) {
    for (int i = 0; i < u.grid().nx; ++i) {
      worst = std::max(worst, std::abs(u(i, j) - want(u.grid().x(i), u.grid().y(j))));
    }
  }
  return worst;
}

}  // namespace

TEST(BandLU, MatchesDenseSolve) {
  const std::size_t n = 12;
  const std::size_t kl = 3;
  const std::size_t ku = 2;
  BandLU A(n, kl, ku);
  std::vector<std::vector<double>> dense(n, std::vector<double>(n, 0.0));
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> U(-1, 1);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = (r > kl ? r - kl : 0); c <= std::min(n - 1, r + ku); ++c) {
      const double v = U(rng) + (r == c ? 0.1 : 0.0);
      A.add(r, c, v);
      dense[r][c] = v;
    }
  }
  std::vector<double> x_true(n);
  for (auto& v : x_true) v = U(rng);
  std::vector<double> b(n, 0.0);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) b[r] += dense[r][c] * x_true[c];
  }
  A.factor();
  A.solve(b);
  for (std::size_t k = 0; k < n; ++k) EXPECT_NEAR(b[k], x_true[k], 1e-10);
}

TEST(BandLU, SingularThrows) {
  BandLU A(3, 1, 1);
  A.add(0, 0, 1.0);
  A.add(2, 2, 1.0);
  EXPECT_THROW(A.factor(), Error);
}

TEST(GradientSemilinear, HarmonicLinearData) {
  const Grid2 g = Grid2::box(0, 1, 0, 1, 16, 16);
  NewtonOpts opts;
  opts.initialGuess = InitialGuess::ZeroField;
  const SolveResult r = solve_gradient_semilinear(zero_F(), g, [](double x, double) { return x; }, opts);
  EXPECT_LT(max_dev(r.u, [](double x, double) { return x; }), 1e-12);
  EXPECT_LE(r.iterations, 2);
}

TEST(GradientSemilinear, ExpDecayConvergesPositive) {
  const Grid2 g = Grid2::box(0, 1, 0, 1, 64, 64);
  const SolveResult r = solve_gradient_semilinear(exp_decay_F(), g, [](double, double) { return 1.0; });
  EXPECT_LE(r.iterations, 8);
  EXPECT_LE(r.recheckResidual, 1e-10);
  const auto& v = r.u.values();
  EXPECT_GT(*std::min_element(v.begin(), v.end()), 0.0);
  // subsolution of the Laplacian: interior below the boundary value
  EXPECT_LT(*std::min_element(v.begin(), v.end()), 1.0);
}

TEST(GradientSemilinear, Ex3Converges) {
  const ExampleInstance ex = paper_example(Ex3{1.0, -1.0, 1.0});
  const auto& F = std::get<GradientSemilinear>(ex.equation.form).F;
  const SolveResult r = solve_gradient_semilinear(F, Grid2::box(0, 1, 0, 1, 32, 32), [](double, double) { return 1.0; });
  EXPECT_LE(r.recheckResidual, 1e-10);
  const Field2 res = residual_gradient_semilinear(F, r.u);
  for (double v : res.values()) EXPECT_LE(std::abs(v), 1e-10);
}

TEST(DivergenceForm, LinearDataIsExact) {
  DivergenceForm eq{Fn1("t+t^2/2", [](double t) { return t + t * t / 2; }, [](double t) { return 1 + t; },
                        [](double) { return 1.0; }, kNonNeg),
                    Fn1::constant(1.0, kNonNeg), Fn1::constant(0.0)};
  const SolveResult r =
      solve_divergence_form(eq, Grid2::box(0, 1, 0, 1, 16, 16), [](double x, double) { return x; });
  EXPECT_LT(max_dev(r.u, [](double x, double) { return x; }), 1e-11);
}

TEST(DivergenceForm, LinearFluxMatchesSemilinear) {
  // Phi = t, rho = 1: div grad u = F'(u), the semilinear problem with f = W'.
  DivergenceForm eq{Fn1::identity(kNonNeg), Fn1::constant(1.0, kNonNeg), double_well()};
  Fn2 F("s^3-s", [](double s, double) { return s * s * s - s; },
        Fn2::Derivatives{[](double s, double) { return 3 * s * s - 1; }, zero2,
                         [](double s, double) { return 6 * s; }, zero2, zero2});
  const Grid2 g = Grid2::box(-1, 1, 0, 1, 32, 16);
  auto bc = [](double x, double) { return x; };
  const SolveResult a = solve_divergence_form(eq, g, bc);
  const SolveResult b = solve_gradient_semilinear(F, g, bc);
  for (std::size_t k = 0; k < a.u.values().size(); ++k) EXPECT_NEAR(a.u.values()[k], b.u.values()[k], 1e-8);
}

TEST(Profile, KinkFromCentre) {
  const EquationSpec eq{"ac", Semilinear{Fn1("s^3-s", [](double s) { return s * s * s - s; },
                                             [](double s) { return 3 * s * s - 1; }, [](double s) { return 6 * s; })}};
  const Profile1 p = integrate_profile(eq, 0.0, 1.0 / std::sqrt(2.0), 1e-3, Interval{-5, 5});
  EXPECT_NEAR(at(p, 1.0), oracle::kink_u(1.0), 1e-8);
  for (std::size_t k = 0; k < p.xs.size(); k += 97) {
    EXPECT_NEAR(p.u[k], oracle::kink_u(p.xs[k]), 1e-6);
    // energy: u'^2/2 - W(u) constant (zero on the kink)
    EXPECT_NEAR(0.5 * p.du[k] * p.du[k] - oracle::double_well(p.u[k]), 0.0, 1e-8);
  }
}

TEST(Profile, ZeroForceIsLinear) {
  const EquationSpec eq{"lin", Semilinear{Fn1::constant(0.0)}};
  const Profile1 p = integrate_profile(eq, 0.0, 1.0, 1e-2, Interval{-1, 1});
  for (std::size_t k = 0; k < p.xs.size(); ++k) EXPECT_NEAR(p.u[k], p.xs[k], 1e-12);
}

TEST(Profile, DivergenceReduction) {
  const EquationSpec eq{"div", DivergenceForm{Fn1::identity(kNonNeg), Fn1::constant(1.0, kNonNeg), double_well()}};
  const Profile1 p = integrate_profile(eq, 0.0, 1.0 / std::sqrt(2.0), 1e-3, Interval{-3, 3});
  EXPECT_NEAR(at(p, 1.0), oracle::kink_u(1.0), 1e-8);
  EXPECT_NEAR(at(p, -2.0), oracle::kink_u(-2.0), 1e-8);
}

TEST(Profile, AccelerationMatchesEquation) {
  const EquationSpec eq{"ac", Semilinear{Fn1("s^3-s", [](double s) { return s * s * s - s; },
                                             [](double s) { return 3 * s * s - 1; }, [](double s) { return 6 * s; })}};
  const auto [u, v] = kink(1.0);
  EXPECT_NEAR(profile_acceleration(eq, u, v), oracle::kink_ddu(1.0), 1e-12);
}

TEST(Kink, CentreAndTails) {
  const auto [u0, v0] = kink(0.0);
  EXPECT_EQ(u0, 0.0);
  EXPECT_DOUBLE_EQ(v0, 1.0 / std::sqrt(2.0));
  const auto [u1, v1] = kink(40.0);
  EXPECT_NEAR(u1, 1.0, 1e-15);
  EXPECT_NEAR(v1, 0.0, 1e-15);
}

TEST(Kink, SecondDerivativeFromSamples) {
  const double h = 1e-5;
  const double ddu = (kink(1.0 + h).second - kink(1.0 - h).second) / (2 * h);
  const double u = kink(1.0).first;
  EXPECT_NEAR(ddu, u * u * u - u, 1e-9);
}
