#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "pfunc/criterion.hpp"
#include "pfunc/error.hpp"
#include "pfunc/paper_examples.hpp"

using namespace pfunc;

namespace {

double zero2(double, double) { return 0.0; }

Fn2 linear_t(double sign = 1.0) {
  return {"t", [sign](double, double t) { return sign * t; },
          Fn2::Derivatives{zero2, [sign](double, double) { return sign; }, zero2, zero2, zero2}};
}

Fn2 semilinear(const Fn1& f) { return as_gradient_semilinear(Semilinear{f}); }

Fn1 sin_fn() {
  return {"sin", [](double s) { return std::sin(s); }, [](double s) { return std::cos(s); },
          [](double s) { return -std::sin(s); }};
}

Fn1 allen_cahn() {
  return {"s^3-s", [](double s) { return s * s * s - s; }, [](double s) { return 3 * s * s - 1; },
          [](double s) { return 6 * s; }};
}

}  // namespace

TEST(EvalI, LinearPAtIdentityF) {
  const Fn1 f = Fn1::identity();
  EXPECT_DOUBLE_EQ(eval_I(linear_t(), semilinear(f), 0.3, 2.0), 8.0);
}

TEST(EvalI, ConstantPVanishes) {
  Fn2 P("c", [](double, double) { return 3.0; }, Fn2::Derivatives{zero2, zero2, zero2, zero2, zero2});
  for (double s : {-1.0, 0.5}) {
    for (double t : {0.0, 1.3}) EXPECT_EQ(eval_I(P, semilinear(sin_fn()), s, t), 0.0);
  }
}

TEST(EvalI, Ex1ExpansionAtSine) {
  const ExampleInstance ex = paper_example(Ex1{sin_fn(), std::nullopt});
  EXPECT_NEAR(eval_I(ex.pfunction.P, semilinear(sin_fn()), 1.0, 1.0), std::cos(1.0) / 2, 1e-12);
}

TEST(EvalI, Ex1RandomPoints) {
  const ExampleInstance ex = paper_example(Ex1{allen_cahn(), std::nullopt});
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> S(-2, 2), T(0, 2);
  for (int k = 0; k < 500; ++k) {
    const double s = S(rng);
    const double t = T(rng);
    EXPECT_NEAR(eval_I(ex.pfunction.P, semilinear(allen_cahn()), s, t), oracle::ex1_I(3 * s * s - 1, t), 1e-12);
    EXPECT_NEAR(hypothesis2_quantity(ex.pfunction.P, semilinear(allen_cahn()), s, t), 0.0, 1e-12);
  }
}

TEST(Hypothesis1, ConvexPZeroF) {
  Fn2 P("t^2/2+s^2", [](double s, double t) { return t * t / 2 + s * s; },
        Fn2::Derivatives{[](double s, double) { return 2 * s; }, [](double, double t) { return t; },
                         [](double, double) { return 2.0; }, zero2, [](double, double) { return 1.0; }});
  Fn2 F("0", zero2, Fn2::Derivatives{zero2, zero2, zero2, zero2, zero2});
  EXPECT_TRUE(check_hypothesis1(P, F, Rect{{-2, 2}, {0, 2}}, 21, 21).pass);
}

TEST(Hypothesis1, IndefiniteHessianFails) {
  Fn2 P("st", [](double s, double t) { return s * t; },
        Fn2::Derivatives{[](double, double t) { return t; }, [](double s, double) { return s; }, zero2,
                         [](double, double) { return 1.0; }, zero2});
  Fn2 F("0", zero2, Fn2::Derivatives{zero2, zero2, zero2, zero2, zero2});
  const CriterionVerdict v = check_hypothesis1(P, F, Rect{{-2, 2}, {0, 2}}, 21, 21);
  EXPECT_FALSE(v.pass);
  bool psd_failed = false;
  for (const auto& sc : v.subchecks) psd_failed = psd_failed || !sc.pass;
  EXPECT_TRUE(psd_failed);
}

TEST(Hypothesis1, Ex4Passes) {
  Fn1 G("tanh/2", [](double z) { return 0.5 * std::tanh(z); },
        [](double z) { return 0.5 / (std::cosh(z) * std::cosh(z)); },
        [](double z) { return -std::tanh(z) / (std::cosh(z) * std::cosh(z)); });
  const ExampleInstance ex = paper_example(Ex4{G, Interval{-10, 10}});
  const auto& F = std::get<GradientSemilinear>(ex.equation.form).F;
  EXPECT_TRUE(check_hypothesis1(ex.pfunction.P, F, Rect{{0, 2}, {0, 2}}, 21, 21).pass);
  EXPECT_TRUE(check_hypothesis2(ex.pfunction.P, F, Rect{{0, 2}, {0, 2}}, 21, 21).pass);
}

TEST(Hypothesis2, Ex1IdentityIsExact) {
  const ExampleInstance ex = paper_example(Ex1{allen_cahn(), std::nullopt});
  const CriterionVerdict v = check_hypothesis2(ex.pfunction.P, semilinear(allen_cahn()), Rect{{-2, 2}, {0, 2}}, 41, 41);
  EXPECT_TRUE(v.pass);
  EXPECT_NEAR(v.minResidual, 0.0, 1e-12);
}

TEST(Hypothesis2, NegativePtFails) {
  Fn2 F("0", zero2, Fn2::Derivatives{zero2, zero2, zero2, zero2, zero2});
  EXPECT_FALSE(check_hypothesis2(linear_t(-1.0), F, Rect{{-1, 1}, {0, 2}}, 11, 11).pass);
}

TEST(CorollarySemilinear, Ex1VariantTwo) {
  const ExampleInstance ex = paper_example(Ex1{allen_cahn(), std::nullopt});
  const CriterionVerdict v = check_corollary_semilinear(ex.pfunction.P, allen_cahn(), Rect{{-2, 2}, {0, 2}}, 41, 41);
  EXPECT_TRUE(v.pass);
  EXPECT_NEAR(v.minResidual, 0.0, 1e-12);
}

TEST(CorollarySemilinear, StableLinear) {
  EXPECT_TRUE(check_corollary_semilinear(linear_t(), Fn1::identity(), Rect{{-2, 2}, {0, 2}}, 21, 21).pass);
}

TEST(CorollarySemilinear, ExpCounterexampleSatisfiesCriterion) {
  Fn2 P("t/2-e^s+e^-s", [](double s, double t) { return t / 2 - std::exp(s) + std::exp(-s); },
        Fn2::Derivatives{[](double s, double) { return -std::exp(s) - std::exp(-s); }, [](double, double) { return 0.5; },
                         [](double s, double) { return -std::exp(s) + std::exp(-s); }, zero2, zero2});
  Fn1 f("e^s", [](double s) { return std::exp(s); }, [](double s) { return std::exp(s); },
        [](double s) { return std::exp(s); });
  EXPECT_TRUE(check_corollary_semilinear(P, f, Rect{{-2, 2}, {0, 2}}, 21, 21).pass);
}

// f = e^{-u}: 2 t^4 f' + t^2 q'' + q' f = -2 e^{-s} (t^2 + G)^2 with G = 1 - e^{-s}.
TEST(CorollarySemilinear, Ex2DecayingExponentialFails) {
  Fn1 f("e^-s", [](double s) { return std::exp(-s); }, [](double s) { return -std::exp(-s); },
        [](double s) { return std::exp(-s); });
  const ExampleInstance ex = paper_example(Ex2{f, Interval{-5, 5}});
  const CriterionVerdict v = check_corollary_semilinear(ex.pfunction.P, f, Rect{{0, 3}, {0, 2}}, 21, 21);
  EXPECT_FALSE(v.pass);
  // Worst at s = 0, |grad u| = 2: 2 T^2 f' = -32 with T = 4, reported over 1 + |terms| = 33.
  EXPECT_NEAR(v.minResidual, -32.0 / 33.0, 1e-12);
  EXPECT_DOUBLE_EQ(v.argminS, 0.0);
  EXPECT_DOUBLE_EQ(v.argminT, 2.0);
}

TEST(CorollarySemilinear, Ex2IncreasingBranchPasses) {
  Fn1 f("-e^-s", [](double s) { return -std::exp(-s); }, [](double s) { return std::exp(-s); },
        [](double s) { return -std::exp(-s); });
  const ExampleInstance ex = paper_example(Ex2{f, Interval{-5, 5}});
  EXPECT_TRUE(check_corollary_semilinear(ex.pfunction.P, f, Rect{{0, 3}, {0, 2}}, 21, 21).pass);
}

TEST(CriterionSamples, Deterministic) {
  const auto a = criterion_samples(Rect{{0, 1}, {0, 1}}, 5, 5);
  const auto b = criterion_samples(Rect{{0, 1}, {0, 1}}, 5, 5);
  ASSERT_EQ(a.size(), 25 + kCriterionRandomSamples);
  EXPECT_EQ(a, b);
}
