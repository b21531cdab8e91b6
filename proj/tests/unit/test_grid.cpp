#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "oracles.hpp"
#include "pfunc/error.hpp"
#include "pfunc/grid.hpp"

using namespace pfunc;

namespace {

double max_abs_interior(const Field2& f, const std::function<double(double, double)>& want) {
  double worst = 0.0;
  for (int j = f.jlo(); j <= f.jhi(); ++j) {
    for (int i = f.ilo(); i <= f.ihi(); ++i) {
      worst = std::max(worst, std::abs(f(i, j) - want(f.grid().x(i), f.grid().y(j))));
    }
  }
  return worst;
}

double sin_sin_laplacian_error(int cells) {
  const Grid2 g = Grid2::box(0.2, 1.2, 0.1, 1.1, cells, cells);
  const Field2 u = Field2::sample(g, [](double x, double y) { return std::sin(x) * std::sin(y); });
  return max_abs_interior(laplacian(u), [](double x, double y) { return -2.0 * std::sin(x) * std::sin(y); });
}

}  // namespace

TEST(Operators, QuadraticIsExact) {
  const Grid2 g = Grid2::box(-1, 1, -1, 1, 16, 16);
  const Field2 u = Field2::sample(g, [](double x, double y) { return x * x + y * y; });
  EXPECT_LT(max_abs_interior(laplacian(u), [](double, double) { return 4.0; }), 1e-11);
  const Hessian H = hessian(u);
  EXPECT_LT(max_abs_interior(H.xx, [](double, double) { return 2.0; }), 1e-11);
  EXPECT_LT(max_abs_interior(H.xy, [](double, double) { return 0.0; }), 1e-11);
  EXPECT_LT(max_abs_interior(H.yy, [](double, double) { return 2.0; }), 1e-11);
  EXPECT_LT(max_abs_interior(biharmonic(u), [](double, double) { return 0.0; }), 1e-9);
  const Gradient G = gradient(u);
  EXPECT_LT(max_abs_interior(G.x, [](double x, double) { return 2 * x; }), 1e-12);
}

TEST(Operators, CubicGradLaplacian) {
  const Grid2 g = Grid2::box(0, 1, 0, 1, 20, 20);
  const Field2 u = Field2::sample(g, [](double x, double) { return x * x * x; });
  const Gradient gl = grad_laplacian(u);
  EXPECT_LT(max_abs_interior(gl.x, [](double, double) { return 6.0; }), 1e-8);
  EXPECT_LT(max_abs_interior(gl.y, [](double, double) { return 0.0; }), 1e-8);
  EXPECT_LT(max_abs_interior(biharmonic(u), [](double, double) { return 0.0; }), 1e-6);
}

TEST(Operators, SinSinConvergence) {
  const double e1 = sin_sin_laplacian_error(100);
  const double e2 = sin_sin_laplacian_error(200);
  EXPECT_LT(e1, 1e-3);
  EXPECT_GE(std::log2(e1 / e2), 1.9);
  EXPECT_GE(e1 / e2, 3.6);
}

TEST(Operators, MarginGrowsWithStencil) {
  const Grid2 g = Grid2::box(0, 1, 0, 1, 10, 10);
  const Field2 u = Field2::sample(g, [](double x, double y) { return x * y; });
  EXPECT_EQ(laplacian(u).margin(), 1);
  EXPECT_GT(biharmonic(u).margin(), laplacian(u).margin());
}

TEST(MongeAmpere, DetAndDrift) {
  struct Case {
    std::function<double(double, double)> u;
    std::function<double(double, double)> det;
    std::function<double(double, double)> bx;
  };
  const std::vector<Case> cases{
      {[](double x, double y) { return 0.5 * (x * x + y * y); }, [](double, double) { return 1.0; },
       [](double, double) { return 0.0; }},
      {[](double x, double y) { return 0.5 * (2 * x * x + 3 * y * y); }, [](double, double) { return 6.0; },
       [](double, double) { return 0.0; }},
      {[](double x, double y) { return 0.5 * (x * x + y * y) + 0.1 * std::exp(x); },
       [](double x, double) { return 1.0 + 0.1 * std::exp(x); },
       [](double x, double) { return 0.1 * std::exp(x) / (1.0 + 0.1 * std::exp(x)); }},
  };
  const Grid2 g = Grid2::box(-0.5, 0.5, -0.5, 0.5, 128, 128);
  for (const Case& c : cases) {
    const Field2 u = Field2::sample(g, c.u);
    EXPECT_LT(max_abs_interior(det_hessian(u), c.det), 1e-4);
    const Gradient B = ma_drift(u);
    EXPECT_LT(max_abs_interior(B.x, c.bx), 1e-4);
    EXPECT_LT(max_abs_interior(B.y, [](double, double) { return 0.0; }), 1e-8);
  }
}

TEST(MongeAmpere, DegenerateHessianThrows) {
  const Grid2 g = Grid2::box(0, 1, 0, 1, 10, 10);
  const Field2 u = Field2::sample(g, [](double x, double) { return x; });
  try {
    (void)ma_drift(u);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DegenerateHessian);
  }
}

TEST(BallAverage, Constant) {
  const Grid2 g = Grid2::box(-1, 1, -1, 1, 40, 40);
  EXPECT_EQ(ball_average(Field2::sample(g, [](double, double) { return 2.5; }), 0, 0, 0.5), 2.5);
}

TEST(BallAverage, SquaredNorm) {
  const Grid2 g = Grid2::box(-1.1, 1.1, -1.1, 1.1, 440, 440);
  const Field2 f = Field2::sample(g, [](double x, double y) { return x * x + y * y; });
  EXPECT_NEAR(ball_average(f, 0, 0, 1.0), oracle::disc_mean_r2(1.0), 1e-3);
}

TEST(BallAverage, OddFunctionVanishes) {
  const Grid2 g = Grid2::box(-1, 1, -1, 1, 64, 64);
  EXPECT_NEAR(ball_average(Field2::sample(g, [](double x, double) { return x; }), 0, 0, 0.7), 0.0, 1e-6);
}

TEST(BallAverage, OutOfBounds) {
  const Grid2 g = Grid2::box(0, 1, 0, 1, 10, 10);
  try {
    (void)ball_average(Field2::sample(g, [](double, double) { return 1.0; }), 0.5, 0.5, 0.8);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::BallOutOfBounds);
  }
}

TEST(Extrema, LinearPeaksOnBoundary) {
  const Field2 f = Field2::sample(Grid2::box(0, 1, 0, 1, 10, 10), [](double x, double) { return x; });
  const Extrema e = extrema(f);
  EXPECT_LT(e.interiorMax.value, e.boundaryMax.value);
  EXPECT_DOUBLE_EQ(e.boundaryMax.value, 1.0);
}

TEST(Extrema, ConstantTies) {
  const Extrema e = extrema(Field2::sample(Grid2::box(0, 1, 0, 1, 6, 6), [](double, double) { return 5.0; }));
  EXPECT_EQ(e.interiorMax.value, 5.0);
  EXPECT_EQ(e.boundaryMax.value, 5.0);
  EXPECT_EQ(e.interiorMax.i, 1);
  EXPECT_EQ(e.interiorMax.j, 1);
}

TEST(Extrema, ConcaveBump) {
  const Field2 f = Field2::sample(Grid2::box(-1, 1, -1, 1, 20, 20), [](double x, double y) { return -(x * x + y * y); });
  const Extrema e = extrema(f);
  EXPECT_DOUBLE_EQ(e.interiorMax.value, 0.0);
  EXPECT_GT(e.interiorMax.value, e.boundaryMax.value);
  EXPECT_DOUBLE_EQ(e.interiorMax.x, 0.0);
}

TEST(Csv, HeaderRowMajorLf) {
  const Field2 f = Field2::sample(Grid2::box(0, 4, 0, 8, 4, 4), [](double x, double y) { return x + 10 * y; });
  std::ostringstream out;
  f.write_csv(out);
  const std::string s = out.str();
  EXPECT_EQ(s.rfind("x,y,value\n", 0), 0u);
  EXPECT_EQ(s.find('\r'), std::string::npos);
  std::istringstream in(s);
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(in, line)) lines.push_back(line);
  ASSERT_EQ(lines.size(), 26u);
  // row-major: x varies fastest
  EXPECT_EQ(lines[1].substr(0, 4), "0,0,");
  EXPECT_EQ(lines[2].substr(0, 4), "1,0,");
  EXPECT_EQ(lines[6].substr(0, 4), "0,2,");
  EXPECT_EQ(lines[6], "0,2,20");
}
