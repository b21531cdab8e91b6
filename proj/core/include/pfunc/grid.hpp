#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace pfunc {

/// Uniform node-centred grid: x_i = x0 + i hx, y_j = y0 + j hy.
struct Grid2 {
  int nx = 0;
  int ny = 0;
  double hx = 0.0;
  double hy = 0.0;
  double x0 = 0.0;
  double y0 = 0.0;

  Grid2() = default;
  Grid2(int nx, int ny, double hx, double hy, double x0 = 0.0, double y0 = 0.0);

  /// [xlo, xhi] x [ylo, yhi] split into cells_x by cells_y cells.
  static Grid2 box(double xlo, double xhi, double ylo, double yhi, int cells_x, int cells_y);

  [[nodiscard]] double x(int i) const { return x0 + i * hx; }
  [[nodiscard]] double y(int j) const { return y0 + j * hy; }
  [[nodiscard]] std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(j) * static_cast<std::size_t>(nx) + static_cast<std::size_t>(i);
  }
  [[nodiscard]] std::size_t size() const { return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny); }
  [[nodiscard]] double h() const { return hx > hy ? hx : hy; }
  /// Nearest node to (x, y), clamped to the grid.
  [[nodiscard]] std::pair<int, int> nearest(double x, double y) const;
  [[nodiscard]] std::string describe() const;

  friend bool operator==(const Grid2&, const Grid2&) = default;
};

/// Scalar field on a Grid2. Values within `margin` cells of the edge are
/// outside the valid region of the operator that produced them and hold 0.
class Field2 {
 public:
  Field2() = default;
  Field2(Grid2 grid, std::vector<double> values, int margin = 0);

  static Field2 sample(const Grid2& grid, const std::function<double(double, double)>& fn);
  /// fn(i, j) on the valid region for `margin`, zero elsewhere.
  static Field2 generate(const Grid2& grid, int margin, const std::function<double(int, int)>& fn);

  [[nodiscard]] const Grid2& grid() const { return grid_; }
  [[nodiscard]] int margin() const { return margin_; }
  [[nodiscard]] const std::vector<double>& values() const { return values_; }
  [[nodiscard]] double operator()(int i, int j) const { return values_[grid_.index(i, j)]; }
  [[nodiscard]] bool valid(int i, int j) const {
    return i >= margin_ && j >= margin_ && i < grid_.nx - margin_ && j < grid_.ny - margin_;
  }
  [[nodiscard]] int ilo() const { return margin_; }
  [[nodiscard]] int ihi() const { return grid_.nx - 1 - margin_; }
  [[nodiscard]] int jlo() const { return margin_; }
  [[nodiscard]] int jhi() const { return grid_.ny - 1 - margin_; }

  void write_csv(std::ostream& out) const;
  void write_csv(const std::string& path) const;

 private:
  Grid2 grid_;
  std::vector<double> values_;
  int margin_ = 0;
};

/// Pointwise combination of fields on the same grid; the margin is the max.
Field2 combine(const std::vector<const Field2*>& inputs, const std::function<double(std::span<const double>)>& fn);

struct Profile1 {
  double h = 0.0;
  std::vector<double> xs;
  std::vector<double> u;
  std::vector<double> du;
};

struct Gradient {
  Field2 x;
  Field2 y;
};

struct Hessian {
  Field2 xx;
  Field2 xy;
  Field2 yy;
  [[nodiscard]] const Field2& yx() const { return xy; }
};

/// Central differences inside the valid region, one-sided second order on its edge.
Gradient gradient(const Field2& f);
Field2 laplacian(const Field2& f);
Hessian hessian(const Field2& f);
/// Central differences of the 5-point Laplacian.
Gradient grad_laplacian(const Field2& f);
/// 5-point Laplacian applied twice (13-point stencil).
Field2 biharmonic(const Field2& f);

inline constexpr double kDetEpsilon = 1e-8;

Field2 det_hessian(const Field2& f);
/// B = (Hes u)^{-1} grad(Delta u). Throws DegenerateHessian where det <= eps.
Gradient ma_drift(const Field2& f, double eps = kDetEpsilon);

/// Mean of nodal values whose dual cells are centred inside the closed ball.
double ball_average(const Field2& f, double cx, double cy, double r);

struct Extremum {
  double value = 0.0;
  int i = 0;
  int j = 0;
  double x = 0.0;
  double y = 0.0;
};

/// Over the valid region: "boundary" is its outermost ring, "interior" the rest.
/// Ties resolve to the lexicographically smallest (i, j).
struct Extrema {
  Extremum interiorMax;
  Extremum interiorMin;
  Extremum boundaryMax;
  Extremum boundaryMin;
};

Extrema extrema(const Field2& f);

}  // namespace pfunc
