#include "pfunc/grid.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "pfunc/error.hpp"

namespace pfunc {

namespace {

std::string where(const Grid2& g, int i, int j) {
  std::ostringstream os;
  os.precision(17);
  os << "node (" << i << ", " << j << ") at (" << g.x(i) << ", " << g.y(j) << ")";
  return os.str();
}

void require_width(const Field2& f, int needed, const char* op) {
  const int wx = f.ihi() - f.ilo() + 1;
  const int wy = f.jhi() - f.jlo() + 1;
  if (wx < needed || wy < needed) {
    throw Error(ErrorCode::GridTooSmall, std::string(op) + ": valid region " + std::to_string(wx) + "x" +
                                             std::to_string(wy) + " narrower than " + std::to_string(needed));
  }
}

// First derivative along one axis: central inside [lo, hi], one-sided second
// order at lo and hi.
double d1(const Field2& f, int i, int j, bool along_x) {
  const Grid2& g = f.grid();
  const double h = along_x ? g.hx : g.hy;
  const int k = along_x ? i : j;
  const int lo = along_x ? f.ilo() : f.jlo();
  const int hi = along_x ? f.ihi() : f.jhi();
  auto at = [&](int m) { return along_x ? f(m, j) : f(i, m); };
  if (k == lo) return (-3.0 * at(k) + 4.0 * at(k + 1) - at(k + 2)) / (2.0 * h);
  if (k == hi) return (3.0 * at(k) - 4.0 * at(k - 1) + at(k - 2)) / (2.0 * h);
  return (at(k + 1) - at(k - 1)) / (2.0 * h);
}

}  // namespace

Grid2::Grid2(int nx_, int ny_, double hx_, double hy_, double x0_, double y0_)
    : nx(nx_), ny(ny_), hx(hx_), hy(hy_), x0(x0_), y0(y0_) {
  if (nx < 5 || ny < 5) throw Error(ErrorCode::GridTooSmall, "grid needs at least 5 nodes per axis");
  if (!(std::isfinite(hx) && hx > 0.0 && std::isfinite(hy) && hy > 0.0)) {
    throw Error(ErrorCode::BadParams, "grid spacing must be finite and positive");
  }
  if (!std::isfinite(x0) || !std::isfinite(y0)) throw Error(ErrorCode::BadParams, "grid origin must be finite");
}

Grid2 Grid2::box(double xlo, double xhi, double ylo, double yhi, int cells_x, int cells_y) {
  if (!(xhi > xlo && yhi > ylo) || cells_x < 1 || cells_y < 1) {
    throw Error(ErrorCode::BadParams, "grid box must be non-degenerate");
  }
  return {cells_x + 1, cells_y + 1, (xhi - xlo) / cells_x, (yhi - ylo) / cells_y, xlo, ylo};
}

std::pair<int, int> Grid2::nearest(double x, double y) const {
  auto clamp = [](double v, int n) {
    const long r = std::lround(v);
    return static_cast<int>(r < 0 ? 0 : (r >= n ? n - 1 : r));
  };
  return {clamp((x - x0) / hx, nx), clamp((y - y0) / hy, ny)};
}

std::string Grid2::describe() const {
  std::ostringstream os;
  os.precision(17);
  os << nx << "x" << ny << " h=(" << hx << "," << hy << ") origin=(" << x0 << "," << y0 << ")";
  return os.str();
}

Field2::Field2(Grid2 grid, std::vector<double> values, int margin)
    : grid_(grid), values_(std::move(values)), margin_(margin) {
  if (values_.size() != grid_.size()) throw Error(ErrorCode::BadParams, "field size does not match grid");
  if (margin_ < 0 || 2 * margin_ >= grid_.nx || 2 * margin_ >= grid_.ny) {
    throw Error(ErrorCode::GridTooSmall, "margin leaves no valid nodes");
  }
  for (int j = 0; j < grid_.ny; ++j) {
    for (int i = 0; i < grid_.nx; ++i) {
      if (!std::isfinite(values_[grid_.index(i, j)])) {
        throw Error(ErrorCode::NonFinite, "field value not finite at " + where(grid_, i, j));
      }
    }
  }
}

Field2 Field2::sample(const Grid2& grid, const std::function<double(double, double)>& fn) {
  return generate(grid, 0, [&](int i, int j) { return fn(grid.x(i), grid.y(j)); });
}

Field2 Field2::generate(const Grid2& grid, int margin, const std::function<double(int, int)>& fn) {
  std::vector<double> v(grid.size(), 0.0);
  for (int j = margin; j < grid.ny - margin; ++j) {
    for (int i = margin; i < grid.nx - margin; ++i) v[grid.index(i, j)] = fn(i, j);
  }
  return {grid, std::move(v), margin};
}

void Field2::write_csv(std::ostream& out) const {
  out << "x,y,value\n";
  char buf[96];
  for (int j = 0; j < grid_.ny; ++j) {
    for (int i = 0; i < grid_.nx; ++i) {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", grid_.x(i), grid_.y(j), (*this)(i, j));
      out << buf;
    }
  }
}

void Field2::write_csv(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::ConfigError, "cannot open " + path + " for writing");
  write_csv(out);
}

Field2 combine(const std::vector<const Field2*>& inputs, const std::function<double(std::span<const double>)>& fn) {
  if (inputs.empty()) throw Error(ErrorCode::BadParams, "combine needs at least one field");
  const Grid2& g = inputs.front()->grid();
  int margin = 0;
  for (const Field2* f : inputs) {
    if (!(f->grid() == g)) throw Error(ErrorCode::BadParams, "combine: grids differ");
    margin = std::max(margin, f->margin());
  }
  std::vector<double> args(inputs.size());
  return Field2::generate(g, margin, [&](int i, int j) {
    for (std::size_t k = 0; k < inputs.size(); ++k) args[k] = (*inputs[k])(i, j);
    return fn(args);
  });
}

Gradient gradient(const Field2& f) {
  require_width(f, 3, "gradient");
  const int m = f.margin();
  return {Field2::generate(f.grid(), m, [&](int i, int j) { return d1(f, i, j, true); }),
          Field2::generate(f.grid(), m, [&](int i, int j) { return d1(f, i, j, false); })};
}

Field2 laplacian(const Field2& f) {
  require_width(f, 3, "laplacian");
  const Grid2& g = f.grid();
  const double ihx2 = 1.0 / (g.hx * g.hx);
  const double ihy2 = 1.0 / (g.hy * g.hy);
  return Field2::generate(g, f.margin() + 1, [&](int i, int j) {
    const double c = f(i, j);
    return (f(i + 1, j) - 2.0 * c + f(i - 1, j)) * ihx2 + (f(i, j + 1) - 2.0 * c + f(i, j - 1)) * ihy2;
  });
}

Hessian hessian(const Field2& f) {
  require_width(f, 3, "hessian");
  const Grid2& g = f.grid();
  const int m = f.margin() + 1;
  return {Field2::generate(g, m, [&](int i, int j) {
            return (f(i + 1, j) - 2.0 * f(i, j) + f(i - 1, j)) / (g.hx * g.hx);
          }),
          Field2::generate(g, m, [&](int i, int j) {
            return (f(i + 1, j + 1) - f(i + 1, j - 1) - f(i - 1, j + 1) + f(i - 1, j - 1)) / (4.0 * g.hx * g.hy);
          }),
          Field2::generate(g, m, [&](int i, int j) {
            return (f(i, j + 1) - 2.0 * f(i, j) + f(i, j - 1)) / (g.hy * g.hy);
          })};
}

Gradient grad_laplacian(const Field2& f) {
  require_width(f, 5, "grad_laplacian");
  const Field2 lap = laplacian(f);
  const Grid2& g = f.grid();
  const int m = lap.margin() + 1;
  return {Field2::generate(g, m, [&](int i, int j) { return (lap(i + 1, j) - lap(i - 1, j)) / (2.0 * g.hx); }),
          Field2::generate(g, m, [&](int i, int j) { return (lap(i, j + 1) - lap(i, j - 1)) / (2.0 * g.hy); })};
}

Field2 biharmonic(const Field2& f) {
  if (f.grid().nx < 9 || f.grid().ny < 9) throw Error(ErrorCode::GridTooSmall, "biharmonic needs nx, ny >= 9");
  require_width(f, 5, "biharmonic");
  return laplacian(laplacian(f));
}

Field2 det_hessian(const Field2& f) {
  const Hessian H = hessian(f);
  return combine({&H.xx, &H.xy, &H.yy}, [](std::span<const double> a) { return a[0] * a[2] - a[1] * a[1]; });
}

Gradient ma_drift(const Field2& f, double eps) {
  const Hessian H = hessian(f);
  const Gradient gl = grad_laplacian(f);
  const Grid2& g = f.grid();
  const int m = gl.x.margin();
  for (int i = m; i < g.nx - m; ++i) {
    for (int j = m; j < g.ny - m; ++j) {
      const double det = H.xx(i, j) * H.yy(i, j) - H.xy(i, j) * H.xy(i, j);
      if (!(det > eps)) {
        std::ostringstream os;
        os.precision(17);
        os << "det Hessian = " << det << " at " << where(g, i, j);
        throw Error(ErrorCode::DegenerateHessian, os.str());
      }
    }
  }
  auto det = [&](int i, int j) { return H.xx(i, j) * H.yy(i, j) - H.xy(i, j) * H.xy(i, j); };
  return {Field2::generate(g, m, [&](int i, int j) {
            return (H.yy(i, j) * gl.x(i, j) - H.xy(i, j) * gl.y(i, j)) / det(i, j);
          }),
          Field2::generate(g, m, [&](int i, int j) {
            return (-H.xy(i, j) * gl.x(i, j) + H.xx(i, j) * gl.y(i, j)) / det(i, j);
          })};
}

double ball_average(const Field2& f, double cx, double cy, double r) {
  const Grid2& g = f.grid();
  if (!(r > 0.0) || !std::isfinite(cx) || !std::isfinite(cy)) {
    throw Error(ErrorCode::BadParams, "ball_average: radius must be positive, centre finite");
  }
  const double slack = 1e-12 * (1.0 + r);
  if (cx - r < g.x(f.ilo()) - slack || cx + r > g.x(f.ihi()) + slack || cy - r < g.y(f.jlo()) - slack ||
      cy + r > g.y(f.jhi()) + slack) {
    std::ostringstream os;
    os.precision(17);
    os << "ball (" << cx << ", " << cy << "; " << r << ") leaves the valid region of " << g.describe();
    throw Error(ErrorCode::BallOutOfBounds, os.str());
  }
  const double r2 = r * r * (1.0 + 1e-12);
  double sum = 0.0;
  std::size_t count = 0;
  for (int j = f.jlo(); j <= f.jhi(); ++j) {
    const double dy = g.y(j) - cy;
    for (int i = f.ilo(); i <= f.ihi(); ++i) {
      const double dx = g.x(i) - cx;
      if (dx * dx + dy * dy <= r2) {
        sum += f(i, j);
        ++count;
      }
    }
  }
  if (count == 0) throw Error(ErrorCode::BallOutOfBounds, "ball contains no grid node");
  return sum / static_cast<double>(count);
}

Extrema extrema(const Field2& f) {
  const Grid2& g = f.grid();
  Extrema e;
  bool seen_in = false;
  bool seen_bd = false;
  auto put = [&](Extremum& slot, double v, int i, int j) { slot = {v, i, j, g.x(i), g.y(j)}; };
  // i-major traversal keeps the first hit at the smallest (i, j)
  for (int i = f.ilo(); i <= f.ihi(); ++i) {
    for (int j = f.jlo(); j <= f.jhi(); ++j) {
      const double v = f(i, j);
      const bool ring = i == f.ilo() || i == f.ihi() || j == f.jlo() || j == f.jhi();
      if (ring) {
        if (!seen_bd || v > e.boundaryMax.value) put(e.boundaryMax, v, i, j);
        if (!seen_bd || v < e.boundaryMin.value) put(e.boundaryMin, v, i, j);
        seen_bd = true;
      } else {
        if (!seen_in || v > e.interiorMax.value) put(e.interiorMax, v, i, j);
        if (!seen_in || v < e.interiorMin.value) put(e.interiorMin, v, i, j);
        seen_in = true;
      }
    }
  }
  return e;
}

}  // namespace pfunc
