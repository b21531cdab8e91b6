#include "pfunc/solver.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "pfunc/banded.hpp"
#include "pfunc/error.hpp"

namespace pfunc {

namespace {

struct Tap {
  int i;
  int j;
  double c;
};

// Unknowns are interior nodes, numbered row-major on the (nx-2) x (ny-2) block.
class Layout {
 public:
  explicit Layout(const Grid2& g) : g_(g), mx_(g.nx - 2), my_(g.ny - 2) {}
  [[nodiscard]] std::size_t unknowns() const { return static_cast<std::size_t>(mx_) * static_cast<std::size_t>(my_); }
  [[nodiscard]] bool interior(int i, int j) const { return i > 0 && j > 0 && i < g_.nx - 1 && j < g_.ny - 1; }
  [[nodiscard]] std::size_t unknown(int i, int j) const {
    return static_cast<std::size_t>(j - 1) * static_cast<std::size_t>(mx_) + static_cast<std::size_t>(i - 1);
  }
  [[nodiscard]] std::size_t band(int reach) const { return static_cast<std::size_t>(reach * mx_); }
  [[nodiscard]] const Grid2& grid() const { return g_; }

 private:
  Grid2 g_;
  int mx_;
  int my_;
};

// First-derivative taps matching grid::gradient on a margin-0 field.
std::array<Tap, 3> dx_taps(const Grid2& g, int i, int j, int& count) {
  const double c = 1.0 / (2.0 * g.hx);
  count = i == 0 || i == g.nx - 1 ? 3 : 2;
  if (i == 0) return {Tap{0, j, -3.0 * c}, Tap{1, j, 4.0 * c}, Tap{2, j, -c}};
  if (i == g.nx - 1) return {Tap{i, j, 3.0 * c}, Tap{i - 1, j, -4.0 * c}, Tap{i - 2, j, c}};
  return {Tap{i + 1, j, c}, Tap{i - 1, j, -c}, Tap{i, j, 0.0}};
}

std::array<Tap, 3> dy_taps(const Grid2& g, int i, int j, int& count) {
  const double c = 1.0 / (2.0 * g.hy);
  count = j == 0 || j == g.ny - 1 ? 3 : 2;
  if (j == 0) return {Tap{i, 0, -3.0 * c}, Tap{i, 1, 4.0 * c}, Tap{i, 2, -c}};
  if (j == g.ny - 1) return {Tap{i, j, 3.0 * c}, Tap{i, j - 1, -4.0 * c}, Tap{i, j - 2, c}};
  return {Tap{i, j + 1, c}, Tap{i, j - 1, -c}, Tap{i, j, 0.0}};
}

double apply(const std::array<Tap, 3>& taps, int count, const Grid2& g, const std::vector<double>& u) {
  double acc = 0.0;
  for (int k = 0; k < count; ++k) acc += taps[k].c * u[g.index(taps[k].i, taps[k].j)];
  return acc;
}

double inf_norm(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) {
    if (!std::isfinite(x)) return std::numeric_limits<double>::infinity();
    m = std::max(m, std::abs(x));
  }
  return m;
}

struct System {
  std::size_t reach = 1;
  std::function<void(const std::vector<double>&, std::vector<double>&)> residual;
  std::function<void(const std::vector<double>&, BandLU&)> jacobian;
  std::function<void(const std::vector<double>&)> monitor;
};

std::vector<double> boundary_filled(const Grid2& g, const BoundaryFn& bc, const std::vector<double>& interior_src) {
  std::vector<double> full = interior_src;
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      if (i == 0 || j == 0 || i == g.nx - 1 || j == g.ny - 1) {
        const double v = bc(g.x(i), g.y(j));
        if (!std::isfinite(v)) {
          std::ostringstream os;
          os.precision(17);
          os << "boundary value not finite at (" << g.x(i) << ", " << g.y(j) << ")";
          throw Error(ErrorCode::NonFinite, os.str());
        }
        full[g.index(i, j)] = v;
      }
    }
  }
  return full;
}

SolveResult newton(const Layout& lay, const System& sys, std::vector<double> full, const NewtonOpts& opts) {
  if (!(opts.residualTol > 0.0) || opts.maxIter < 1 || opts.dampingHalvings < 0) {
    throw Error(ErrorCode::BadParams, "invalid Newton options");
  }
  const Grid2& g = lay.grid();
  const std::size_t n = lay.unknowns();
  BandLU jac(n, lay.band(static_cast<int>(sys.reach)), lay.band(static_cast<int>(sys.reach)));
  std::vector<double> res(n);
  std::vector<double> delta(n);
  std::vector<double> trial_res(n);

  SolveResult out;
  if (sys.monitor) sys.monitor(full);
  sys.residual(full, res);
  double norm = inf_norm(res);
  out.residualHistory.push_back(norm);
  if (!std::isfinite(norm)) throw Error(ErrorCode::NonFinite, "residual of the initial guess is not finite");

  while (norm > opts.residualTol) {
    if (out.iterations >= opts.maxIter) {
      std::ostringstream os;
      os.precision(17);
      os << "iter=" << out.iterations << " residual=" << norm;
      throw Error(ErrorCode::NoConvergence, os.str());
    }
    jac.clear();
    sys.jacobian(full, jac);
    jac.factor();
    for (std::size_t k = 0; k < n; ++k) delta[k] = -res[k];
    jac.solve(delta);

    double lambda = 1.0;
    bool accepted = false;
    std::vector<double> trial = full;
    for (int halving = 0; halving <= opts.dampingHalvings && !accepted; ++halving, lambda *= 0.5) {
      for (int j = 1; j < g.ny - 1; ++j) {
        for (int i = 1; i < g.nx - 1; ++i) {
          trial[g.index(i, j)] = full[g.index(i, j)] + lambda * delta[lay.unknown(i, j)];
        }
      }
      double trial_norm = std::numeric_limits<double>::infinity();
      try {
        sys.residual(trial, trial_res);
        trial_norm = inf_norm(trial_res);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::DomainError && e.code() != ErrorCode::NonFinite) throw;
      }
      if (trial_norm < norm) {
        full.swap(trial);
        res.swap(trial_res);
        norm = trial_norm;
        accepted = true;
      }
    }
    ++out.iterations;
    if (!accepted) {
      std::ostringstream os;
      os.precision(17);
      os << "iter=" << out.iterations << " residual=" << norm << " (damping exhausted)";
      throw Error(ErrorCode::NoConvergence, os.str());
    }
    out.residualHistory.push_back(norm);
    if (sys.monitor) sys.monitor(full);
  }
  out.u = Field2(g, std::move(full), 0);
  return out;
}

void recheck(SolveResult& r, const Field2& residual, const NewtonOpts& opts) {
  const Grid2& g = r.u.grid();
  double worst = 0.0;
  for (int j = residual.jlo(); j <= residual.jhi(); ++j) {
    for (int i = residual.ilo(); i <= residual.ihi(); ++i) worst = std::max(worst, std::abs(residual(i, j)));
  }
  r.recheckResidual = worst;
  double umax = 0.0;
  for (double v : r.u.values()) umax = std::max(umax, std::abs(v));
  const double rounding =
      64.0 * std::numeric_limits<double>::epsilon() * (1.0 + umax) * (4.0 / (g.hx * g.hx) + 4.0 / (g.hy * g.hy));
  if (!(worst <= opts.residualTol + rounding)) {
    std::ostringstream os;
    os.precision(17);
    os << "independent residual " << worst << " exceeds tolerance " << opts.residualTol;
    throw Error(ErrorCode::NoConvergence, os.str());
  }
}

System semilinear_system(const Fn2& F, const Grid2& g, const Layout& lay) {
  const double ihx2 = 1.0 / (g.hx * g.hx);
  const double ihy2 = 1.0 / (g.hy * g.hy);
  System sys;
  sys.reach = 1;
  sys.residual = [=, &F, &lay](const std::vector<double>& u, std::vector<double>& res) {
    for (int j = 1; j < g.ny - 1; ++j) {
      for (int i = 1; i < g.nx - 1; ++i) {
        const double c = u[g.index(i, j)];
        const double e = u[g.index(i + 1, j)];
        const double w = u[g.index(i - 1, j)];
        const double nn = u[g.index(i, j + 1)];
        const double s = u[g.index(i, j - 1)];
        const double ux = (e - w) / (2.0 * g.hx);
        const double uy = (nn - s) / (2.0 * g.hy);
        res[lay.unknown(i, j)] = (e - 2.0 * c + w) * ihx2 + (nn - 2.0 * c + s) * ihy2 - F(c, ux * ux + uy * uy);
      }
    }
  };
  sys.jacobian = [=, &F, &lay](const std::vector<double>& u, BandLU& J) {
    for (int j = 1; j < g.ny - 1; ++j) {
      for (int i = 1; i < g.nx - 1; ++i) {
        const double c = u[g.index(i, j)];
        const double ux = (u[g.index(i + 1, j)] - u[g.index(i - 1, j)]) / (2.0 * g.hx);
        const double uy = (u[g.index(i, j + 1)] - u[g.index(i, j - 1)]) / (2.0 * g.hy);
        const double t = ux * ux + uy * uy;
        const double fs = F.ps(c, t);
        const double ft = F.pt(c, t);
        const std::size_t row = lay.unknown(i, j);
        J.add(row, row, -2.0 * ihx2 - 2.0 * ihy2 - fs);
        const std::array<Tap, 4> nb{Tap{i + 1, j, ihx2 - ft * ux / g.hx}, Tap{i - 1, j, ihx2 + ft * ux / g.hx},
                                    Tap{i, j + 1, ihy2 - ft * uy / g.hy}, Tap{i, j - 1, ihy2 + ft * uy / g.hy}};
        for (const Tap& tp : nb) {
          if (lay.interior(tp.i, tp.j)) J.add(row, lay.unknown(tp.i, tp.j), tp.c);
        }
      }
    }
  };
  return sys;
}

std::vector<double> initial_guess(const Grid2& g, const BoundaryFn& bc, const NewtonOpts& opts) {
  switch (opts.initialGuess) {
    case InitialGuess::ZeroField:
      return boundary_filled(g, bc, std::vector<double>(g.size(), 0.0));
    case InitialGuess::GivenField:
      if (!opts.given || !(opts.given->grid() == g)) {
        throw Error(ErrorCode::BadParams, "GivenField initial guess missing or on another grid");
      }
      return boundary_filled(g, bc, opts.given->values());
    case InitialGuess::BoundaryHarmonicLift: {
      const Layout lay(g);
      static const Fn2 zero("0", [](double, double) { return 0.0; },
                            Fn2::Derivatives{[](double, double) { return 0.0; }, [](double, double) { return 0.0; },
                                             [](double, double) { return 0.0; }, [](double, double) { return 0.0; },
                                             [](double, double) { return 0.0; }});
      NewtonOpts lin;
      lin.residualTol = std::min(opts.residualTol, 1e-10);
      const auto full = boundary_filled(g, bc, std::vector<double>(g.size(), 0.0));
      return newton(lay, semilinear_system(zero, g, lay), full, lin).u.values();
    }
  }
  throw Error(ErrorCode::BadParams, "unknown initial guess");
}

}  // namespace

SolveResult solve_gradient_semilinear(const Fn2& F, const Grid2& grid, const BoundaryFn& bc, const NewtonOpts& opts) {
  const Layout lay(grid);
  auto full = initial_guess(grid, bc, opts);
  SolveResult r = newton(lay, semilinear_system(F, grid, lay), std::move(full), opts);
  recheck(r, residual_gradient_semilinear(F, r.u), opts);
  return r;
}

Field2 residual_gradient_semilinear(const Fn2& F, const Field2& u) {
  const Field2 lap = laplacian(u);
  const Gradient gr = gradient(u);
  return combine({&lap, &u, &gr.x, &gr.y}, [&F](std::span<const double> a) {
    return a[0] - F(a[1], a[2] * a[2] + a[3] * a[3]);
  });
}

SolveResult solve_divergence_form(const DivergenceForm& eq, const Grid2& g, const BoundaryFn& bc,
                                  const NewtonOpts& opts) {
  const Layout lay(g);
  const Fn1& Phi = eq.Phi;
  const Fn1& rho = eq.rho;
  const Fn1& Fp = eq.Fpot;
  const double ihx2 = 1.0 / (g.hx * g.hx);
  const double ihy2 = 1.0 / (g.hy * g.hy);

  // Nodal derivative and |grad u|^2 fields over the whole grid.
  struct Nodal {
    std::vector<double> ux, uy, gsq;
  };
  auto nodal = [g](const std::vector<double>& u) {
    Nodal n{std::vector<double>(g.size()), std::vector<double>(g.size()), std::vector<double>(g.size())};
    for (int j = 0; j < g.ny; ++j) {
      for (int i = 0; i < g.nx; ++i) {
        int cx = 0;
        int cy = 0;
        const auto tx = dx_taps(g, i, j, cx);
        const auto ty = dy_taps(g, i, j, cy);
        const std::size_t q = g.index(i, j);
        n.ux[q] = apply(tx, cx, g, u);
        n.uy[q] = apply(ty, cy, g, u);
        n.gsq[q] = n.ux[q] * n.ux[q] + n.uy[q] * n.uy[q];
      }
    }
    return n;
  };

  System sys;
  sys.reach = 2;
  sys.residual = [&, nodal](const std::vector<double>& u, std::vector<double>& res) {
    const Nodal n = nodal(u);
    for (int j = 1; j < g.ny - 1; ++j) {
      for (int i = 1; i < g.nx - 1; ++i) {
        const std::size_t p = g.index(i, j);
        const std::size_t e = g.index(i + 1, j), w = g.index(i - 1, j), no = g.index(i, j + 1), so = g.index(i, j - 1);
        const double ae = Phi.d1(0.5 * (n.gsq[p] + n.gsq[e]));
        const double aw = Phi.d1(0.5 * (n.gsq[p] + n.gsq[w]));
        const double an = Phi.d1(0.5 * (n.gsq[p] + n.gsq[no]));
        const double as = Phi.d1(0.5 * (n.gsq[p] + n.gsq[so]));
        const double div = (ae * (u[e] - u[p]) - aw * (u[p] - u[w])) * ihx2 +
                           (an * (u[no] - u[p]) - as * (u[p] - u[so])) * ihy2;
        res[lay.unknown(i, j)] = div - rho(n.gsq[p]) * Fp.d1(u[p]);
      }
    }
  };
  sys.jacobian = [&, nodal](const std::vector<double>& u, BandLU& J) {
    const Nodal n = nodal(u);
    for (int j = 1; j < g.ny - 1; ++j) {
      for (int i = 1; i < g.nx - 1; ++i) {
        const std::size_t row = lay.unknown(i, j);
        const std::size_t p = g.index(i, j);
        auto add = [&](int a, int b, double v) {
          if (lay.interior(a, b)) J.add(row, lay.unknown(a, b), v);
        };
        // d g_q / d u_m contributions scaled by `factor`
        auto add_dg = [&](int qi, int qj, double factor) {
          if (factor == 0.0) return;
          const std::size_t q = g.index(qi, qj);
          int cx = 0;
          int cy = 0;
          const auto tx = dx_taps(g, qi, qj, cx);
          const auto ty = dy_taps(g, qi, qj, cy);
          for (int k = 0; k < cx; ++k) add(tx[k].i, tx[k].j, factor * 2.0 * n.ux[q] * tx[k].c);
          for (int k = 0; k < cy; ++k) add(ty[k].i, ty[k].j, factor * 2.0 * n.uy[q] * ty[k].c);
        };
        struct Face {
          int i, j;
          double inv2;
        };
        const std::array<Face, 4> faces{Face{i + 1, j, ihx2}, Face{i - 1, j, ihx2}, Face{i, j + 1, ihy2},
                                        Face{i, j - 1, ihy2}};
        double diag = 0.0;
        for (const Face& f : faces) {
          const std::size_t q = g.index(f.i, f.j);
          const double gm = 0.5 * (n.gsq[p] + n.gsq[q]);
          const double a = Phi.d1(gm);
          const double da = Phi.d2(gm);
          diag -= a * f.inv2;
          add(f.i, f.j, a * f.inv2);
          const double jump = (u[q] - u[p]) * f.inv2;
          add_dg(i, j, 0.5 * da * jump);
          add_dg(f.i, f.j, 0.5 * da * jump);
        }
        J.add(row, row, diag - rho(n.gsq[p]) * Fp.d2(u[p]));
        add_dg(i, j, -rho.d1(n.gsq[p]) * Fp.d1(u[p]));
      }
    }
  };
  sys.monitor = [&, nodal](const std::vector<double>& u) {
    const Nodal n = nodal(u);
    for (int j = 0; j < g.ny; ++j) {
      for (int i = 0; i < g.nx; ++i) {
        const double t = n.gsq[g.index(i, j)];
        const double a = Phi.d1(t);
        const double e = a + 2.0 * t * Phi.d2(t);
        if (!(a > 0.0) || !(e > 0.0)) {
          std::ostringstream os;
          os.precision(17);
          os << "Phi' = " << a << ", Phi' + 2t Phi'' = " << e << " at (" << g.x(i) << ", " << g.y(j)
             << "), |grad u|^2 = " << t;
          throw Error(ErrorCode::EllipticityLost, os.str());
        }
      }
    }
  };

  auto full = initial_guess(g, bc, opts);
  SolveResult r = newton(lay, sys, std::move(full), opts);
  recheck(r, residual_divergence_form(eq, r.u), opts);
  return r;
}

Field2 residual_divergence_form(const DivergenceForm& eq, const Field2& u) {
  const Grid2& g = u.grid();
  const Gradient gr = gradient(u);
  const Field2 gsq = combine({&gr.x, &gr.y}, [](std::span<const double> a) { return a[0] * a[0] + a[1] * a[1]; });
  auto flux = [&](int i0, int j0, int i1, int j1, double h) {
    return eq.Phi.d1(0.5 * (gsq(i0, j0) + gsq(i1, j1))) * (u(i1, j1) - u(i0, j0)) / h;
  };
  return Field2::generate(g, u.margin() + 1, [&](int i, int j) {
    const double div = (flux(i, j, i + 1, j, g.hx) - flux(i - 1, j, i, j, g.hx)) / g.hx +
                       (flux(i, j, i, j + 1, g.hy) - flux(i, j - 1, i, j, g.hy)) / g.hy;
    return div - eq.rho(gsq(i, j)) * eq.Fpot.d1(u(i, j));
  });
}

double profile_acceleration(const EquationSpec& eq, double u, double v) {
  if (const auto* s = std::get_if<Semilinear>(&eq.form)) return s->f(u);
  if (const auto* gs = std::get_if<GradientSemilinear>(&eq.form)) return gs->F(u, v * v);
  if (const auto* d = std::get_if<DivergenceForm>(&eq.form)) {
    const double t = v * v;
    const double den = d->Phi.d1(t) + 2.0 * t * d->Phi.d2(t);
    if (!(std::abs(den) > 1e-12)) {
      std::ostringstream os;
      os.precision(17);
      os << "Phi' + 2t Phi'' = " << den << " at u = " << u << ", u' = " << v;
      throw Error(ErrorCode::DegenerateEllipticity, os.str());
    }
    return d->rho(t) * d->Fpot.d1(u) / den;
  }
  throw Error(ErrorCode::BadParams, "equation '" + eq.id + "' has no one-dimensional reduction");
}

Profile1 integrate_profile(const EquationSpec& eq, double u0, double v0, double h, Interval span, double x0) {
  if (!(h > 0.0) || !span.bounded() || !span.contains(x0)) {
    throw Error(ErrorCode::BadParams, "profile needs h > 0 and a bounded span containing x0");
  }
  const long fwd = std::lround((span.hi - x0) / h);
  const long bwd = std::lround((x0 - span.lo) / h);
  if (fwd + bwd < 10) throw Error(ErrorCode::BadParams, "profile needs at least 10 steps");

  const std::size_t n = static_cast<std::size_t>(fwd + bwd + 1);
  Profile1 p;
  p.h = h;
  p.xs.resize(n);
  p.u.resize(n);
  p.du.resize(n);
  for (std::size_t k = 0; k < n; ++k) p.xs[k] = x0 + (static_cast<double>(k) - static_cast<double>(bwd)) * h;

  auto acc = [&eq](double u, double v) { return profile_acceleration(eq, u, v); };
  auto run = [&](long steps, double step, int dir) {
    double u = u0;
    double v = v0;
    for (long k = 1; k <= steps; ++k) {
      const double k1u = v, k1v = acc(u, v);
      const double k2u = v + 0.5 * step * k1v, k2v = acc(u + 0.5 * step * k1u, v + 0.5 * step * k1v);
      const double k3u = v + 0.5 * step * k2v, k3v = acc(u + 0.5 * step * k2u, v + 0.5 * step * k2v);
      const double k4u = v + step * k3v, k4v = acc(u + step * k3u, v + step * k3v);
      u += step / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
      v += step / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
      if (!std::isfinite(u) || !std::isfinite(v) || std::abs(u) > 1e6 || std::abs(v) > 1e6) {
        std::ostringstream os;
        os.precision(17);
        os << "|u| or |u'| above 1e6 near x = " << x0 + dir * k * h << " (u = " << u << ", u' = " << v << ")";
        throw Error(ErrorCode::BlowUp, os.str());
      }
      const std::size_t idx = static_cast<std::size_t>(bwd + dir * k);
      p.u[idx] = u;
      p.du[idx] = v;
    }
  };
  p.u[static_cast<std::size_t>(bwd)] = u0;
  p.du[static_cast<std::size_t>(bwd)] = v0;
  run(fwd, h, +1);
  run(bwd, -h, -1);
  return p;
}

std::pair<double, double> kink(double x) {
  const double z = x / std::sqrt(2.0);
  const double c = std::cosh(z);
  return {std::tanh(z), 1.0 / (std::sqrt(2.0) * c * c)};
}

}  // namespace pfunc
