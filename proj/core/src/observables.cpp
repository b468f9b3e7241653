#include "qss/observables.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "qss/error.hpp"
#include "qss/log.hpp"
#include "qss/transform.hpp"

namespace qss {

namespace {

// Per-axis integrals of |d_j u|^2 and |d_j v|^2, plus the spectra they came from.
struct Gradients {
  SpectrumPair spec;
  std::vector<double> u;
  std::vector<double> v;
};

Gradients gradients(const FieldPair& fields, const Grid& grid) {
  Gradients g{forward_transform(fields, grid), {}, {}};
  g.u = gradient_norms(g.spec.u_hat, grid);
  g.v = gradient_norms(g.spec.v_hat, grid);
  return g;
}

// sum_j w_j a_j with w_j = 1 on transverse axes and w on the last axis.
double weighted(const std::vector<double>& a, double w) {
  double s = 0.0;
  for (std::size_t j = 0; j + 1 < a.size(); ++j) s += a[j];
  return s + w * a.back();
}

double transverse(const std::vector<double>& a) { return weighted(a, 0.0); }

double total(const std::vector<double>& a) { return weighted(a, 1.0); }

double v_squared(const FieldPair& f, const Grid& grid) {
  double s = 0.0;
  for (const auto& z : f.v) s += std::norm(z);
  return s * grid.cell_volume();
}

double weighted_mass(const FieldPair& f, const Grid& grid, const RealArray& weight) {
  double s = 0.0;
  for (std::size_t i = 0; i < weight.size(); ++i) {
    s += weight[i] * (std::norm(f.u[i]) + 4.0 * std::norm(f.v[i]));
  }
  return 0.5 * s * grid.cell_volume();
}

Energy energy_from(const Gradients& g, const FieldPair& f, const Grid& grid,
                   const PhysicsParams& p) {
  Energy e;
  e.parts.gamma1 = 0.5 * weighted(g.u, p.gamma1);
  e.parts.gamma2 = 0.5 * weighted(g.v, p.gamma2);
  e.parts.beta = 0.5 * p.beta * v_squared(f, grid);
  e.parts.re = 0.5 * interaction(f, grid);
  e.total = e.parts.gamma1 + e.parts.gamma2 + e.parts.beta - e.parts.re;
  return e;
}

VirialFirst virial_first_from(const SpectrumPair& spec, const FieldPair& f, const Grid& grid,
                              const PhysicsParams& p) {
  Fft fft(grid);
  const int n = grid.dim();
  double full = 0.0;
  double perp = 0.0;
  for (int j = 0; j < n; ++j) {
    ComplexArray du = spectral_derivative(spec.u_hat, grid, j);
    ComplexArray dv = spectral_derivative(spec.v_hat, grid, j);
    fft.inverse(du);
    fft.inverse(dv);
    const std::size_t stride = grid.stride(j);
    const int N = grid.points(j);
    const auto& x = grid.coords(j);
    double su = 0.0;
    double sv = 0.0;
    for (std::size_t idx = 0; idx < f.u.size(); ++idx) {
      const double xj = x[(idx / stride) % N];
      su += xj * (std::conj(f.u[idx]) * du[idx]).imag();
      sv += xj * (std::conj(f.v[idx]) * dv[idx]).imag();
    }
    if (j == n - 1) {
      full += p.gamma1 * su + 2.0 * p.gamma2 * sv;
    } else {
      full += su + 2.0 * sv;
      perp += su + 2.0 * sv;
    }
  }
  const double h = grid.cell_volume();
  return {2.0 * full * h, 2.0 * perp * h};
}

VirialSecond virial_second_from(const Gradients& g, const FieldPair& f, const Grid& grid,
                                const PhysicsParams& p, double E0) {
  VirialSecond out;
  const int d = grid.transverse_dim();
  const double J = interaction(f, grid);
  if (p.gamma1 == p.gamma2) {
    // The variance weight x^gamma and the kinetic weight gamma each carry one
    // factor of gamma on the last axis.
    const double gamma = p.gamma1;
    const double g2 = gamma * gamma;
    out.d2V = 4.0 * (weighted(g.u, g2) + weighted(g.v, g2)) - (d + gamma) * J;
    if (d == 3 && gamma == 1.0) out.d2V_reduced = 8.0 * E0 - 4.0 * p.beta * v_squared(f, grid);
  }
  out.d2V_perp = 4.0 * (transverse(g.u) + transverse(g.v)) - d * J;
  if (d == 4) {
    out.d2V_perp_reduced = 8.0 * E0 - 4.0 * p.beta * v_squared(f, grid) -
                           4.0 * (p.gamma1 * g.u.back() + p.gamma2 * g.v.back());
  }
  return out;
}

void warn_if_not_decayed(const FieldPair& f, const Grid& grid) {
  const double frac = boundary_mass_fraction(f, grid);
  if (frac > boundary_mass_tolerance) {
    std::ostringstream msg;
    msg << "boundary layer carries " << frac
        << " of the mass; variance identities are unreliable on this box";
    warn(msg.str());
  }
}

}  // namespace

double mass(const FieldPair& fields, const Grid& grid) {
  require_shape(fields, grid);
  double s = 0.0;
  for (std::size_t i = 0; i < fields.u.size(); ++i) {
    s += std::norm(fields.u[i]) + 4.0 * std::norm(fields.v[i]);
  }
  return s * grid.cell_volume();
}

double interaction(const FieldPair& fields, const Grid& grid) {
  require_shape(fields, grid);
  double s = 0.0;
  for (std::size_t i = 0; i < fields.u.size(); ++i) {
    const cplx ub = std::conj(fields.u[i]);
    s += (ub * ub * fields.v[i]).real();
  }
  return s * grid.cell_volume();
}

Energy energy(const FieldPair& fields, const Grid& grid, const PhysicsParams& params) {
  return energy_from(gradients(fields, grid), fields, grid, params);
}

KJFunctionals kj_functionals(const FieldPair& fields, const Grid& grid,
                             const PhysicsParams& params) {
  const Gradients g = gradients(fields, grid);
  const Energy e = energy_from(g, fields, grid, params);
  const double M = mass(fields, grid);
  KJFunctionals out;
  out.K = 2.0 * (e.parts.gamma1 + e.parts.gamma2 + e.parts.beta);
  out.J = 2.0 * e.parts.re;
  out.I = out.K + params.omega * M;
  out.S = e.total + params.omega * M;
  return out;
}

double gradient_functional(const FieldPair& fields, const Grid& grid,
                           const PhysicsParams& params) {
  const Gradients g = gradients(fields, grid);
  return weighted(g.u, params.gamma1) + weighted(g.v, params.gamma2);
}

double gn_quotient(const FieldPair& fields, const Grid& grid, const PhysicsParams& params) {
  const double J = interaction(fields, grid);
  if (!(J > 0.0)) fail(ErrorKind::invalid_argument, "GN quotient needs J > 0");
  const double n = grid.dim();
  const double M = mass(fields, grid);
  const double K = gradient_functional(fields, grid, params);
  return std::pow(M, 1.5 - n / 4.0) * std::pow(K, n / 4.0) / J;
}

double variance(const FieldPair& fields, const Grid& grid) {
  require_shape(fields, grid);
  warn_if_not_decayed(fields, grid);
  return weighted_mass(fields, grid, radius_squared(grid, true));
}

double transverse_variance(const FieldPair& fields, const Grid& grid) {
  require_shape(fields, grid);
  warn_if_not_decayed(fields, grid);
  return weighted_mass(fields, grid, radius_squared(grid, false));
}

double boundary_mass_fraction(const FieldPair& fields, const Grid& grid) {
  require_shape(fields, grid);
  double edge = 0.0;
  double all = 0.0;
  for (std::size_t idx = 0; idx < fields.u.size(); ++idx) {
    const double m = std::norm(fields.u[idx]) + 4.0 * std::norm(fields.v[idx]);
    all += m;
    for (int j = 0; j < grid.dim(); ++j) {
      const int i = static_cast<int>((idx / grid.stride(j)) % grid.points(j));
      if (i == 0 || i == grid.points(j) - 1) {
        edge += m;
        break;
      }
    }
  }
  return all > 0.0 ? edge / all : 0.0;
}

VirialFirst virial_first_derivative(const FieldPair& fields, const Grid& grid,
                                    const PhysicsParams& params) {
  return virial_first_from(forward_transform(fields, grid), fields, grid, params);
}

VirialSecond virial_second_formula(const FieldPair& fields, const Grid& grid,
                                   const PhysicsParams& params, double E0) {
  return virial_second_from(gradients(fields, grid), fields, grid, params, E0);
}

ObservableRecord observe(const FieldPair& fields, const Grid& grid, const PhysicsParams& params,
                         double t) {
  const Gradients g = gradients(fields, grid);
  const Energy e = energy_from(g, fields, grid, params);
  ObservableRecord r;
  r.t = t;
  r.M = mass(fields, grid);
  r.E = e.total;
  r.E_parts = e.parts;
  r.K = 2.0 * (e.parts.gamma1 + e.parts.gamma2 + e.parts.beta);
  r.J = 2.0 * e.parts.re;
  r.V = weighted_mass(fields, grid, radius_squared(grid, true));
  r.V_perp = weighted_mass(fields, grid, radius_squared(grid, false));
  const VirialFirst first = virial_first_from(g.spec, fields, grid, params);
  r.dV = first.dV;
  r.dV_perp = first.dV_perp;
  const VirialSecond second = virial_second_from(g, fields, grid, params, e.total);
  r.d2V = second.d2V;
  r.d2V_perp = second.d2V_perp;
  r.grad_u_sq = total(g.u);
  r.grad_v_sq = total(g.v);
  r.sup_u = sup_norm(fields.u);
  r.sup_v = sup_norm(fields.v);
  return r;
}

std::string csv_header() {
  return "t,M,E,E_g1,E_g2,E_beta,E_Re,K,J,V,V_perp,dV,dV_perp,d2V,d2V_perp,grad_u_sq,grad_v_sq";
}

std::string to_csv_row(const ObservableRecord& r) {
  std::string out;
  char buf[32];
  auto put = [&](double x) {
    if (!out.empty()) out += ',';
    std::snprintf(buf, sizeof buf, "%.17g", x);
    out += buf;
  };
  put(r.t);
  put(r.M);
  put(r.E);
  put(r.E_parts.gamma1);
  put(r.E_parts.gamma2);
  put(r.E_parts.beta);
  put(r.E_parts.re);
  put(r.K);
  put(r.J);
  put(r.V);
  put(r.V_perp);
  put(r.dV);
  put(r.dV_perp);
  if (r.d2V) {
    put(*r.d2V);
  } else {
    out += ',';
  }
  put(r.d2V_perp);
  put(r.grad_u_sq);
  put(r.grad_v_sq);
  return out;
}

}  // namespace qss
