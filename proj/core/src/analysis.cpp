#include "qss/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "qss/error.hpp"
#include "qss/transform.hpp"

namespace qss {

const char* to_string(BlowupBranch branch) noexcept {
  switch (branch) {
    case BlowupBranch::none: return "none";
    case BlowupBranch::negative_energy_beta_positive: return "negative_energy_beta_positive";
    case BlowupBranch::eight_E_below_betaM: return "eight_E_below_betaM";
  }
  return "unknown";
}

BlowupVerdict blowup_condition(double E0, double M0, double beta) {
  if (!(M0 >= 0.0)) fail(ErrorKind::invalid_argument, "blowup_condition: mass must be nonnegative");
  BlowupVerdict v;
  if (beta > 0.0) {
    v.margin = -E0;
    if (v.margin > 0.0) v.branch = BlowupBranch::negative_energy_beta_positive;
  } else {
    v.margin = beta * M0 - 8.0 * E0;
    if (v.margin > 0.0) v.branch = BlowupBranch::eight_E_below_betaM;
  }
  v.predicted = v.branch != BlowupBranch::none;
  return v;
}

SupercriticalData make_supercritical_data(const ComplexArray& profile, const Grid& grid,
                                          const PhysicsParams& params) {
  validate(params);
  if (profile.size() != grid.size()) fail(ErrorKind::shape_mismatch, "profile has wrong size");
  bool nonzero = false;
  for (const auto& z : profile) {
    if (z.imag() != 0.0 || !(z.real() >= 0.0) || !std::isfinite(z.real())) {
      fail(ErrorKind::invalid_argument, "supercritical data needs a real nonnegative profile");
    }
    nonzero = nonzero || z.real() > 0.0;
  }
  if (!nonzero) fail(ErrorKind::invalid_argument, "supercritical data needs a nonzero profile");

  // Along (lambda U, lambda U): E = lambda^2 e2 - lambda^3 e3, M = lambda^2 m.
  const FieldPair base{profile, profile};
  const Energy e = energy(base, grid, params);
  const double e2 = e.parts.gamma1 + e.parts.gamma2 + e.parts.beta;
  const double e3 = e.parts.re;
  const double m = mass(base, grid);
  auto fires = [&](double lambda) {
    const double l2 = lambda * lambda;
    return blowup_condition(l2 * e2 - l2 * lambda * e3, l2 * m, params.beta).predicted;
  };

  constexpr int cap = 200;
  double lo = 1.0;
  double hi = 1.0;
  int steps = 0;
  if (fires(1.0)) {
    while (fires(lo)) {
      hi = lo;
      lo *= 0.5;
      if (++steps > cap) fail(ErrorKind::not_converged, "supercritical search: no lower bracket");
    }
  } else {
    while (!fires(hi)) {
      lo = hi;
      hi *= 2.0;
      if (++steps > cap) fail(ErrorKind::not_converged, "supercritical search: cap exceeded");
    }
  }
  while ((hi - lo) > 1e-3 * hi) {
    const double mid = 0.5 * (lo + hi);
    (fires(mid) ? hi : lo) = mid;
  }
  return {hi, scaled(base, hi)};
}

double gamma_constraint(double k, double alpha) {
  if (!(k > 0.0)) fail(ErrorKind::invalid_argument, "gamma_constraint: k must be positive");
  const double g2 = (k + 1.0 - alpha * alpha) / k;
  if (g2 < 0.0) fail(ErrorKind::invalid_argument, "gamma_constraint: alpha^2 exceeds k + 1");
  return std::sqrt(g2);
}

GammaCurveBase make_gamma_curve_base(const FieldPair& gs, const Grid& grid) {
  const SpectrumPair spec = forward_transform(gs, grid);
  auto sum = [](const std::vector<double>& a) {
    double s = 0.0;
    for (double x : a) s += x;
    return s;
  };
  GammaCurveBase b;
  b.gradP2 = sum(gradient_norms(spec.u_hat, grid));
  b.gradQ2 = sum(gradient_norms(spec.v_hat, grid));
  double p2 = 0.0;
  double q2 = 0.0;
  for (std::size_t i = 0; i < gs.u.size(); ++i) {
    p2 += std::norm(gs.u[i]);
    q2 += std::norm(gs.v[i]);
  }
  b.P2 = p2 * grid.cell_volume();
  b.Q2 = q2 * grid.cell_volume();
  b.P2Q = interaction(gs, grid);
  if (!(b.Q2 > 0.0)) fail(ErrorKind::invalid_argument, "gamma curve needs a nonzero Q");
  b.k = b.P2 / (4.0 * b.Q2);
  b.n = grid.dim();
  return b;
}

double gamma_curve_energy(const GammaCurveBase& b, double beta, double alpha, double lambda) {
  const double g = gamma_constraint(b.k, alpha);
  const double g2 = g * g;
  const double l2 = lambda * lambda;
  return 0.5 * (g2 * l2 * b.gradP2 + alpha * alpha * l2 * b.gradQ2 + beta * alpha * alpha * b.Q2 -
                g2 * alpha * std::pow(lambda, 0.5 * b.n) * b.P2Q);
}

std::pair<double, double> gamma_curve_first_derivatives(const GammaCurveBase& b, double beta) {
  const double k = b.k;
  const double J = b.P2Q;
  const double A = -2.0 * b.gradP2 + 2.0 * J - k * J + 2.0 * k * b.gradQ2 + 2.0 * k * beta * b.Q2;
  const double B = k * (2.0 * b.gradP2 + 2.0 * b.gradQ2 - 0.5 * b.n * J);
  return {A, B};
}

QuadraticForm gamma_curve_hessian(const GammaCurveBase& b, double beta) {
  const double k = b.k;
  const double n = b.n;
  const double J = b.P2Q;
  QuadraticForm f;
  f.a = -2.0 * b.gradP2 + 2.0 * k * b.gradQ2 + 2.0 * k * beta * b.Q2 + 6.0 * J;
  f.b = 2.0 * k * (b.gradP2 + b.gradQ2) - n * (n - 2.0) * k / 4.0 * J;
  f.c = -4.0 * b.gradP2 + 4.0 * k * b.gradQ2 + (2.0 - k) * (n / 2.0) * J;
  return f;
}

QuadraticForm reduced_gamma_curve_form(double k, int n, double beta, double P2Q, double Q2) {
  QuadraticForm f;
  f.a = (k + 4.0) * P2Q;
  f.b = n * (4.0 - n) / 4.0 * k * P2Q;
  f.c = -4.0 * k * beta * Q2 + (k - 2.0) * (4.0 - n) / 2.0 * P2Q;
  return f;
}

double hessian_determinant(double k, int n, double beta, double P2Q, double Q2) {
  return reduced_gamma_curve_form(k, n, beta, P2Q, Q2).determinant();
}

InstabilityDirection instability_direction(const GammaCurveBase& base, double beta) {
  const QuadraticForm f = gamma_curve_hessian(base, beta);
  // Smallest eigenpair of [[a, c], [c, b]].
  const double mean = 0.5 * (f.a + f.b);
  const double radius = std::hypot(0.5 * (f.a - f.b), f.c);
  const double lmin = mean - radius;
  if (!(lmin < 0.0)) fail(ErrorKind::unsupported, "gamma-curve form has no negative direction");
  double x = f.c;
  double y = lmin - f.a;
  if (std::hypot(x, y) < 1e-300 || std::abs(f.c) < 1e-14 * radius) {
    // Diagonal form: the eigenvector is an axis.
    x = f.a <= f.b ? 1.0 : 0.0;
    y = f.a <= f.b ? 0.0 : 1.0;
  }
  const double len = std::hypot(x, y);
  InstabilityDirection out;
  out.alpha0 = x / len;
  out.lambda0 = y / len;
  out.form_value = f(out.alpha0, out.lambda0);
  out.second_derivative = out.form_value / (2.0 * base.k);

  auto along = [&](double t) {
    return gamma_curve_energy(base, beta, 1.0 + out.alpha0 * t, 1.0 + out.lambda0 * t);
  };
  auto second_difference = [&](double h) { return (along(h) - 2.0 * along(0.0) + along(-h)) / (h * h); };
  const double h = 1e-3;
  out.fd_second_derivative = (4.0 * second_difference(h) - second_difference(2.0 * h)) / 3.0;

  out.reduced_form_value =
      reduced_gamma_curve_form(base.k, base.n, beta, base.P2Q, base.Q2)(out.alpha0, out.lambda0);
  return out;
}

CgnCheck cgn_threshold_check(const FieldPair& gs, const Grid& grid, const PhysicsParams& params) {
  if (grid.transverse_dim() != 3 || params.beta != 0.0 || params.gamma1 != 1.0 || params.gamma2 != 1.0) {
    fail(ErrorKind::unsupported, "the C_GN threshold identity holds for d = 3, beta = 0, gamma = 1");
  }
  CgnCheck c;
  c.gn = gn_quotient(gs, grid, params);
  c.c_gn = 1.0 / c.gn;
  c.mass = mass(gs, grid);
  c.m_product = c.mass * c.c_gn * c.c_gn;
  return c;
}

bool variance_bound_check(const std::vector<ObservableRecord>& series, double E0, double beta) {
  if (beta < 0.0) fail(ErrorKind::invalid_argument, "variance bound needs beta >= 0");
  if (series.size() < 3) fail(ErrorKind::invalid_argument, "variance bound needs at least 3 samples");
  const ObservableRecord& first = series.front();
  const double slack = 0.01 * first.V;
  return std::all_of(series.begin(), series.end(), [&](const ObservableRecord& r) {
    const double t = r.t - first.t;
    return r.V <= first.V + first.dV * t + 4.0 * E0 * t * t + slack;
  });
}

}  // namespace qss
