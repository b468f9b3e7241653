#include "qss/groundstate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "qss/observables.hpp"
#include "qss/transform.hpp"

namespace qss {

namespace {

double spectral_norm_sq(const ComplexArray& a) {
  double s = 0.0;
  for (const auto& z : a) s += std::norm(z);
  return s;
}

bool is_real(const FieldPair& f) {
  auto real = [](const ComplexArray& a) {
    return std::all_of(a.begin(), a.end(), [](cplx z) { return z.imag() == 0.0; });
  };
  return real(f.u) && real(f.v);
}

void drop_imaginary(ComplexArray& a) {
  for (auto& z : a) z.imag(0.0);
}

std::string not_converged_message(const GroundStateResult& r) {
  std::ostringstream msg;
  msg << "fixed-point iteration stopped after " << r.iterations << " iterations with residual "
      << r.residual();
  return msg.str();
}

}  // namespace

void validate(const PetviashviliConfig& c) {
  if (c.max_iter < 1) fail(ErrorKind::invalid_argument, "petviashvili: max_iter must be >= 1");
  if (!(c.tol > 0.0)) fail(ErrorKind::invalid_argument, "petviashvili: tol must be positive");
  if (!(c.relaxation > 0.0 && c.relaxation <= 1.0)) {
    fail(ErrorKind::invalid_argument, "petviashvili: relaxation must lie in (0, 1]");
  }
  if (!std::isfinite(c.stab_exponent)) {
    fail(ErrorKind::invalid_argument, "petviashvili: stab_exponent must be finite");
  }
}

NotConverged::NotConverged(GroundStateResult partial)
    : Error(ErrorKind::not_converged, not_converged_message(partial)), partial_(std::move(partial)) {}

double stationary_residual(const FieldPair& fields, const Grid& grid, const PhysicsParams& params) {
  require_shape(fields, grid);
  const SpectrumPair spec = forward_transform(fields, grid);
  const double norm = spectral_norm_sq(spec.u_hat) + spectral_norm_sq(spec.v_hat);
  if (norm == 0.0) return std::numeric_limits<double>::infinity();

  FieldPair nl = zero_fields(grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    nl.u[i] = std::conj(fields.u[i]) * fields.v[i];
    nl.v[i] = 0.5 * fields.u[i] * fields.u[i];
  }
  const SpectrumPair nl_hat = forward_transform(nl, grid);
  const RealArray su = laplacian_symbol(grid, params.gamma1);
  const RealArray sv = laplacian_symbol(grid, params.gamma2);
  const double mu = params.omega;
  const double mv = 4.0 * params.omega + params.beta;
  double r = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    r += std::norm(nl_hat.u_hat[i] - (mu + su[i]) * spec.u_hat[i]);
    r += std::norm(nl_hat.v_hat[i] - (mv + sv[i]) * spec.v_hat[i]);
  }
  return std::sqrt(r / norm);
}

PohozaevRatios pohozaev_ratios(const FieldPair& fields, const Grid& grid,
                               const PhysicsParams& params) {
  const KJFunctionals f = kj_functionals(fields, grid, params);
  const double kgrad = gradient_functional(fields, grid, params);
  const double E = energy(fields, grid, params).total;
  PohozaevRatios r;
  r.k_over_j = f.K / f.J;
  r.kgrad_over_j = kgrad / f.J;
  r.i_over_j = f.I / f.J;
  r.e_over_k = E / f.K;
  return r;
}

GroundStateResult petviashvili_solve(const Grid& grid, const PhysicsParams& params,
                                     const PetviashviliConfig& config) {
  validate_for_ground_state(params);
  validate(config);

  FieldPair x = sample_preset(grid, config.init);
  const bool real = is_real(x);
  Fft fft(grid);

  // L = diag(omega - Delta_g1, 4 omega + beta - Delta_g2) in spectral form.
  RealArray lu = laplacian_symbol(grid, params.gamma1);
  RealArray lv = laplacian_symbol(grid, params.gamma2);
  for (auto& s : lu) s += params.omega;
  for (auto& s : lv) s += 4.0 * params.omega + params.beta;

  SpectrumPair spec{x.u, x.v};
  fft.forward(spec.u_hat);
  fft.forward(spec.v_hat);
  SpectrumPair nl{ComplexArray(grid.size()), ComplexArray(grid.size())};

  GroundStateResult result;
  result.params = params;
  bool converged = false;

  for (int iter = 0;; ++iter) {
    for (std::size_t i = 0; i < grid.size(); ++i) {
      nl.u_hat[i] = std::conj(x.u[i]) * x.v[i];
      nl.v_hat[i] = 0.5 * x.u[i] * x.u[i];
    }
    fft.forward(nl.u_hat);
    fft.forward(nl.v_hat);

    // <L X, X> = I and <N(X), X> = (3/2) J, both by Parseval.
    double lxx = 0.0;
    double nx = 0.0;
    double res = 0.0;
    double norm = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const cplx pu = spec.u_hat[i];
      const cplx pv = spec.v_hat[i];
      lxx += lu[i] * std::norm(pu) + lv[i] * std::norm(pv);
      nx += (nl.u_hat[i] * std::conj(pu) + nl.v_hat[i] * std::conj(pv)).real();
      res += std::norm(nl.u_hat[i] - lu[i] * pu) + std::norm(nl.v_hat[i] - lv[i] * pv);
      norm += std::norm(pu) + std::norm(pv);
    }
    const double residual = norm > 0.0 ? std::sqrt(res / norm) : std::numeric_limits<double>::infinity();
    result.residual_history.push_back(residual);
    result.stabilizer = lxx / nx;
    result.iterations = iter;

    if (residual <= config.tol) {
      converged = true;
      break;
    }
    if (!std::isfinite(residual) || !(nx > 0.0) || iter >= config.max_iter) break;

    const double tau = config.relaxation;
    const double factor = tau * std::pow(result.stabilizer, config.stab_exponent);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      spec.u_hat[i] = (1.0 - tau) * spec.u_hat[i] + factor * nl.u_hat[i] / lu[i];
      spec.v_hat[i] = (1.0 - tau) * spec.v_hat[i] + factor * nl.v_hat[i] / lv[i];
    }
    x.u = spec.u_hat;
    x.v = spec.v_hat;
    fft.inverse(x.u);
    fft.inverse(x.v);
    if (real) {
      drop_imaginary(x.u);
      drop_imaginary(x.v);
    }
  }

  result.fields = std::move(x);
  double pmin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    pmin = std::min({pmin, result.fields.u[i].real(), result.fields.v[i].real()});
  }
  result.positivity_min = pmin;
  if (std::isfinite(result.residual())) {
    result.ratios = pohozaev_ratios(result.fields, grid, params);
  }
  if (!converged) throw NotConverged(std::move(result));
  return result;
}

PohozaevReport pohozaev_check(const GroundStateResult& result, const Grid& grid, double tolerance) {
  PohozaevReport report;
  report.measured = pohozaev_ratios(result.fields, grid, result.params);
  report.tolerance = tolerance;
  const int d = grid.transverse_dim();
  report.expected_kgrad_over_j = (d + 1) / 4.0;
  report.kgrad_ok = std::abs(report.measured.kgrad_over_j - report.expected_kgrad_over_j) <= tolerance;
  report.i_ok = std::abs(report.measured.i_over_j - report.expected_i_over_j) <= tolerance;
  if (result.params.beta == 0.0) {
    report.expected_e_over_k = (d - 3.0) / (2.0 * d + 2.0);
    report.energy_ok = std::abs(report.measured.e_over_k - *report.expected_e_over_k) <= tolerance;
  }
  return report;
}

ScaleFactors rescale_factors(double J, double M, ScaleTarget target, int n) {
  if (!(J > 0.0) || !(M > 0.0) || !(target.J > 0.0) || !(target.M > 0.0)) {
    fail(ErrorKind::invalid_argument, "rescale: J and M of source and target must be positive");
  }
  // J(nu W(zeta .)) = nu^3 zeta^-n J and M(nu W(zeta .)) = nu^2 zeta^-n M.
  ScaleFactors f;
  f.nu = (target.J / J) * (M / target.M);
  f.zeta = std::pow(f.nu * f.nu * M / target.M, 1.0 / n);
  return f;
}

namespace {

// Row-major N x N matrix evaluating the periodic band-limited interpolant of
// samples on x_l = -L/2 + l h at the points zeta x_i. The Nyquist mode enters
// as a cosine so real samples interpolate to real values.
std::vector<double> dilation_matrix(int N, double L, double zeta) {
  const double h = L / N;
  const int M = N / 2 - 1;
  std::vector<double> A(static_cast<std::size_t>(N) * N);
  for (int i = 0; i < N; ++i) {
    const double y = zeta * (-0.5 * L + i * h);
    const double nyq = std::cos(std::numbers::pi * N * (y + 0.5 * L) / L);
    for (int l = 0; l < N; ++l) {
      const double theta = 2.0 * std::numbers::pi * (y - (-0.5 * L + l * h)) / L;
      const double half = std::sin(0.5 * theta);
      const double dirichlet =
          std::abs(half) < 1e-14 ? 2.0 * M + 1.0 : std::sin((M + 0.5) * theta) / half;
      A[static_cast<std::size_t>(i) * N + l] = (dirichlet + (l % 2 == 0 ? nyq : -nyq)) / N;
    }
  }
  return A;
}

void apply_along_axis(ComplexArray& a, const Grid& grid, int axis, const std::vector<double>& A) {
  const int N = grid.points(axis);
  const std::size_t stride = grid.stride(axis);
  const std::size_t block = stride * N;
  std::vector<cplx> line(N);
  for (std::size_t base = 0; base < a.size(); base += block) {
    for (std::size_t off = 0; off < stride; ++off) {
      for (int l = 0; l < N; ++l) line[l] = a[base + off + l * stride];
      for (int i = 0; i < N; ++i) {
        cplx s = 0.0;
        const double* row = &A[static_cast<std::size_t>(i) * N];
        for (int l = 0; l < N; ++l) s += row[l] * line[l];
        a[base + off + i * stride] = s;
      }
    }
  }
}

}  // namespace

FieldPair dilate(const FieldPair& fields, const Grid& grid, double zeta) {
  require_shape(fields, grid);
  if (!(zeta > 0.0) || !std::isfinite(zeta)) fail(ErrorKind::invalid_argument, "dilation factor must be positive");
  FieldPair out = fields;
  for (int j = 0; j < grid.dim(); ++j) {
    const auto A = dilation_matrix(grid.points(j), grid.length(j), zeta);
    apply_along_axis(out.u, grid, j, A);
    apply_along_axis(out.v, grid, j, A);
  }
  return out;
}

FieldPair lemma1_rescale(const FieldPair& fields, const Grid& grid, ScaleTarget target) {
  const double J = interaction(fields, grid);
  if (!(J > 0.0)) fail(ErrorKind::invalid_argument, "rescale needs J > 0");
  const ScaleFactors f = rescale_factors(J, mass(fields, grid), target, grid.dim());
  FieldPair out = f.zeta == 1.0 ? fields : dilate(fields, grid, f.zeta);
  return scaled(out, f.nu);
}

}  // namespace qss
