#include "qss/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qss/error.hpp"
#include "qss/log.hpp"

namespace qss {

namespace {

// One classical RK4 step of u' = i conj(u) v, v' = (i/4) u^2 at a single
// point, written on real and imaginary parts so the loop vectorizes.
inline void rk4_point(double& ur, double& ui, double& vr, double& vi, double dt) {
  // i conj(u) v = i (ur - i ui)(vr + i vi) = -(ur vi - ui vr) + i (ur vr + ui vi)
  // (i/4) u^2 = (i/4)(ur^2 - ui^2 + 2 i ur ui) = -ur ui / 2 + i (ur^2 - ui^2) / 4
  auto f = [](double a, double b, double c, double e, double* k) {
    k[0] = -(a * e - b * c);
    k[1] = a * c + b * e;
    k[2] = -0.5 * a * b;
    k[3] = 0.25 * (a * a - b * b);
  };
  double k1[4], k2[4], k3[4], k4[4];
  const double h = 0.5 * dt;
  f(ur, ui, vr, vi, k1);
  f(ur + h * k1[0], ui + h * k1[1], vr + h * k1[2], vi + h * k1[3], k2);
  f(ur + h * k2[0], ui + h * k2[1], vr + h * k2[2], vi + h * k2[3], k3);
  f(ur + dt * k3[0], ui + dt * k3[1], vr + dt * k3[2], vi + dt * k3[3], k4);
  const double w = dt / 6.0;
  ur += w * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]);
  ui += w * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]);
  vr += w * (k1[2] + 2.0 * k2[2] + 2.0 * k3[2] + k4[2]);
  vi += w * (k1[3] + 2.0 * k2[3] + 2.0 * k3[3] + k4[3]);
}

// Advances every point; the running sum of squares turns non-finite exactly
// when some value did (or the state is astronomically large).
bool rk4_all(ComplexArray& u, ComplexArray& v, double dt) {
  double* pu = reinterpret_cast<double*>(u.data());
  double* pv = reinterpret_cast<double*>(v.data());
  double acc = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    rk4_point(pu[2 * i], pu[2 * i + 1], pv[2 * i], pv[2 * i + 1], dt);
    acc += pu[2 * i] * pu[2 * i] + pu[2 * i + 1] * pu[2 * i + 1] + pv[2 * i] * pv[2 * i] +
           pv[2 * i + 1] * pv[2 * i + 1];
  }
  return std::isfinite(acc);
}

}  // namespace

void validate(const IntegratorConfig& c) {
  auto positive = [](double x) { return std::isfinite(x) && x > 0.0; };
  if (!positive(c.dt_min) || !positive(c.dt0) || !positive(c.dt_max)) {
    fail(ErrorKind::invalid_argument, "integrator: time steps must be positive");
  }
  if (!(c.dt_min <= c.dt0 && c.dt0 <= c.dt_max)) {
    fail(ErrorKind::invalid_argument, "integrator: need dt_min <= dt0 <= dt_max");
  }
  if (!positive(c.t_end)) fail(ErrorKind::invalid_argument, "integrator: t_end must be positive");
  if (!positive(c.cfl_const)) fail(ErrorKind::invalid_argument, "integrator: cfl_const must be positive");
  if (!(c.blowup_factor > 1.0)) {
    fail(ErrorKind::invalid_argument, "integrator: blowup_factor must exceed 1");
  }
  if (c.record_every < 1) fail(ErrorKind::invalid_argument, "integrator: record_every must be >= 1");
}

const char* to_string(RunStatus status) noexcept {
  switch (status) {
    case RunStatus::completed: return "completed";
    case RunStatus::blowup_detected: return "blowup_detected";
    case RunStatus::dt_underflow: return "dt_underflow";
  }
  return "unknown";
}

SplitStepper::SplitStepper(const Grid& grid, const PhysicsParams& params, bool dealias)
    : grid_(grid),
      params_(params),
      dealias_(dealias),
      fft_(grid),
      symbol_iso_(laplacian_symbol(grid, 1.0)) {
  validate(params);
  if (dealias_) {
    // 2/3 rule: keep modes with |m_j| <= N_j / 3 on every axis.
    const ComplexArray keep = axis_product(grid, [&](int axis, int i) {
      const int N = grid.points(axis);
      return cplx{std::abs(Grid::mode_number(i, N)) * 3 <= N ? 1.0 : 0.0, 0.0};
    });
    keep_mask_.resize(keep.size());
    for (std::size_t i = 0; i < keep.size(); ++i) keep_mask_[i] = keep[i].real() != 0.0;
  }
}

void SplitStepper::update_multipliers(double dt) {
  if (have_cache_ && dt == cached_dt_) return;
  // exp(-i |k|^2_g dt) factorizes over axes, so only one exp per axis sample.
  auto phases = [&](double gamma, double scale) {
    return axis_product(grid_, [&](int axis, int i) {
      const double k = grid_.wavenumbers(axis)[i];
      const double w = axis == grid_.dim() - 1 ? gamma : 1.0;
      return std::polar(1.0, -w * k * k * scale);
    });
  };
  mult_u_ = phases(params_.gamma1, dt);
  mult_v_ = phases(params_.gamma2, 0.5 * dt);
  const cplx beta_phase = std::polar(1.0, -0.5 * params_.beta * dt);
  for (auto& z : mult_v_) z *= beta_phase;
  cached_dt_ = dt;
  have_cache_ = true;
}

void SplitStepper::linear(SpectrumPair& spec, double dt) {
  require_shape(spec, grid_);
  if (dt == 0.0) return;
  update_multipliers(dt);
  for (std::size_t i = 0; i < spec.u_hat.size(); ++i) {
    spec.u_hat[i] *= mult_u_[i];
    spec.v_hat[i] *= mult_v_[i];
  }
}

bool SplitStepper::nonlinear(FieldPair& fields, double dt) const {
  require_shape(fields, grid_);
  if (dt == 0.0) return true;
  return rk4_all(fields.u, fields.v, dt);
}

void SplitStepper::dealias(SpectrumPair& spec) const {
  if (!dealias_) return;
  for (std::size_t i = 0; i < keep_mask_.size(); ++i) {
    if (!keep_mask_[i]) {
      spec.u_hat[i] = 0.0;
      spec.v_hat[i] = 0.0;
    }
  }
}

void SplitStepper::to_spectrum(const FieldPair& fields, SpectrumPair& spec) const {
  require_shape(fields, grid_);
  spec.u_hat = fields.u;
  spec.v_hat = fields.v;
  fft_.forward(spec.u_hat);
  fft_.forward(spec.v_hat);
}

void SplitStepper::to_fields(const SpectrumPair& spec, FieldPair& fields) const {
  require_shape(spec, grid_);
  fields.u = spec.u_hat;
  fields.v = spec.v_hat;
  fft_.inverse(fields.u);
  fft_.inverse(fields.v);
}

double SplitStepper::gradient_norm(const SpectrumPair& spec) const {
  double s = 0.0;
  for (std::size_t i = 0; i < symbol_iso_.size(); ++i) {
    s += symbol_iso_[i] * (std::norm(spec.u_hat[i]) + std::norm(spec.v_hat[i]));
  }
  return s * grid_.cell_volume();
}

void SplitStepper::strang(FieldPair& fields, double dt) {
  SpectrumPair spec;
  to_spectrum(fields, spec);
  linear(spec, 0.5 * dt);
  to_fields(spec, fields);
  if (!nonlinear(fields, dt)) fail(ErrorKind::overflow, "non-finite value in nonlinear substep");
  to_spectrum(fields, spec);
  dealias(spec);
  linear(spec, 0.5 * dt);
  to_fields(spec, fields);
}

SpectrumPair linear_step(const SpectrumPair& spec, const Grid& grid, const PhysicsParams& params,
                         double dt) {
  SplitStepper stepper(grid, params);
  SpectrumPair out = spec;
  stepper.linear(out, dt);
  return out;
}

FieldPair nonlinear_step(const FieldPair& fields, double dt) {
  if (fields.u.size() != fields.v.size()) fail(ErrorKind::shape_mismatch, "u and v differ in size");
  FieldPair out = fields;
  if (!rk4_all(out.u, out.v, dt)) fail(ErrorKind::overflow, "non-finite value in nonlinear substep");
  return out;
}

FieldPair strang_step(const FieldPair& fields, const Grid& grid, const PhysicsParams& params,
                      double dt, bool dealias) {
  SplitStepper stepper(grid, params, dealias);
  FieldPair out = fields;
  stepper.strang(out, dt);
  return out;
}

RunResult evolve(const FieldPair& initial, const Grid& grid, const PhysicsParams& params,
                 const IntegratorConfig& config, const EvolveHooks& hooks) {
  validate(config);
  require_shape(initial, grid);
  if (!all_finite(initial)) fail(ErrorKind::invalid_argument, "initial state is not finite");

  SplitStepper stepper(grid, params, config.dealias);
  RunResult result;
  FieldPair fields = initial;
  SpectrumPair spec;
  stepper.to_spectrum(fields, spec);

  const double grad0 = stepper.gradient_norm(spec);
  double t = 0.0;

  auto record = [&](const FieldPair& state) {
    result.series.push_back(observe(state, grid, params, t));
    if (hooks.on_record) hooks.on_record(result.series.back(), state);
  };
  record(fields);

  auto desired_dt = [&](double sup) {
    return std::min(config.dt_max, config.cfl_const / std::max(sup, 1.0));
  };

  // Consecutive half linear steps are merged: `pending` is the linear time
  // still owed to the spectrum before it represents the state at time t.
  double pending = 0.0;
  double dt = std::min(config.dt0, desired_dt(std::max(sup_norm(fields.u), sup_norm(fields.v))));
  const double t_tol = 1e-12 * config.t_end;

  while (t < config.t_end - t_tol) {
    if (dt < config.dt_min) {
      result.status = RunStatus::dt_underflow;
      break;
    }
    const double step = std::min(dt, config.t_end - t);

    stepper.linear(spec, pending + 0.5 * step);
    stepper.to_fields(spec, fields);
    if (!stepper.nonlinear(fields, step)) {
      // spec still holds the last finite state, half a linear step ahead.
      pending = -0.5 * step;
      result.max_gradient_ratio = std::numeric_limits<double>::infinity();
      result.status = RunStatus::blowup_detected;
      result.blowup_time_estimate = t;
      break;
    }
    const double sup = std::max(sup_norm(fields.u), sup_norm(fields.v));
    stepper.to_spectrum(fields, spec);
    stepper.dealias(spec);
    pending = 0.5 * step;
    t += step;
    ++result.steps;

    const double grad = stepper.gradient_norm(spec);
    if (grad0 > 0.0) result.max_gradient_ratio = std::max(result.max_gradient_ratio, grad / grad0);
    if (!std::isfinite(grad) || (grad0 > 0.0 && grad > config.blowup_factor * grad0)) {
      result.status = RunStatus::blowup_detected;
      result.blowup_time_estimate = t;
      break;
    }

    const bool done = t >= config.t_end - t_tol;
    if (!done && result.steps % static_cast<std::size_t>(config.record_every) == 0) {
      stepper.linear(spec, pending);
      pending = 0.0;
      stepper.to_fields(spec, fields);
      record(fields);
    }
    dt = desired_dt(sup);
  }

  stepper.linear(spec, pending);
  stepper.to_fields(spec, fields);
  if (result.series.back().t != t) record(fields);
  if (result.status == RunStatus::completed && boundary_mass_fraction(fields, grid) > boundary_mass_tolerance) {
    warn("final state has non-negligible mass at the box boundary");
  }
  result.final_state = std::move(fields);
  result.final_time = t;
  return result;
}

}  // namespace qss
