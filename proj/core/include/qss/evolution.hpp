#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "qss/fields.hpp"
#include "qss/grid.hpp"
#include "qss/observables.hpp"
#include "qss/params.hpp"
#include "qss/transform.hpp"

namespace qss {

struct IntegratorConfig {
  double dt0 = 1e-3;
  double dt_min = 1e-7;
  double dt_max = 1e-2;
  double t_end = 1.0;
  double cfl_const = 0.1;       ///< dt = clamp(cfl_const / max(|u|_inf, |v|_inf, 1))
  double blowup_factor = 1e3;   ///< gradient-growth threshold
  int record_every = 10;
  bool dealias = false;         ///< 2/3-rule truncation after each nonlinear substep
};

void validate(const IntegratorConfig& config);

enum class RunStatus { completed, blowup_detected, dt_underflow };

const char* to_string(RunStatus status) noexcept;

struct RunResult {
  RunStatus status = RunStatus::completed;
  std::optional<double> blowup_time_estimate;
  std::vector<ObservableRecord> series;
  FieldPair final_state;
  double final_time = 0.0;
  std::size_t steps = 0;
  /// Largest (|grad u|^2 + |grad v|^2) / initial value seen during the run.
  double max_gradient_ratio = 1.0;
};

/// Exact linear flow: u_hat *= exp(-i |k|^2_{g1} dt), v_hat *= exp(-i (|k|^2_{g2} + beta) dt / 2).
SpectrumPair linear_step(const SpectrumPair& spec, const Grid& grid, const PhysicsParams& params,
                         double dt);

/// Advances u' = i conj(u) v, v' = (i/4) u^2 pointwise by one classical RK4 step.
/// Throws ErrorKind::overflow if a non-finite value appears.
FieldPair nonlinear_step(const FieldPair& fields, double dt);

/// Half linear, full nonlinear, half linear.
FieldPair strang_step(const FieldPair& fields, const Grid& grid, const PhysicsParams& params,
                      double dt, bool dealias = false);

/// Reusable split-step kernels for one grid and parameter set. Caches the
/// transform plan and the linear multipliers of the most recent step size.
class SplitStepper {
 public:
  SplitStepper(const Grid& grid, const PhysicsParams& params, bool dealias = false);

  void linear(SpectrumPair& spec, double dt);
  /// Returns false if a non-finite value was produced.
  bool nonlinear(FieldPair& fields, double dt) const;
  void strang(FieldPair& fields, double dt);
  void dealias(SpectrumPair& spec) const;

  void to_spectrum(const FieldPair& fields, SpectrumPair& spec) const;
  void to_fields(const SpectrumPair& spec, FieldPair& fields) const;

  /// |grad u|^2 + |grad v|^2 (isotropic) from spectral data.
  double gradient_norm(const SpectrumPair& spec) const;

  const Grid& grid() const noexcept { return grid_; }

 private:
  void update_multipliers(double dt);

  Grid grid_;
  PhysicsParams params_;
  bool dealias_;
  Fft fft_;
  RealArray symbol_iso_;
  std::vector<unsigned char> keep_mask_;
  double cached_dt_ = 0.0;
  bool have_cache_ = false;
  ComplexArray mult_u_;
  ComplexArray mult_v_;
};

struct EvolveHooks {
  /// Called for every recorded sample with the state at that time.
  std::function<void(const ObservableRecord&, const FieldPair&)> on_record;
};

/// Integrates from t = 0 to config.t_end, recording observables every
/// record_every steps plus the initial and final states. Stops early with
/// blowup_detected when the gradient norm exceeds blowup_factor times its
/// initial value or a value overflows, and with dt_underflow when the
/// adaptive step would fall below dt_min.
RunResult evolve(const FieldPair& initial, const Grid& grid, const PhysicsParams& params,
                 const IntegratorConfig& config, const EvolveHooks& hooks = {});

}  // namespace qss
