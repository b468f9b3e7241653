#include "qss/presets.hpp"

#include <cmath>
#include <numbers>

#include "qss/error.hpp"
#include "qss/snapshot.hpp"

namespace qss {

namespace {

FieldPair sample(const Grid& grid, const GaussianPreset& p) {
  if (!(p.width > 0.0) || !std::isfinite(p.width)) {
    fail(ErrorKind::invalid_argument, "gaussian preset: width must be positive");
  }
  const RealArray r2 = radius_squared(grid);
  FieldPair f = zero_fields(grid);
  const double s = 1.0 / (2.0 * p.width * p.width);
  for (std::size_t i = 0; i < r2.size(); ++i) {
    const double g = std::exp(-r2[i] * s);
    f.u[i] = p.amplitude_u * g;
    f.v[i] = p.amplitude_v * g;
  }
  return f;
}

FieldPair sample(const Grid& grid, const PlaneWavePreset& p) {
  if (static_cast<int>(p.mode.size()) != grid.dim()) {
    fail(ErrorKind::invalid_argument, "plane_wave preset: mode needs one entry per axis");
  }
  auto wave = [&](int harmonic) {
    return axis_product(grid, [&](int axis, int i) {
      const double k = 2.0 * std::numbers::pi * p.mode[axis] / grid.length(axis);
      return std::polar(1.0, harmonic * k * grid.coords(axis)[i]);
    });
  };
  FieldPair f{wave(1), wave(2)};
  for (auto& z : f.u) z *= p.amplitude_u;
  for (auto& z : f.v) z *= p.amplitude_v;
  return f;
}

FieldPair sample(const Grid& grid, const GroundStateFilePreset& p) {
  Snapshot snap = load_snapshot(p.path);
  if (!(snap.grid == grid)) {
    fail(ErrorKind::shape_mismatch, "ground_state_file preset: snapshot grid differs from run grid");
  }
  return scaled(snap.fields, p.scale);
}

}  // namespace

FieldPair sample_preset(const Grid& grid, const Preset& preset) {
  return std::visit([&](const auto& p) { return sample(grid, p); }, preset);
}

}  // namespace qss
