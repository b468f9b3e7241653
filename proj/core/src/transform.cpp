#include "qss/transform.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>

#include "qss/error.hpp"

namespace qss {

namespace detail {

// In-place plans built once per shape. FFTW_ESTIMATE keeps plan selection
// independent of timing, so results are reproducible run to run.
struct PlanPair {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;

  ~PlanPair() {
    if (forward) fftw_destroy_plan(forward);
    if (backward) fftw_destroy_plan(backward);
  }
};

}  // namespace detail

namespace {

std::mutex planner_mutex;

std::shared_ptr<const detail::PlanPair> plans_for(const std::vector<int>& shape, std::size_t size) {
  static std::map<std::vector<int>, std::shared_ptr<const detail::PlanPair>> cache;
  std::lock_guard lock(planner_mutex);
  if (auto it = cache.find(shape); it != cache.end()) return it->second;

  ComplexArray scratch(size);
  auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
  auto plans = std::make_shared<detail::PlanPair>();
  const int rank = static_cast<int>(shape.size());
  plans->forward = fftw_plan_dft(rank, shape.data(), buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
  plans->backward = fftw_plan_dft(rank, shape.data(), buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
  if (!plans->forward || !plans->backward) fail(ErrorKind::unsupported, "FFTW planning failed");
  cache.emplace(shape, plans);
  return plans;
}

void execute(fftw_plan plan, ComplexArray& data, double scale) {
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plan, buf, buf);
  for (auto& z : data) z *= scale;
}

}  // namespace

Fft::Fft(const Grid& grid)
    : plans_(plans_for(grid.points(), grid.size())),
      size_(grid.size()),
      scale_(1.0 / std::sqrt(static_cast<double>(grid.size()))) {}

void Fft::forward(ComplexArray& data) const {
  if (data.size() != size_) fail(ErrorKind::shape_mismatch, "transform input has wrong size");
  execute(plans_->forward, data, scale_);
}

void Fft::inverse(ComplexArray& data) const {
  if (data.size() != size_) fail(ErrorKind::shape_mismatch, "transform input has wrong size");
  execute(plans_->backward, data, scale_);
}

SpectrumPair forward_transform(const FieldPair& fields, const Grid& grid) {
  require_shape(fields, grid);
  Fft fft(grid);
  SpectrumPair spec{fields.u, fields.v};
  fft.forward(spec.u_hat);
  fft.forward(spec.v_hat);
  return spec;
}

FieldPair inverse_transform(const SpectrumPair& spec, const Grid& grid) {
  require_shape(spec, grid);
  Fft fft(grid);
  FieldPair fields{spec.u_hat, spec.v_hat};
  fft.inverse(fields.u);
  fft.inverse(fields.v);
  return fields;
}

ComplexArray spectral_derivative(const ComplexArray& spec, const Grid& grid, int axis) {
  if (spec.size() != grid.size()) fail(ErrorKind::shape_mismatch, "spectrum has wrong size");
  const int N = grid.points(axis);
  const std::size_t stride = grid.stride(axis);
  const auto& k = grid.wavenumbers(axis);
  ComplexArray out(spec.size());
  for (std::size_t idx = 0; idx < spec.size(); ++idx) {
    const int i = static_cast<int>((idx / stride) % N);
    const double kk = (i == N / 2) ? 0.0 : k[i];
    out[idx] = cplx{-kk * spec[idx].imag(), kk * spec[idx].real()};
  }
  return out;
}

std::vector<double> gradient_norms(const ComplexArray& spec, const Grid& grid) {
  if (spec.size() != grid.size()) fail(ErrorKind::shape_mismatch, "spectrum has wrong size");
  std::vector<double> out(grid.dim(), 0.0);
  for (int j = 0; j < grid.dim(); ++j) {
    const int N = grid.points(j);
    const std::size_t stride = grid.stride(j);
    const auto& k = grid.wavenumbers(j);
    // Accumulate |f_hat|^2 per mode index on this axis, then weight by k^2.
    std::vector<double> per_mode(N, 0.0);
    for (std::size_t idx = 0; idx < spec.size(); ++idx) {
      per_mode[(idx / stride) % N] += std::norm(spec[idx]);
    }
    double s = 0.0;
    for (int i = 0; i < N; ++i) s += k[i] * k[i] * per_mode[i];
    out[j] = s * grid.cell_volume();
  }
  return out;
}

}  // namespace qss
