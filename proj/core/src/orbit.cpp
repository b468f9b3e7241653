#include "qss/orbit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "qss/error.hpp"
#include "qss/transform.hpp"

namespace qss {

namespace {

bool integral_shift(const std::vector<double>& shift) {
  for (double s : shift) {
    if (s != std::round(s)) return false;
  }
  return true;
}

ComplexArray roll(const ComplexArray& a, const Grid& grid, const std::vector<int>& shift) {
  // out[i] = a[i + shift] with periodic wrap, axis by axis.
  ComplexArray cur = a;
  ComplexArray next(a.size());
  for (int j = 0; j < grid.dim(); ++j) {
    const int N = grid.points(j);
    const int s = ((shift[j] % N) + N) % N;
    if (s == 0) continue;
    const std::size_t stride = grid.stride(j);
    const std::size_t block = stride * N;
    for (std::size_t base = 0; base < a.size(); base += block) {
      for (int i = 0; i < N; ++i) {
        const int src = (i + s) % N;
        std::copy_n(cur.begin() + base + src * stride, stride, next.begin() + base + i * stride);
      }
    }
    std::swap(cur, next);
  }
  return cur;
}

// sum over k of (1 + |k|^2) a_hat conj(b_hat) e^{-i k.s h} for every integer
// cell shift s, times the cell volume: the H1 inner product <a, b(. + s)>.
ComplexArray h1_correlation(const ComplexArray& a_hat, const ComplexArray& b_hat, const RealArray& sym,
                            const Grid& grid, const Fft& fft) {
  ComplexArray z(a_hat.size());
  for (std::size_t i = 0; i < z.size(); ++i) z[i] = (1.0 + sym[i]) * a_hat[i] * std::conj(b_hat[i]);
  fft.forward(z);
  const double scale = std::sqrt(static_cast<double>(grid.size())) * grid.cell_volume();
  for (auto& w : z) w *= scale;
  return z;
}

// Maximizer of g(theta) = Re(a e^{i theta}) + Re(b e^{2 i theta}).
double best_phase(cplx a, cplx b) {
  auto g = [&](double t) { return (a * std::polar(1.0, t)).real() + (b * std::polar(1.0, 2.0 * t)).real(); };
  constexpr int samples = 720;
  const double step = 2.0 * std::numbers::pi / samples;
  int best = 0;
  double best_val = g(0.0);
  for (int i = 1; i < samples; ++i) {
    const double val = g(i * step);
    if (val > best_val) {
      best_val = val;
      best = i;
    }
  }
  double theta = best * step;
  const double gm = g(theta - step);
  const double gp = g(theta + step);
  const double denom = gm - 2.0 * best_val + gp;
  if (denom < 0.0) theta += 0.5 * step * (gm - gp) / denom;
  // Newton polish on g' using the closed form.
  for (int it = 0; it < 4; ++it) {
    const cplx ea = a * std::polar(1.0, theta);
    const cplx eb = b * std::polar(1.0, 2.0 * theta);
    const double d1 = -ea.imag() - 2.0 * eb.imag();
    const double d2 = -ea.real() - 4.0 * eb.real();
    if (!(d2 < 0.0)) break;
    const double delta = -d1 / d2;
    if (std::abs(delta) > step) break;
    theta += delta;
  }
  theta = std::fmod(theta, 2.0 * std::numbers::pi);
  if (theta < 0.0) theta += 2.0 * std::numbers::pi;
  return theta;
}

double phase_objective(cplx a, cplx b, double theta) {
  return (a * std::polar(1.0, theta)).real() + (b * std::polar(1.0, 2.0 * theta)).real();
}

}  // namespace

FieldPair apply_orbit(const FieldPair& fields, const Grid& grid, double theta,
                      const std::vector<double>& shift_cells) {
  require_shape(fields, grid);
  if (static_cast<int>(shift_cells.size()) != grid.dim()) {
    fail(ErrorKind::invalid_argument, "orbit shift needs one entry per axis");
  }
  FieldPair out;
  if (integral_shift(shift_cells)) {
    std::vector<int> s(shift_cells.begin(), shift_cells.end());
    out = {roll(fields.u, grid, s), roll(fields.v, grid, s)};
  } else {
    // f(x + y) has coefficients f_hat(k) e^{i k.y}.
    const ComplexArray ramp = axis_product(grid, [&](int axis, int i) {
      return std::polar(1.0, grid.wavenumbers(axis)[i] * shift_cells[axis] * grid.spacing(axis));
    });
    SpectrumPair spec = forward_transform(fields, grid);
    for (std::size_t i = 0; i < ramp.size(); ++i) {
      spec.u_hat[i] *= ramp[i];
      spec.v_hat[i] *= ramp[i];
    }
    out = inverse_transform(spec, grid);
  }
  const cplx pu = std::polar(1.0, theta);
  const cplx pv = std::polar(1.0, 2.0 * theta);
  for (auto& z : out.u) z *= pu;
  for (auto& z : out.v) z *= pv;
  return out;
}

double h1_norm(const FieldPair& fields, const Grid& grid) {
  const SpectrumPair spec = forward_transform(fields, grid);
  const RealArray sym = laplacian_symbol(grid, 1.0);
  double s = 0.0;
  for (std::size_t i = 0; i < sym.size(); ++i) {
    s += (1.0 + sym[i]) * (std::norm(spec.u_hat[i]) + std::norm(spec.v_hat[i]));
  }
  return std::sqrt(s * grid.cell_volume());
}

OrbitMatch orbit_match(const FieldPair& state, const FieldPair& ground_state, const Grid& grid,
                       bool fractional) {
  require_shape(state, grid);
  require_shape(ground_state, grid);
  Fft fft(grid);
  const SpectrumPair xs = forward_transform(state, grid);
  const SpectrumPair gs = forward_transform(ground_state, grid);
  const RealArray sym = laplacian_symbol(grid, 1.0);
  const ComplexArray cu = h1_correlation(xs.u_hat, gs.u_hat, sym, grid, fft);
  const ComplexArray cv = h1_correlation(xs.v_hat, gs.v_hat, sym, grid, fft);

  // Coarse pick of the translation by the phase-free bound |c_u| + |c_v|.
  std::size_t coarse = 0;
  double coarse_val = -1.0;
  for (std::size_t i = 0; i < cu.size(); ++i) {
    const double val = std::abs(cu[i]) + std::abs(cv[i]);
    if (val > coarse_val) {
      coarse_val = val;
      coarse = i;
    }
  }

  // Refine over the 3^n neighbouring cells with the exact phase optimum.
  const int n = grid.dim();
  std::vector<int> centre(n);
  for (int j = 0; j < n; ++j) centre[j] = static_cast<int>((coarse / grid.stride(j)) % grid.points(j));

  OrbitMatch best;
  double best_val = -std::numeric_limits<double>::infinity();
  int combos = 1;
  for (int j = 0; j < n; ++j) combos *= 3;
  for (int c = 0; c < combos; ++c) {
    std::size_t idx = 0;
    std::vector<int> shift(n);
    int rest = c;
    for (int j = 0; j < n; ++j) {
      const int N = grid.points(j);
      const int i = ((centre[j] + rest % 3 - 1) % N + N) % N;
      rest /= 3;
      idx += i * grid.stride(j);
      shift[j] = Grid::mode_number(i, N);
    }
    const cplx a = std::conj(cu[idx]);
    const cplx b = std::conj(cv[idx]);
    const double theta = best_phase(a, b);
    const double val = phase_objective(a, b, theta);
    if (val > best_val) {
      best_val = val;
      best.theta = theta;
      best.shift_cells.assign(shift.begin(), shift.end());
    }
  }

  if (fractional) {
    // Products whose transform at shift y gives the correlations.
    ComplexArray zu(xs.u_hat.size());
    ComplexArray zv(xs.u_hat.size());
    for (std::size_t i = 0; i < zu.size(); ++i) {
      zu[i] = (1.0 + sym[i]) * xs.u_hat[i] * std::conj(gs.u_hat[i]);
      zv[i] = (1.0 + sym[i]) * xs.v_hat[i] * std::conj(gs.v_hat[i]);
    }
    const double h = grid.cell_volume();
    auto objective = [&](const std::vector<double>& y, double* theta_out) {
      const ComplexArray ramp = axis_product(grid, [&](int axis, int i) {
        return std::polar(1.0, -grid.wavenumbers(axis)[i] * y[axis] * grid.spacing(axis));
      });
      cplx su = 0.0;
      cplx sv = 0.0;
      for (std::size_t i = 0; i < ramp.size(); ++i) {
        su += zu[i] * ramp[i];
        sv += zv[i] * ramp[i];
      }
      const cplx a = std::conj(su * h);
      const cplx b = std::conj(sv * h);
      const double theta = best_phase(a, b);
      if (theta_out) *theta_out = theta;
      return phase_objective(a, b, theta);
    };
    std::vector<double> y = best.shift_cells;
    const double ratio = 0.5 * (std::sqrt(5.0) - 1.0);
    for (int sweep = 0; sweep < 2; ++sweep) {
      for (int j = 0; j < n; ++j) {
        double lo = y[j] - 1.0;
        double hi = y[j] + 1.0;
        auto at = [&](double x) {
          std::vector<double> trial = y;
          trial[j] = x;
          return objective(trial, nullptr);
        };
        double x1 = hi - ratio * (hi - lo);
        double x2 = lo + ratio * (hi - lo);
        double f1 = at(x1);
        double f2 = at(x2);
        while (hi - lo > 1e-7) {
          if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + ratio * (hi - lo);
            f2 = at(x2);
          } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - ratio * (hi - lo);
            f1 = at(x1);
          }
        }
        y[j] = 0.5 * (lo + hi);
      }
    }
    double theta = 0.0;
    if (objective(y, &theta) > best_val) {
      best.shift_cells = y;
      best.theta = theta;
    }
  }

  // Evaluate the distance from the difference field to avoid cancellation.
  const FieldPair image = apply_orbit(ground_state, grid, best.theta, best.shift_cells);
  FieldPair diff = state;
  for (std::size_t i = 0; i < diff.u.size(); ++i) {
    diff.u[i] -= image.u[i];
    diff.v[i] -= image.v[i];
  }
  best.distance = h1_norm(diff, grid);
  return best;
}

double orbit_distance(const FieldPair& state, const FieldPair& ground_state, const Grid& grid,
                      bool fractional) {
  return orbit_match(state, ground_state, grid, fractional).distance;
}

}  // namespace qss
