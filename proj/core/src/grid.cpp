#include "qss/grid.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qss/error.hpp"

namespace qss {

Grid::Grid(int n, std::vector<int> points, std::vector<double> lengths)
    : n_(n), points_(std::move(points)), lengths_(std::move(lengths)) {
  if (n_ < min_dim || n_ > max_dim) {
    fail(ErrorKind::invalid_argument,
         "grid dimension " + std::to_string(n_) + " outside [2, 5] (d = n-1 must lie in [1, 4])");
  }
  if (static_cast<int>(points_.size()) != n_ || static_cast<int>(lengths_.size()) != n_) {
    fail(ErrorKind::invalid_argument, "grid needs exactly n point counts and n box lengths");
  }
  for (int j = 0; j < n_; ++j) {
    if (points_[j] < min_points || points_[j] % 2 != 0) {
      fail(ErrorKind::invalid_argument, "points on axis " + std::to_string(j) +
                                            " must be even and >= 8, got " +
                                            std::to_string(points_[j]));
    }
    if (!(lengths_[j] > 0.0) || !std::isfinite(lengths_[j])) {
      fail(ErrorKind::invalid_argument,
           "box length on axis " + std::to_string(j) + " must be positive and finite");
    }
  }

  strides_.assign(n_, 1);
  for (int j = n_ - 2; j >= 0; --j) strides_[j] = strides_[j + 1] * points_[j + 1];
  for (int j = 0; j < n_; ++j) {
    size_ *= static_cast<std::size_t>(points_[j]);
    cell_volume_ *= spacing(j);
  }

  coords_.resize(n_);
  wavenumbers_.resize(n_);
  for (int j = 0; j < n_; ++j) {
    const int N = points_[j];
    const double L = lengths_[j];
    const double h = L / N;
    coords_[j].resize(N);
    wavenumbers_[j].resize(N);
    for (int i = 0; i < N; ++i) {
      coords_[j][i] = -0.5 * L + i * h;
      wavenumbers_[j][i] = 2.0 * std::numbers::pi * mode_number(i, N) / L;
    }
  }
}

double Grid::volume() const noexcept {
  double v = 1.0;
  for (double L : lengths_) v *= L;
  return v;
}

Grid make_grid(int n, std::vector<int> points, std::vector<double> lengths) {
  return Grid(n, std::move(points), std::move(lengths));
}

RealArray axis_sum(const Grid& grid, const std::function<double(int, int)>& term) {
  RealArray acc{0.0};
  for (int j = 0; j < grid.dim(); ++j) {
    const int N = grid.points(j);
    std::vector<double> t(N);
    for (int i = 0; i < N; ++i) t[i] = term(j, i);
    RealArray next(acc.size() * N);
    for (std::size_t o = 0; o < acc.size(); ++o) {
      double* out = next.data() + o * N;
      for (int i = 0; i < N; ++i) out[i] = acc[o] + t[i];
    }
    acc.swap(next);
  }
  return acc;
}

ComplexArray axis_product(const Grid& grid, const std::function<cplx(int, int)>& factor) {
  ComplexArray acc{cplx{1.0, 0.0}};
  for (int j = 0; j < grid.dim(); ++j) {
    const int N = grid.points(j);
    std::vector<cplx> f(N);
    for (int i = 0; i < N; ++i) f[i] = factor(j, i);
    ComplexArray next(acc.size() * N);
    for (std::size_t o = 0; o < acc.size(); ++o) {
      cplx* out = next.data() + o * N;
      for (int i = 0; i < N; ++i) out[i] = acc[o] * f[i];
    }
    acc.swap(next);
  }
  return acc;
}

RealArray laplacian_symbol(const Grid& grid, double gamma) {
  if (!(gamma > 0.0)) fail(ErrorKind::invalid_argument, "laplacian_symbol needs gamma > 0");
  const int last = grid.dim() - 1;
  return axis_sum(grid, [&](int axis, int i) {
    const double k = grid.wavenumbers(axis)[i];
    return (axis == last ? gamma : 1.0) * k * k;
  });
}

RealArray radius_squared(const Grid& grid, bool with_last_axis) {
  const int last = grid.dim() - 1;
  return axis_sum(grid, [&](int axis, int i) {
    if (axis == last && !with_last_axis) return 0.0;
    const double x = grid.coords(axis)[i];
    return x * x;
  });
}

double integrate(const RealArray& values, const Grid& grid) {
  double s = 0.0;
  for (double v : values) s += v;
  return s * grid.cell_volume();
}

}  // namespace qss
