#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "qss/types.hpp"

namespace qss {

/// Periodic box in n = d+1 dimensions, row-major with the last axis fastest.
///
/// The last axis is the distinguished x_{d+1} direction; the first d axes form
/// the transverse block x_perp. Coordinates are centered: axis j samples
/// [-L_j/2, L_j/2) with spacing h_j = L_j/N_j. Wavenumbers are stored in
/// transform order (0, 1, ..., N/2-1, -N/2, ..., -1) times 2*pi/L_j.
class Grid {
 public:
  static constexpr int min_dim = 2;
  static constexpr int max_dim = 5;
  static constexpr int min_points = 8;

  Grid(int n, std::vector<int> points, std::vector<double> lengths);

  int dim() const noexcept { return n_; }
  int transverse_dim() const noexcept { return n_ - 1; }

  const std::vector<int>& points() const noexcept { return points_; }
  const std::vector<double>& lengths() const noexcept { return lengths_; }
  int points(int axis) const { return points_.at(axis); }
  double length(int axis) const { return lengths_.at(axis); }
  double spacing(int axis) const { return lengths_.at(axis) / points_.at(axis); }

  std::size_t size() const noexcept { return size_; }
  std::size_t stride(int axis) const { return strides_.at(axis); }
  double cell_volume() const noexcept { return cell_volume_; }
  double volume() const noexcept;

  const std::vector<double>& coords(int axis) const { return coords_.at(axis); }
  const std::vector<double>& wavenumbers(int axis) const { return wavenumbers_.at(axis); }

  /// Signed mode number m of transform index i on an axis of N points.
  static int mode_number(int i, int n) noexcept { return i < n / 2 ? i : i - n; }

  bool operator==(const Grid& other) const noexcept {
    return points_ == other.points_ && lengths_ == other.lengths_;
  }

 private:
  int n_;
  std::vector<int> points_;
  std::vector<double> lengths_;
  std::vector<std::size_t> strides_;
  std::size_t size_ = 1;
  double cell_volume_ = 1.0;
  std::vector<std::vector<double>> coords_;
  std::vector<std::vector<double>> wavenumbers_;
};

Grid make_grid(int n, std::vector<int> points, std::vector<double> lengths);

/// Builds the array sum_j term(j, i_j) over all grid points.
RealArray axis_sum(const Grid& grid, const std::function<double(int axis, int index)>& term);

/// Builds the array prod_j factor(j, i_j) over all grid points.
ComplexArray axis_product(const Grid& grid, const std::function<cplx(int axis, int index)>& factor);

/// Multiplier |k|^2_gamma = k_1^2 + ... + k_d^2 + gamma k_{d+1}^2 of -Delta_gamma,
/// laid out over spectral indices.
RealArray laplacian_symbol(const Grid& grid, double gamma);

/// |x|^2 over all grid points (with_last_axis = false gives |x_perp|^2).
RealArray radius_squared(const Grid& grid, bool with_last_axis = true);

/// Rectangle-rule integral of a sampled real function.
double integrate(const RealArray& values, const Grid& grid);

}  // namespace qss
