#pragma once

#include <memory>

#include "qss/fields.hpp"
#include "qss/grid.hpp"

namespace qss {

namespace detail {
struct PlanPair;
}

/// Unitary n-dimensional discrete Fourier transform over a grid shape.
///
/// Both directions carry a factor 1/sqrt(N), so sum |f|^2 = sum |f_hat|^2 and
/// integral |f|^2 = cell_volume * sum |f_hat|^2. Plans are shared between
/// instances of the same shape and execution is reentrant.
class Fft {
 public:
  explicit Fft(const Grid& grid);

  void forward(ComplexArray& data) const;
  void inverse(ComplexArray& data) const;

  std::size_t size() const noexcept { return size_; }

 private:
  std::shared_ptr<const detail::PlanPair> plans_;
  std::size_t size_;
  double scale_;
};

SpectrumPair forward_transform(const FieldPair& fields, const Grid& grid);
FieldPair inverse_transform(const SpectrumPair& spec, const Grid& grid);

/// Multiplies spectral data by i k_axis. The Nyquist mode is dropped so that
/// derivatives of real fields stay real.
ComplexArray spectral_derivative(const ComplexArray& spec, const Grid& grid, int axis);

/// Integrals of |d_j f|^2 for every axis j, evaluated from spectral data.
std::vector<double> gradient_norms(const ComplexArray& spec, const Grid& grid);

}  // namespace qss
