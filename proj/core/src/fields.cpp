#include "qss/fields.hpp"

#include <algorithm>
#include <cmath>

#include "qss/error.hpp"

namespace qss {

FieldPair zero_fields(const Grid& grid) {
  return FieldPair{ComplexArray(grid.size()), ComplexArray(grid.size())};
}

void require_shape(const FieldPair& fields, const Grid& grid) {
  if (fields.u.size() != grid.size() || fields.v.size() != grid.size()) {
    fail(ErrorKind::shape_mismatch, "field arrays do not match the grid shape");
  }
}

void require_shape(const SpectrumPair& spec, const Grid& grid) {
  if (spec.u_hat.size() != grid.size() || spec.v_hat.size() != grid.size()) {
    fail(ErrorKind::shape_mismatch, "spectral arrays do not match the grid shape");
  }
}

bool all_finite(const FieldPair& fields) noexcept {
  auto finite = [](const cplx& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); };
  return std::all_of(fields.u.begin(), fields.u.end(), finite) &&
         std::all_of(fields.v.begin(), fields.v.end(), finite);
}

double sup_norm(const ComplexArray& a) noexcept {
  double m = 0.0;
  for (const cplx& z : a) m = std::max(m, std::norm(z));
  return std::sqrt(m);
}

FieldPair scaled(const FieldPair& fields, double factor) {
  FieldPair out = fields;
  for (auto& z : out.u) z *= factor;
  for (auto& z : out.v) z *= factor;
  return out;
}

}  // namespace qss
