#pragma once

#include "qss/grid.hpp"
#include "qss/types.hpp"

namespace qss {

/// Complex state (u, v) sampled on a grid.
struct FieldPair {
  ComplexArray u;
  ComplexArray v;
};

/// Unitary Fourier coefficients of a FieldPair.
struct SpectrumPair {
  ComplexArray u_hat;
  ComplexArray v_hat;
};

FieldPair zero_fields(const Grid& grid);

/// Throws ErrorKind::shape_mismatch unless both arrays hold grid.size() samples.
void require_shape(const FieldPair& fields, const Grid& grid);
void require_shape(const SpectrumPair& spec, const Grid& grid);

bool all_finite(const FieldPair& fields) noexcept;

/// max over the grid of |u| and |v|.
double sup_norm(const ComplexArray& a) noexcept;

FieldPair scaled(const FieldPair& fields, double factor);

}  // namespace qss
