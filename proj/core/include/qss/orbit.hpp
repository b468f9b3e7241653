#pragma once

#include <vector>

#include "qss/fields.hpp"
#include "qss/grid.hpp"

namespace qss {

/// Symmetry action (e^{i theta} P(. + y), e^{2 i theta} Q(. + y)).
///
/// With integer shifts the translation is an exact index roll by shift[j]
/// cells; fractional shifts (in cells) use a spectral phase ramp.
FieldPair apply_orbit(const FieldPair& fields, const Grid& grid, double theta,
                      const std::vector<double>& shift_cells);

struct OrbitMatch {
  double distance = 0.0;
  double theta = 0.0;
  std::vector<double> shift_cells;
};

/// inf over theta and cell shifts y of the H1 x H1 distance between `state`
/// and (e^{i theta} P(. + y), e^{2 i theta} Q(. + y)).
///
/// The best integer shift comes from an FFT cross-correlation followed by a
/// search over the 3^n neighbouring cells. With fractional = true the shift is
/// then refined continuously (golden-section per axis on the spectral
/// correlation), which matters once a perturbed wave drifts by a fraction of
/// a cell.
OrbitMatch orbit_match(const FieldPair& state, const FieldPair& ground_state, const Grid& grid,
                       bool fractional = false);
double orbit_distance(const FieldPair& state, const FieldPair& ground_state, const Grid& grid,
                      bool fractional = false);

/// H1 x H1 norm: int |u|^2 + |grad u|^2 + |v|^2 + |grad v|^2.
double h1_norm(const FieldPair& fields, const Grid& grid);

}  // namespace qss
