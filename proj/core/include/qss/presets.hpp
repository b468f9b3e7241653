#pragma once

#include <filesystem>
#include <variant>
#include <vector>

#include "qss/fields.hpp"
#include "qss/grid.hpp"

namespace qss {

/// u = a_u exp(-|x|^2 / (2 sigma^2)), v = a_v exp(-|x|^2 / (2 sigma^2)).
struct GaussianPreset {
  double amplitude_u = 1.0;
  double amplitude_v = 1.0;
  double width = 1.0;
};

/// u = a_u exp(i k.x), v = a_v exp(2i k.x) with k_j = 2 pi m_j / L_j.
struct PlaneWavePreset {
  std::vector<int> mode;
  double amplitude_u = 1.0;
  double amplitude_v = 0.0;
};

/// Fields read from a QSS1 snapshot on the same grid, multiplied by scale.
struct GroundStateFilePreset {
  std::filesystem::path path;
  double scale = 1.0;
};

using Preset = std::variant<GaussianPreset, PlaneWavePreset, GroundStateFilePreset>;

FieldPair sample_preset(const Grid& grid, const Preset& preset);

}  // namespace qss
