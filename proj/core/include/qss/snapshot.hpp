#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "qss/fields.hpp"
#include "qss/grid.hpp"
#include "qss/params.hpp"

namespace qss {

/// Decoded contents of a "QSS1" snapshot file.
///
/// Layout: the magic bytes "QSS1", a little-endian uint32 header length, a
/// UTF-8 JSON header {"n","points","lengths","gamma1","gamma2","beta","omega","t"},
/// then u and v as interleaved (re, im) little-endian binary64 values in
/// row-major order with the last axis fastest.
struct Snapshot {
  FieldPair fields;
  Grid grid;
  PhysicsParams params;
  double t = 0.0;
};

std::string encode_snapshot(const FieldPair& fields, const Grid& grid,
                            const PhysicsParams& params, double t);
Snapshot decode_snapshot(std::string_view bytes);

void save_snapshot(const FieldPair& fields, const Grid& grid, const PhysicsParams& params,
                   double t, const std::filesystem::path& path);
Snapshot load_snapshot(const std::filesystem::path& path);

}  // namespace qss
