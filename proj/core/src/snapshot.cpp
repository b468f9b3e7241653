#include "qss/snapshot.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "qss/error.hpp"

namespace qss {

namespace {

constexpr char magic[4] = {'Q', 'S', 'S', '1'};

static_assert(std::endian::native == std::endian::little,
              "snapshot encoding assumes a little-endian host");

void append_u32(std::string& out, std::uint32_t value) {
  char buf[4];
  std::memcpy(buf, &value, 4);
  out.append(buf, 4);
}

void append_array(std::string& out, const ComplexArray& a) {
  out.append(reinterpret_cast<const char*>(a.data()), a.size() * sizeof(cplx));
}

}  // namespace

std::string encode_snapshot(const FieldPair& fields, const Grid& grid, const PhysicsParams& params,
                            double t) {
  require_shape(fields, grid);
  nlohmann::json header = {
      {"n", grid.dim()},
      {"points", grid.points()},
      {"lengths", grid.lengths()},
      {"gamma1", params.gamma1},
      {"gamma2", params.gamma2},
      {"beta", params.beta},
      {"omega", params.omega},
      {"t", t},
  };
  const std::string text = header.dump();
  std::string out(magic, 4);
  append_u32(out, static_cast<std::uint32_t>(text.size()));
  out += text;
  out.reserve(out.size() + 2 * grid.size() * sizeof(cplx));
  append_array(out, fields.u);
  append_array(out, fields.v);
  return out;
}

Snapshot decode_snapshot(std::string_view bytes) {
  if (bytes.size() < 8 || std::memcmp(bytes.data(), magic, 4) != 0) {
    fail(ErrorKind::format, "snapshot: missing QSS1 magic");
  }
  std::uint32_t header_len = 0;
  std::memcpy(&header_len, bytes.data() + 4, 4);
  if (bytes.size() - 8 < header_len) fail(ErrorKind::format, "snapshot: truncated header");

  nlohmann::json header;
  try {
    header = nlohmann::json::parse(bytes.substr(8, header_len));
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::format, std::string("snapshot: bad header: ") + e.what());
  }

  auto grid = [&] {
    try {
      return Grid(header.at("n").get<int>(), header.at("points").get<std::vector<int>>(),
                  header.at("lengths").get<std::vector<double>>());
    } catch (const nlohmann::json::exception& e) {
      fail(ErrorKind::format, std::string("snapshot: bad header: ") + e.what());
    }
  }();

  PhysicsParams params;
  double t = 0.0;
  try {
    params.gamma1 = header.at("gamma1").get<double>();
    params.gamma2 = header.at("gamma2").get<double>();
    params.beta = header.at("beta").get<double>();
    params.omega = header.at("omega").get<double>();
    t = header.at("t").get<double>();
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::format, std::string("snapshot: bad header: ") + e.what());
  }

  const std::size_t array_bytes = grid.size() * sizeof(cplx);
  const std::size_t payload = bytes.size() - 8 - header_len;
  if (payload != 2 * array_bytes) {
    std::ostringstream msg;
    msg << "snapshot: payload holds " << payload << " bytes, header shape needs "
        << 2 * array_bytes;
    fail(ErrorKind::shape_mismatch, msg.str());
  }

  Snapshot snap{zero_fields(grid), grid, params, t};
  const char* data = bytes.data() + 8 + header_len;
  std::memcpy(snap.fields.u.data(), data, array_bytes);
  std::memcpy(snap.fields.v.data(), data + array_bytes, array_bytes);
  return snap;
}

void save_snapshot(const FieldPair& fields, const Grid& grid, const PhysicsParams& params, double t,
                   const std::filesystem::path& path) {
  const std::string bytes = encode_snapshot(fields, grid, params, t);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorKind::io, "cannot open " + path.string() + " for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) fail(ErrorKind::io, "failed writing " + path.string());
}

Snapshot load_snapshot(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::io, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return decode_snapshot(buf.str());
}

}  // namespace qss
