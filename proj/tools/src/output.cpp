#include "qss/cli/output.hpp"

#include <fstream>

namespace qss::cli {

RunOutput::RunOutput(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::error_code ec;
  std::filesystem::create_directories(*dir_, ec);
  if (ec) fail(ErrorKind::io, "cannot create output directory " + dir_->string() + ": " + ec.message());
}

void RunOutput::write_text(const std::string& name, const std::string& content) const {
  if (!dir_) return;
  const auto path = *dir_ / name;
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorKind::io, "cannot write " + path.string());
  out << content;
  if (!out) fail(ErrorKind::io, "failed writing " + path.string());
}

void RunOutput::write_json(const std::string& name, const nlohmann::json& value) const {
  write_text(name, value.dump(2) + "\n");
}

void RunOutput::write_series(const std::string& name, const std::vector<ObservableRecord>& series) const {
  if (!dir_) return;
  write_text(name, series_csv(series));
}

void RunOutput::write_snapshot(const std::string& name, const FieldPair& fields, const Grid& grid,
                               const PhysicsParams& params, double t) const {
  if (!dir_) return;
  save_snapshot(fields, grid, params, t, *dir_ / name);
}

std::string series_csv(const std::vector<ObservableRecord>& series) {
  std::string out = csv_header() + "\n";
  for (const auto& r : series) out += to_csv_row(r) + "\n";
  return out;
}

nlohmann::json to_json(const ObservableRecord& r) {
  nlohmann::json j = {{"t", r.t},          {"M", r.M},         {"E", r.E},
                      {"K", r.K},          {"J", r.J},         {"V", r.V},
                      {"V_perp", r.V_perp}, {"dV", r.dV},      {"dV_perp", r.dV_perp},
                      {"d2V_perp", r.d2V_perp}, {"grad_u_sq", r.grad_u_sq}, {"grad_v_sq", r.grad_v_sq},
                      {"sup_u", r.sup_u},  {"sup_v", r.sup_v}};
  j["d2V"] = r.d2V ? nlohmann::json(*r.d2V) : nlohmann::json(nullptr);
  return j;
}

nlohmann::json to_json(const PohozaevRatios& r) {
  return {{"K_over_J", r.k_over_j},
          {"Kgrad_over_J", r.kgrad_over_j},
          {"I_over_J", r.i_over_j},
          {"E_over_K", r.e_over_k}};
}

}  // namespace qss::cli
