#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "qss/qss.hpp"

namespace qss::cli {

/// Writes run artifacts into an output directory. A default-constructed
/// instance discards everything, which is how the acceptance suite reuses the
/// scenario code without touching the filesystem.
class RunOutput {
 public:
  RunOutput() = default;
  explicit RunOutput(std::filesystem::path dir);

  bool enabled() const noexcept { return dir_.has_value(); }
  const std::optional<std::filesystem::path>& dir() const noexcept { return dir_; }

  void write_text(const std::string& name, const std::string& content) const;
  void write_json(const std::string& name, const nlohmann::json& value) const;
  void write_series(const std::string& name, const std::vector<ObservableRecord>& series) const;
  void write_snapshot(const std::string& name, const FieldPair& fields, const Grid& grid,
                      const PhysicsParams& params, double t) const;

 private:
  std::optional<std::filesystem::path> dir_;
};

std::string series_csv(const std::vector<ObservableRecord>& series);

nlohmann::json to_json(const ObservableRecord& record);
nlohmann::json to_json(const PohozaevRatios& ratios);

}  // namespace qss::cli
