#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

namespace innerlab {

struct CheckRecord {
  std::string name;
  std::string status;  // pass, fail or info
  nlohmann::json value;
  nlohmann::json gate;
  nlohmann::json witness;

  friend bool operator==(const CheckRecord&, const CheckRecord&) = default;
};

struct Report {
  std::string schema = "1";
  std::string suite;
  nlohmann::json config = nlohmann::json::object();
  std::vector<CheckRecord> checks;

  /// Adds a pass/fail record; a failing record without a witness gets the
  /// value as its witness.
  void check(std::string name, bool ok, nlohmann::json value, nlohmann::json gate,
             nlohmann::json witness = nullptr);
  void info(std::string name, nlohmann::json value);

  std::size_t count(const std::string& status) const;
  /// fail if any record failed, pass if any passed, info otherwise.
  std::string status() const;
  int exit_code() const { return count("fail") == 0 ? 0 : 1; }

  nlohmann::json to_json() const;
  static Report from_json(const nlohmann::json& j);
  /// suite,name,status,value,gate,witness (cells JSON-encoded)
  std::string to_csv() const;

  friend bool operator==(const Report&, const Report&) = default;
};

enum class ExportFormat { kJson, kCsv };
ExportFormat export_format_from_string(const std::string& s);

/// Writes <dir>/<suite>.json or <dir>/<suite>.csv; returns the path.
std::filesystem::path export_report(const Report& report, ExportFormat format, const std::filesystem::path& dir);
Report import_report(const std::filesystem::path& path);

/// Writes text to a file, throwing std::runtime_error on I/O failure.
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace innerlab
