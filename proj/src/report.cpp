#include "innerlab/report.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "innerlab/core.hpp"

namespace innerlab {

namespace {

std::string csv_cell(const nlohmann::json& j) {
  std::string s = j.is_string() ? j.get<std::string>() : j.dump();
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

void Report::check(std::string name, bool ok, nlohmann::json value, nlohmann::json gate, nlohmann::json witness) {
  if (!ok && witness.is_null()) witness = value;
  checks.push_back({std::move(name), ok ? "pass" : "fail", std::move(value), std::move(gate), std::move(witness)});
}

void Report::info(std::string name, nlohmann::json value) {
  checks.push_back({std::move(name), "info", std::move(value), nullptr, nullptr});
}

std::size_t Report::count(const std::string& status) const {
  std::size_t n = 0;
  for (const auto& c : checks) n += c.status == status ? 1 : 0;
  return n;
}

std::string Report::status() const {
  if (count("fail") > 0) return "fail";
  if (count("pass") > 0) return "pass";
  return "info";
}

nlohmann::json Report::to_json() const {
  nlohmann::json records = nlohmann::json::array();
  for (const auto& c : checks) {
    records.push_back({{"name", c.name}, {"status", c.status}, {"value", c.value}, {"gate", c.gate},
                       {"witness", c.witness}});
  }
  return {
      {"schema", schema},
      {"suite", suite},
      {"config", config},
      {"checks", records},
      {"summary", {{"pass", count("pass")}, {"fail", count("fail")}, {"info", count("info")}, {"status", status()}}},
  };
}

Report Report::from_json(const nlohmann::json& j) {
  Report r;
  r.schema = j.at("schema").get<std::string>();
  if (r.schema != "1") throw UsageError("unsupported report schema '" + r.schema + "'");
  r.suite = j.at("suite").get<std::string>();
  r.config = j.value("config", nlohmann::json::object());
  for (const auto& c : j.at("checks")) {
    r.checks.push_back({c.at("name").get<std::string>(), c.at("status").get<std::string>(), c.value("value", nlohmann::json()),
                        c.value("gate", nlohmann::json()), c.value("witness", nlohmann::json())});
  }
  return r;
}

std::string Report::to_csv() const {
  std::ostringstream os;
  os << "suite,name,status,value,gate,witness\n";
  for (const auto& c : checks) {
    os << csv_cell(suite) << ',' << csv_cell(c.name) << ',' << c.status << ',' << csv_cell(c.value) << ','
       << csv_cell(c.gate) << ',' << csv_cell(c.witness) << '\n';
  }
  return os.str();
}

ExportFormat export_format_from_string(const std::string& s) {
  if (s == "json") return ExportFormat::kJson;
  if (s == "csv") return ExportFormat::kCsv;
  throw UsageError("unknown export format '" + s + "' (expected json or csv)");
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  out << text;
  out.close();
  if (!out) throw std::runtime_error("write to '" + path.string() + "' failed");
}

std::filesystem::path export_report(const Report& report, ExportFormat format, const std::filesystem::path& dir) {
  const bool json = format == ExportFormat::kJson;
  const auto path = dir / (report.suite + (json ? ".json" : ".csv"));
  write_text(path, json ? report.to_json().dump(2) + "\n" : report.to_csv());
  return path;
}

Report import_report(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  return Report::from_json(nlohmann::json::parse(in));
}

}  // namespace innerlab
