#include "innerlab/zero_sequence.hpp"

#include <cmath>

namespace innerlab {

std::string to_string(SequenceKind kind) {
  switch (kind) {
    case SequenceKind::kSpiral: return "spiral";
    case SequenceKind::kRadial: return "radial";
    case SequenceKind::kCustom: return "custom";
  }
  return "custom";
}

SequenceKind sequence_kind_from_string(const std::string& s) {
  if (s == "spiral") return SequenceKind::kSpiral;
  if (s == "radial") return SequenceKind::kRadial;
  if (s == "custom") return SequenceKind::kCustom;
  throw UsageError("unknown sequence kind '" + s + "'");
}

ZeroSequence ZeroSequence::spiral(double a, double b, int count) {
  if (!(0.0 < a && a < b && b < 1.0)) throw UsageError("spiral requires 0 < a < b < 1");
  if (count < 1) throw UsageError("sequence length J must be at least 1");
  ZeroSequence s;
  s.kind_ = SequenceKind::kSpiral;
  s.a_ = a;
  s.b_ = b;
  s.accumulation_ = {Complex(1.0, 0.0)};
  for (int j = 1; j <= count; ++j) {
    s.points_.push_back(s.generator_term(j));
    s.defects_.push_back(s.generator_defect(j));
  }
  return s;
}

ZeroSequence ZeroSequence::radial(double a, int count) {
  if (!(0.0 < a && a < 1.0)) throw UsageError("radial requires 0 < a < 1");
  if (count < 1) throw UsageError("sequence length J must be at least 1");
  ZeroSequence s;
  s.kind_ = SequenceKind::kRadial;
  s.a_ = a;
  s.accumulation_ = {Complex(1.0, 0.0)};
  for (int j = 1; j <= count; ++j) {
    s.points_.push_back(s.generator_term(j));
    s.defects_.push_back(s.generator_defect(j));
  }
  return s;
}

ZeroSequence ZeroSequence::custom(std::vector<Complex> points, std::vector<Complex> accumulation) {
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!(std::abs(points[i]) < 1.0)) throw UsageError("zeros must lie in the open disk");
    for (std::size_t l = 0; l < i; ++l) {
      if (points[l] == points[i]) throw UsageError("zeros must be pairwise distinct");
    }
  }
  for (const auto& p : accumulation) {
    if (std::abs(std::abs(p) - 1.0) > 1e-12) throw UsageError("accumulation points must lie on the circle");
  }
  ZeroSequence s;
  for (const auto& p : points) s.defects_.push_back(1.0 - std::abs(p));
  s.points_ = std::move(points);
  s.accumulation_ = std::move(accumulation);
  return s;
}

Complex ZeroSequence::generator_term(int j) const {
  switch (kind_) {
    case SequenceKind::kSpiral:
      return (1.0 - std::pow(a_, j)) * std::polar(1.0, std::pow(b_, j));
    case SequenceKind::kRadial:
      return {1.0 - std::pow(a_, j), 0.0};
    case SequenceKind::kCustom:
      break;
  }
  if (j < 1 || j > size()) throw UsageError("custom sequences have no terms beyond the list");
  return points_[j - 1];
}

double ZeroSequence::generator_defect(int j) const {
  if (is_generated()) return std::pow(a_, j);
  if (j < 1 || j > size()) throw UsageError("custom sequences have no terms beyond the list");
  return defects_[j - 1];
}

ZeroSequence ZeroSequence::truncated(int count) const {
  switch (kind_) {
    case SequenceKind::kSpiral: return spiral(a_, b_, count);
    case SequenceKind::kRadial: return radial(a_, count);
    case SequenceKind::kCustom: break;
  }
  if (count > size()) throw UsageError("custom sequences cannot be extended");
  return custom({points_.begin(), points_.begin() + count}, accumulation_);
}

std::vector<Complex> ZeroSequence::closure_points() const {
  std::vector<Complex> out = points_;
  out.insert(out.end(), accumulation_.begin(), accumulation_.end());
  return out;
}

ZeroSequence gen_sequence(SequenceKind kind, double a, double b, int count,
                          const std::vector<Complex>& custom_points) {
  switch (kind) {
    case SequenceKind::kSpiral: return ZeroSequence::spiral(a, b, count);
    case SequenceKind::kRadial: return ZeroSequence::radial(a, count);
    case SequenceKind::kCustom: break;
  }
  return ZeroSequence::custom(custom_points);
}

double tail_mass(const ZeroSequence& seq, int J) {
  if (J < 0) throw UsageError("tail index must be nonnegative");
  if (seq.is_generated()) {
    // 1 - |z_j| = a^j for both generators.
    return std::pow(seq.a(), J + 1) / (1.0 - seq.a());
  }
  double t = 0.0;
  for (int j = J; j < seq.size(); ++j) t += seq.defect(j);
  return t;
}

nlohmann::json to_json(const ZeroSequence& seq) {
  nlohmann::json j;
  j["schema"] = "1";
  j["kind"] = to_string(seq.kind());
  j["J"] = seq.size();
  nlohmann::json params = nlohmann::json::object();
  if (seq.kind() != SequenceKind::kCustom) params["a"] = seq.a();
  if (seq.kind() == SequenceKind::kSpiral) params["b"] = seq.b();
  j["params"] = params;
  j["points"] = nlohmann::json::array();
  for (const auto& p : seq.points()) j["points"].push_back({p.real(), p.imag()});
  j["accumulation"] = nlohmann::json::array();
  for (const auto& p : seq.accumulation()) j["accumulation"].push_back({p.real(), p.imag()});
  return j;
}

ZeroSequence sequence_from_json(const nlohmann::json& j) {
  const SequenceKind kind = sequence_kind_from_string(j.at("kind").get<std::string>());
  const nlohmann::json params = j.value("params", nlohmann::json::object());
  if (kind == SequenceKind::kSpiral) {
    return ZeroSequence::spiral(params.at("a").get<double>(), params.at("b").get<double>(), j.at("J").get<int>());
  }
  if (kind == SequenceKind::kRadial) return ZeroSequence::radial(params.at("a").get<double>(), j.at("J").get<int>());
  std::vector<Complex> pts, acc;
  for (const auto& p : j.at("points")) pts.emplace_back(p.at(0).get<double>(), p.at(1).get<double>());
  if (j.contains("accumulation")) {
    for (const auto& p : j.at("accumulation")) acc.emplace_back(p.at(0).get<double>(), p.at(1).get<double>());
  }
  return ZeroSequence::custom(std::move(pts), std::move(acc));
}

}  // namespace innerlab
