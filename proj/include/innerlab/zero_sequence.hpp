#pragma once

#include <string>
#include <vector>

#include "innerlab/core.hpp"
#include "json.hpp"

namespace innerlab {

enum class SequenceKind { kSpiral, kRadial, kCustom };

std::string to_string(SequenceKind kind);
SequenceKind sequence_kind_from_string(const std::string& s);

/// Ordered, pairwise distinct zeros in the open disk, with the generator that
/// produced them and the boundary accumulation points of the full sequence.
///
/// Generators: spiral z_j = (1 - a^j) exp(i b^j) with 0 < a < b < 1, and
/// radial z_j = 1 - a^j with 0 < a < 1, for j = 1..J. Both accumulate at 1.
class ZeroSequence {
 public:
  static ZeroSequence spiral(double a, double b, int count);
  static ZeroSequence radial(double a, int count);
  static ZeroSequence custom(std::vector<Complex> points, std::vector<Complex> accumulation = {});

  SequenceKind kind() const { return kind_; }
  double a() const { return a_; }
  double b() const { return b_; }
  int size() const { return static_cast<int>(points_.size()); }
  const std::vector<Complex>& points() const { return points_; }
  const Complex& operator[](int j) const { return points_[j]; }
  /// 1 - |z_j|, exact for generated sequences (a^j). Spiral terms with
  /// a^j below the double epsilon round onto the circle, so all boundary
  /// distances must come from here rather than from |z_j|.
  double defect(int j) const { return defects_[j]; }
  const std::vector<double>& defects() const { return defects_; }
  const std::vector<Complex>& accumulation() const { return accumulation_; }
  bool is_generated() const { return kind_ != SequenceKind::kCustom; }

  /// The j-th term of the generator (1-based), beyond the truncation if needed.
  Complex generator_term(int j) const;
  double generator_defect(int j) const;

  /// Same generator, different truncation depth.
  ZeroSequence truncated(int count) const;

  /// Points together with the declared accumulation points.
  std::vector<Complex> closure_points() const;

 private:
  SequenceKind kind_ = SequenceKind::kCustom;
  double a_ = 0.0;
  double b_ = 0.0;
  std::vector<Complex> points_;
  std::vector<double> defects_;
  std::vector<Complex> accumulation_;
};

ZeroSequence gen_sequence(SequenceKind kind, double a, double b, int count,
                          const std::vector<Complex>& custom_points = {});

/// sum_{j > J} (1 - |z_j|); closed form for generated sequences.
double tail_mass(const ZeroSequence& seq, int J);

// {kind, params, J, points?}
nlohmann::json to_json(const ZeroSequence& seq);
ZeroSequence sequence_from_json(const nlohmann::json& j);

}  // namespace innerlab
