#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "innerlab/inner.hpp"
#include "innerlab/rational.hpp"
#include "innerlab/report.hpp"

namespace innerlab {

inline const std::vector<std::string>& suite_ids() {
  static const std::vector<std::string> ids = {"lemma-identities", "matrix-sweep", "admissibility",
                                               "dichotomy",        "criteria-corpus", "covering"};
  return ids;
}

struct SuiteSpec {
  std::string suite;
  nlohmann::json overrides = nlohmann::json::object();
  std::uint64_t seed = 0;
  std::string out_dir;  // empty: no files written

  /// Rejects unknown suites and unknown or ill-typed overrides.
  void validate() const;
};

/// Runs the named battery. Reports carry the resolved parameters and seed in
/// `config`; identical specs give identical check records.
Report run_suite(const SuiteSpec& spec);

/// A product-rule case: polynomial f, Blaschke zeros, power m. Everything is
/// Gaussian-rational so that the exact backend applies.
struct IdentityCase {
  std::vector<GaussRational> zeros;
  std::vector<GaussRational> f;  // coefficients, constant term first
  int m = 1;

  nlohmann::json to_json() const;
  static IdentityCase from_json(const nlohmann::json& j);
};

IdentityCase random_identity_case(std::mt19937_64& rng, int max_zeros, int max_m);

struct IdentityOutcome {
  bool product_rule_exact = true;     // (f B^m)^(m)(z_j) = f(z_j) (B^m)^(m)(z_j) at every zero
  bool induction_exact = true;        // (B^{m+1})^(m+1) = (m+1) (B^m)^(m) B' at every zero
  double product_rule_rel = 0.0;      // floating-point backend, worst zero
  double induction_rel = 0.0;
  int worst_zero = 0;
};
IdentityOutcome check_identities(const IdentityCase& c);

/// |(B^m)^(m)(z_j)| (1 - |z_j|)^m for the zero with index j.
double blaschke_power_ratio(const InnerFunction& b, int j, int m);

}  // namespace innerlab
