#include "innerlab/suites.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>

#include "innerlab/admissible.hpp"
#include "innerlab/cramer.hpp"
#include "innerlab/criteria.hpp"
#include "innerlab/geometry.hpp"

namespace innerlab {

namespace {

using nlohmann::json;

enum class Kind { kInt, kNumber, kArray, kBool };

const std::map<std::string, std::map<std::string, Kind>>& allowed_overrides() {
  static const std::map<std::string, std::map<std::string, Kind>> table = {
      {"lemma-identities",
       {{"cases", Kind::kInt}, {"max_zeros", Kind::kInt}, {"max_m", Kind::kInt}, {"corpus", Kind::kArray},
        {"band_J", Kind::kInt}}},
      {"matrix-sweep", {{"n_max", Kind::kInt}}},
      {"admissibility",
       {{"J_values", Kind::kArray}, {"n_max", Kind::kInt}, {"a_spiral", Kind::kNumber}, {"b_spiral", Kind::kNumber},
        {"a_radial", Kind::kNumber}}},
      {"dichotomy",
       {{"J", Kind::kInt}, {"a_spiral", Kind::kNumber}, {"b_spiral", Kind::kNumber}, {"a_radial", Kind::kNumber}}},
      {"criteria-corpus", {{"boundary_points", Kind::kInt}, {"depth", Kind::kInt}, {"J", Kind::kInt}}},
      {"covering", {{"cases", Kind::kInt}, {"depth", Kind::kInt}, {"grid_q", Kind::kInt}, {"J", Kind::kInt}}},
  };
  return table;
}

bool has_kind(const json& v, Kind k) {
  switch (k) {
    case Kind::kInt: return v.is_number_integer();
    case Kind::kNumber: return v.is_number();
    case Kind::kArray: return v.is_array();
    case Kind::kBool: return v.is_boolean();
  }
  return false;
}

// Resolved parameters: overrides over defaults, echoed into the report.
class Params {
 public:
  Params(const json& overrides, json& echo) : overrides_(overrides), echo_(echo) {}

  template <class T>
  T get(const std::string& key, T fallback) {
    T v = overrides_.contains(key) ? overrides_.at(key).get<T>() : fallback;
    echo_[key] = v;
    return v;
  }

 private:
  const json& overrides_;
  json& echo_;
};

double rel_change(double fine, double coarse) {
  const double scale = std::max(std::abs(fine), std::abs(coarse));
  return scale == 0.0 ? 0.0 : std::abs(fine - coarse) / scale;
}

GaussRational random_gauss(std::mt19937_64& rng, int lo, int hi, int den) {
  std::uniform_int_distribution<int> num(lo, hi);
  return {Rational(num(rng), den), Rational(num(rng), den)};
}

// ---------------------------------------------------------------- suites

void lemma_identities(Report& r, Params& p, std::mt19937_64& rng, const json& overrides) {
  std::vector<IdentityCase> corpus;
  const bool explicit_corpus = overrides.contains("corpus");
  if (explicit_corpus) {
    for (const auto& c : overrides.at("corpus")) corpus.push_back(IdentityCase::from_json(c));
    r.config["corpus_size"] = corpus.size();
  } else {
    const int cases = p.get("cases", 50);
    const int max_zeros = p.get("max_zeros", 8);
    const int max_m = p.get("max_m", 4);
    for (int i = 0; i < cases; ++i) corpus.push_back(random_identity_case(rng, max_zeros, max_m));
  }
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const IdentityOutcome o = check_identities(corpus[i]);
    const std::string tag = "[" + std::to_string(i) + "]";
    const json witness = {{"case", corpus[i].to_json()}, {"zero", o.worst_zero}};
    r.check("product_rule_exact" + tag, o.product_rule_exact, o.product_rule_exact, "exact",
            o.product_rule_exact ? json() : witness);
    r.check("product_rule_float" + tag, o.product_rule_rel <= 1e-11, o.product_rule_rel, 1e-11, witness);
    r.check("power_induction_exact" + tag, o.induction_exact, o.induction_exact, "exact",
            o.induction_exact ? json() : witness);
    r.check("power_induction_float" + tag, o.induction_rel <= 1e-11, o.induction_rel, 1e-11, witness);
  }
  if (explicit_corpus) return;

  // Comparability band of |(B^m)^(m)(z_j)| (1 - |z_j|)^m on a radial truncation.
  const int band_J = p.get("band_J", 40);
  const ZeroSequence seq = ZeroSequence::radial(0.5, band_J);
  const InnerFunction b = InnerFunction::blaschke(seq);
  const int last = std::min(35, band_J - 5);
  for (int m = 1; m <= 3 && last >= 5; ++m) {
    double lo = INFINITY, hi = 0.0;
    for (int j = 5; j <= last; ++j) {
      const double v = blaschke_power_ratio(b, j - 1, m);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    const double spread = hi / lo;
    r.check("power_derivative_band[m=" + std::to_string(m) + "]", spread >= 1e-3 && spread <= 1e3,
            {{"min", lo}, {"max", hi}, {"max_over_min", spread}}, json::array({1e-3, 1e3}));
  }
}

void matrix_sweep(Report& r, Params& p) {
  const int n_max = p.get("n_max", 12);
  if (n_max < 1 || n_max > 30) throw UsageError("n_max must lie in 1..30");
  for (int n = 1; n <= n_max; ++n) {
    for (int k = n / 2 + 1; k <= n; ++k) {
      const RationalMatrix m = build_M(k, n);
      const Rational det = det_exact(m);
      const std::string tag = "[k=" + std::to_string(k) + ",n=" + std::to_string(n) + "]";
      r.check("det_nonzero" + tag, det != 0, to_string(det), "!= 0");
      RationalVector rhs(m.rows());
      for (Eigen::Index s = 0; s < rhs.size(); ++s) rhs[s] = Rational(static_cast<long>(s + 1), static_cast<long>(k + 1));
      const auto cr = cramer_solve(m, rhs);
      const RationalVector ge = gauss_solve(m, rhs);
      r.check("cramer_matches_elimination" + tag, cr.unknowns == ge, cr.unknowns == ge, "exact");
    }
  }
  if (n_max >= 3) {
    const Rational d = det_exact(build_M(2, 3));
    r.check("det_M(2,3)", d == Rational(1, 12), to_string(d), "1/12");
  }
  if (n_max >= 4) {
    const Rational d = det_exact(build_M(3, 4));
    r.check("det_M(3,4)", d == Rational(1, 144), to_string(d), "1/144");
  }
}

void admissibility(Report& r, Params& p) {
  const std::vector<int> js = p.get("J_values", std::vector<int>{5, 20, 40});
  const int n_max = p.get("n_max", 4);
  const double as = p.get("a_spiral", 0.25), bs = p.get("b_spiral", 0.5), ar = p.get("a_radial", 0.5);
  for (int J : js) {
    for (const ZeroSequence& seq : {ZeroSequence::spiral(as, bs, J), ZeroSequence::radial(ar, J)}) {
      for (int n = 0; n <= n_max; ++n) {
        for (int k = 0; k <= n; ++k) {
          for (double frac : {0.25, 0.5, 0.75, 1.0}) {
            const double alpha = n + frac;
            const JetData data = build_delta_jet(seq, k, alpha);
            const AdmissibilityReport a = check_admissible(data, 1.0 + 1e-12);
            char tag[96];
            std::snprintf(tag, sizeof tag, "[%s J=%d k=%d n=%d alpha=%.2f]", to_string(seq.kind()).c_str(), J, k, n,
                          alpha);
            r.check(std::string("delta_jet_certificate") + tag, a.pass, a.c_min, 1.0 + 1e-12,
                    a.pass ? json() : to_json(a, data)["witness"]);
          }
        }
      }
    }
  }
}

void dichotomy(Report& r, Params& p) {
  const int J = p.get("J", 30);
  const double as = p.get("a_spiral", 0.25), bs = p.get("b_spiral", 0.5), ar = p.get("a_radial", 0.5);
  const ZeroSequence spiral = ZeroSequence::spiral(as, bs, J);
  const ZeroSequence radial = ZeroSequence::radial(ar, J);
  const RatioResult sr = v1_ratio(spiral);
  const RatioResult rr = v1_ratio(radial);

  bool increasing = true;
  int bad = -1;
  for (int j = 1; j < J; ++j) {
    if (sr.edge[j]) break;
    if (!(sr.ratios[j] > sr.ratios[j - 1])) {
      increasing = false;
      bad = j + 1;
      break;
    }
  }
  r.check("spiral_ratios_increasing", increasing, increasing, "strict", bad < 0 ? json() : json({{"j", bad}}));
  r.check("spiral_ratio_max", sr.max > 1e6, sr.max, "> 1e6", {{"j", sr.argmax + 1}});

  double worst = 0.0;
  int worst_j = 0;
  for (int j = 0; j < J; ++j) {
    if (rr.edge[j]) continue;
    const double dev = std::abs(rr.ratios[j] - (1.0 - ar));
    if (dev > worst) {
      worst = dev;
      worst_j = j + 1;
    }
  }
  r.check("radial_ratios_constant", worst <= 1e-12, worst, 1e-12, {{"j", worst_j}});
  r.info("spiral_tail_mass", tail_mass(spiral, J));
  r.info("radial_tail_mass", tail_mass(radial, J));
}

void criteria_corpus(Report& r, Params& p, std::mt19937_64& rng) {
  const int points = p.get("boundary_points", 1 << 14);
  const int depth = p.get("depth", 12);
  const int J = p.get("J", 30);
  if (points < 4) throw UsageError("boundary_points must be at least 4");
  const BoundaryGrid fine{points}, coarse{points / 2};
  const InnerFunction unit_atom = InnerFunction::singular({{Complex(1.0, 0.0), 1.0}});
  const InnerFunction ident = InnerFunction::identity();
  const InnerFunction half = InnerFunction::from_zeros({Complex(0.5, 0.0)});
  const AnalyticExpr one_minus_z = constant(1.0) - identity();

  const CriterionReport bc = boundary_crit(pow(one_minus_z, 2), unit_atom, 1, fine);
  r.check("boundary_crit[(1-z)^2, atom, N=1]", std::abs(bc.sup - 2.0) <= 1e-9, bc.sup, "2 +- 1e-9", bc.to_json());
  const CriterionReport bc1 = boundary_crit(constant(1.0), ident, 3, fine);
  r.check("boundary_crit[1, z, N=3]", std::abs(bc1.sup - 1.0) <= 1e-12, bc1.sup, "1 +- 1e-12", bc1.to_json());
  const CriterionReport bcg = boundary_crit(one_minus_z, unit_atom, 1, fine);
  r.check("boundary_crit[1-z, atom, N=1] flags growth", bcg.verdict != "bounded",
          {{"sup", bcg.sup}, {"coarse_sup", bcg.coarse_sup}, {"verdict", bcg.verdict}}, "not bounded",
          bcg.to_json());

  struct ShiderCase {
    std::string name;
    InnerFunction theta;
    int l;
  };
  for (const ShiderCase& c : {ShiderCase{"z, l=1", ident, 1}, ShiderCase{"atom, l=1", unit_atom, 1},
                              ShiderCase{"zero 1/2, l=2", half, 2}}) {
    const CriterionReport a = shider_sup(c.theta, c.l, coarse);
    const CriterionReport b = shider_sup(c.theta, c.l, fine);
    const double change = rel_change(b.sup, a.sup);
    r.check("shider_sup_stable[" + c.name + "]", change <= 0.1,
            {{"sup_fine", b.sup}, {"sup_coarse", a.sup}, {"rel_change", change}}, 0.1, b.to_json());
  }

  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Complex> poly(4);
  for (auto& c : poly) c = Complex(u(rng), u(rng));
  const InnerFunction three = InnerFunction::from_zeros({Complex(0.3, 0.2), Complex(-0.5, 0.1), Complex(0.1, -0.6)});
  struct LeibnizCase {
    std::string name;
    AnalyticExpr f;
    InnerFunction theta;
    int N;
  };
  for (const LeibnizCase& c : {LeibnizCase{"1, z, N=1", constant(1.0), ident, 1},
                               LeibnizCase{"(1-z)^2, atom, N=1", pow(one_minus_z, 2), unit_atom, 1},
                               LeibnizCase{"random cubic, 3 zeros, N=2", polynomial(poly), three, 2}}) {
    const LeibnizReport a = leibniz_terms(c.f, c.theta, c.N, coarse);
    const LeibnizReport b = leibniz_terms(c.f, c.theta, c.N, fine);
    r.check("leibniz_sum[" + c.name + "]", b.max_sum_rel_error <= 1e-11, b.max_sum_rel_error, 1e-11);
    double worst = 0.0;
    for (int l = 0; l <= c.N; ++l) {
      worst = std::max(worst, rel_change(b.products[l].sup, a.products[l].sup));
      worst = std::max(worst, rel_change(b.scaled[l].sup, a.scaled[l].sup));
    }
    r.check("leibniz_terms_stable[" + c.name + "]", worst <= 0.1, worst, 0.1, b.to_json());
  }

  // Zero-decay profiles on matched tables.
  const double alpha = 2.5;
  const int k = 2;
  const ZeroSequence spiral = ZeroSequence::spiral(0.25, 0.5, J);
  const ZeroSequence radial = ZeroSequence::radial(0.5, J);
  for (const ZeroSequence& seq : {spiral, radial}) {
    const DecayProfile prof = zero_decay_profile(delta_table(seq, k, alpha), seq, k, alpha);
    const double dev = std::max(std::abs(prof.r1_max - 1.0), std::abs(prof.r1_min - 1.0));
    r.check("decay_r1_matched[" + to_string(seq.kind()) + "]", dev <= 1e-12 && prof.r1_verdict == "comparable",
            {{"deviation", dev}, {"verdict", prof.r1_verdict}}, 1e-12);
  }
  const DecayProfile sp = zero_decay_profile(delta_table(spiral, k, alpha), spiral, k, alpha);
  r.check("decay_r2_spiral_divergent", sp.r2_max > 1e2 && sp.r2_verdict == "divergent",
          {{"r2_max", sp.r2_max}, {"verdict", sp.r2_verdict}}, "> 1e2, divergent");
  const DecayProfile rp = zero_decay_profile(delta_table(radial, k, alpha), radial, k, alpha);
  const double target = std::pow(0.5, alpha - k);
  const double dev = std::max(std::abs(rp.r2_max - target), std::abs(rp.r2_min - target));
  r.check("decay_r2_radial_constant", dev <= 1e-12 && rp.r2_verdict == "bounded",
          {{"deviation", dev}, {"verdict", rp.r2_verdict}}, 1e-12);

  // Interior estimators against their radial closed forms.
  GridSpec g{depth, 64, 16};
  const double eps = 0.1;
  const CriterionReport ds = decrease_sup(pow(identity(), 2), ident, eps, 2.0, g);
  const double ds_exact = std::pow(eps / (1.0 - eps), 2);
  r.check("decrease_sup[z^2, z]", ds.sup <= ds_exact && ds.sup >= 0.7 * ds_exact, ds.sup,
          {{"closed_form", ds_exact}, {"band", "[0.7, 1] x closed form"}}, ds.to_json());
  const CriterionReport dd = derivative_decrease(identity(), ident, 0.2, 1.5, 1, g);
  const double dd_exact = 1.0 / std::sqrt(0.9);
  r.check("derivative_decrease[z, z]", dd.sup <= dd_exact && dd.sup >= 0.95 * dd_exact, dd.sup,
          {{"closed_form", dd_exact}, {"band", "[0.95, 1] x closed form"}}, dd.to_json());

  // Decrease on Omega(theta, eps) together with the derivative bound on Omega(theta, eps/2).
  const InnerFunction b2 = InnerFunction::from_zeros({Complex(0.5, 0.0), Complex(-0.3, 0.4)});
  const AnalyticExpr probe = pow(b2.to_expr(), 3) * polynomial({1.0, 0.5, Complex(0.0, 0.25)});
  GridSpec coarse_grid{depth, 8, 16};
  const CriterionReport pa = decrease_sup(probe, b2, 0.3, 1.5, coarse_grid);
  const CriterionReport pb = derivative_decrease(probe, b2, 0.3, 1.5, 1, coarse_grid);
  r.check("decrease_implies_derivative_decrease",
          std::isfinite(pa.sup) && std::isfinite(pb.sup) && pa.verdict == "bounded" && pb.verdict == "bounded",
          {{"decrease_sup", pa.sup}, {"derivative_sup", pb.sup}, {"verdicts", {pa.verdict, pb.verdict}}},
          "both finite and bounded");
  const CriterionReport horo = derivative_decrease(pow1m(1.5), unit_atom, 0.3, 1.5, 1, coarse_grid);
  r.info("derivative_decrease[(1-z)^1.5, atom]", horo.to_json());
}

void covering(Report& r, Params& p, std::mt19937_64& rng) {
  const int cases = p.get("cases", 10);
  const int depth = p.get("depth", 10);
  const int grid_q = p.get("grid_q", 12);
  const int J = p.get("J", 20);
  std::uniform_real_distribution<double> radius(0.0, 0.95), angle(0.0, kTwoPi);
  std::uniform_int_distribution<int> count(1, 4);
  const GridSpec g{depth, 8, 16};
  for (int i = 0; i < cases; ++i) {
    // A pair whose small sublevel set misses every grid point says nothing,
    // so such pairs are redrawn (the count is reported).
    int redraws = -1;
    std::vector<CoveringReport> reports;
    while (reports.empty() || reports[0].empty || reports[1].empty) {
      if (++redraws > 100) throw std::runtime_error("covering: no pair with a nonempty sample after 100 draws");
      std::vector<Complex> z1(count(rng)), z2(count(rng));
      for (auto& z : z1) z = std::polar(std::sqrt(radius(rng)), angle(rng));
      for (auto& z : z2) z = std::polar(std::sqrt(radius(rng)), angle(rng));
      const InnerFunction b1 = InnerFunction::from_zeros(z1), b2 = InnerFunction::from_zeros(z2);
      reports = {covering_profile(b1, b2, 0.04, g), covering_profile(b1, b2, 0.25, g)};
    }
    for (const CoveringReport& c : reports) {
      char tag[64];
      std::snprintf(tag, sizeof tag, "[case=%d eps=%.2f]", i, c.eps);
      r.check(std::string("splitting") + tag, c.split_failures == 0 && !c.empty,
              {{"samples", c.samples}, {"failures", c.split_failures}, {"redraws", redraws}},
              "0 failures on a nonempty sample", c.to_json());
    }
  }

  const CoveringReport triv = covering_profile(InnerFunction::identity(), InnerFunction(), 0.1, g);
  r.check("covering[z, 1, eps=0.1]", triv.lambda <= 0.1 && triv.split_failures == 0, triv.lambda, "<= 0.1");

  const ZeroSequence seq = ZeroSequence::radial(0.5, J);
  std::vector<Complex> odd, even;
  for (int j = 0; j < J; ++j) (j % 2 == 0 ? odd : even).push_back(seq[j]);
  const InnerFunction bo = InnerFunction::from_zeros(odd), be = InnerFunction::from_zeros(even);
  const CoveringReport fine = covering_profile(bo, be, 0.1, GridSpec{grid_q, 8, 16});
  const CoveringReport coarse = covering_profile(bo, be, 0.1, GridSpec{grid_q - 1, 8, 16});
  const double diff = std::abs(fine.lambda - coarse.lambda);
  r.check("covering_lambda[radial odd/even, eps=0.1]", fine.lambda < 1.0 && diff <= 0.02,
          {{"lambda", fine.lambda}, {"lambda_coarser_grid", coarse.lambda}, {"difference", diff}}, "< 1, +- 0.02",
          fine.to_json());
  r.info("covering_constants[radial odd/even]", {{"c_distance", fine.c_distance}, {"c_defect", fine.c_defect},
                                                  {"split_failures", fine.split_failures}});
}

}  // namespace

void SuiteSpec::validate() const {
  const auto& table = allowed_overrides();
  const auto it = table.find(suite);
  if (it == table.end()) throw UsageError("unknown suite '" + suite + "'");
  if (!overrides.is_object()) throw UsageError("suite overrides must be a JSON object");
  for (const auto& [key, value] : overrides.items()) {
    const auto k = it->second.find(key);
    if (k == it->second.end()) throw UsageError("suite '" + suite + "' has no parameter '" + key + "'");
    if (!has_kind(value, k->second)) throw UsageError("suite parameter '" + key + "' has the wrong type");
  }
}

Report run_suite(const SuiteSpec& spec) {
  spec.validate();
  Report r;
  r.suite = spec.suite;
  r.config = {{"suite", spec.suite}, {"seed", spec.seed}};
  json params = json::object();
  Params p(spec.overrides, params);
  std::mt19937_64 rng(spec.seed);
  if (spec.suite == "lemma-identities") lemma_identities(r, p, rng, spec.overrides);
  if (spec.suite == "matrix-sweep") matrix_sweep(r, p);
  if (spec.suite == "admissibility") admissibility(r, p);
  if (spec.suite == "dichotomy") dichotomy(r, p);
  if (spec.suite == "criteria-corpus") criteria_corpus(r, p, rng);
  if (spec.suite == "covering") covering(r, p, rng);
  r.config["params"] = params;
  if (!spec.out_dir.empty()) {
    export_report(r, ExportFormat::kJson, spec.out_dir);
    export_report(r, ExportFormat::kCsv, spec.out_dir);
  }
  return r;
}

// ---------------------------------------------------------------- identities

nlohmann::json IdentityCase::to_json() const {
  auto q = [](const GaussRational& g) { return json::array({to_string(g.real()), to_string(g.imag())}); };
  json zs = json::array(), fs = json::array();
  for (const auto& z : zeros) zs.push_back(q(z));
  for (const auto& c : f) fs.push_back(q(c));
  return {{"zeros", zs}, {"f", fs}, {"m", m}};
}

IdentityCase IdentityCase::from_json(const nlohmann::json& j) {
  auto q = [](const json& v) {
    if (v.at(0).is_string()) return GaussRational(Rational(v.at(0).get<std::string>()), Rational(v.at(1).get<std::string>()));
    return GaussRational::from_complex({v.at(0).get<double>(), v.at(1).get<double>()});
  };
  IdentityCase c;
  for (const auto& z : j.at("zeros")) c.zeros.push_back(q(z));
  for (const auto& v : j.at("f")) c.f.push_back(q(v));
  c.m = j.at("m").get<int>();
  if (c.m < 0) throw UsageError("identity case power m must be nonnegative");
  for (const auto& z : c.zeros) {
    if (!(z.norm() < 1)) throw UsageError("identity case zeros must lie in the open disk");
  }
  return c;
}

IdentityCase random_identity_case(std::mt19937_64& rng, int max_zeros, int max_m) {
  if (max_zeros < 1 || max_m < 1) throw UsageError("identity cases need at least one zero and m >= 1");
  std::uniform_int_distribution<int> nz(1, max_zeros), mm(1, max_m), deg(0, 6);
  std::uniform_int_distribution<int> den_pick(0, 3);
  static const int dens[] = {1, 2, 3, 8};
  IdentityCase c;
  c.m = mm(rng);
  const int count = nz(rng);
  while (static_cast<int>(c.zeros.size()) < count) {
    const GaussRational z = random_gauss(rng, -14, 14, 16);
    if (!(z.norm() < Rational(81, 100))) continue;
    if (std::find(c.zeros.begin(), c.zeros.end(), z) != c.zeros.end()) continue;
    c.zeros.push_back(z);
  }
  const int d = deg(rng);
  for (int i = 0; i <= d; ++i) c.f.push_back(random_gauss(rng, -5, 5, dens[den_pick(rng)]));
  return c;
}

IdentityOutcome check_identities(const IdentityCase& c) {
  IdentityOutcome out;
  const int m = c.m;
  const int order = m + 1;
  std::vector<Complex> fz, zc;
  for (const auto& v : c.f) fz.push_back(v.to_complex());
  for (const auto& z : c.zeros) zc.push_back(z.to_complex());

  for (std::size_t j = 0; j < c.zeros.size(); ++j) {
    // Exact backend, bare Möbius factors.
    const GaussRational& w = c.zeros[j];
    JetQ bq = JetQ::constant(w, order, GaussRational(1));
    for (const auto& a : c.zeros) bq *= mobius_jet<GaussRational>(a, EvalPoint<GaussRational>::interior(w), order, false);
    const JetQ fq = polynomial_jet<GaussRational>(c.f, w, order);
    const JetQ bm = pow(bq, m);
    const JetQ bm1 = pow(bq, m + 1);
    const bool rule = (fq * bm).derivative(m) == fq.value() * bm.derivative(m);
    const bool induct = bm1.derivative(m + 1) == GaussRational(m + 1) * bm.derivative(m) * bq.derivative(1);

    // Floating-point backend, normalized factors.
    const Complex wc = zc[j];
    JetC bc = JetC::constant(wc, order, 1.0);
    for (const auto& a : zc) bc *= mobius_jet<Complex>(a, EvalPoint<Complex>::interior(wc), order, true);
    const JetC fc = polynomial_jet<Complex>(fz, wc, order);
    const JetC bcm = pow(bc, m), bcm1 = pow(bc, m + 1);
    const Complex lhs = (fc * bcm).derivative(m);
    const Complex rhs = fc.value() * bcm.derivative(m);
    double mass = 0.0;
    for (int l = 0; l <= m; ++l) mass += binomial(m, l) * std::abs(fc.derivative(m - l) * bcm.derivative(l));
    const double rule_rel = mass == 0.0 ? 0.0 : std::abs(lhs - rhs) / mass;
    const Complex ilhs = bcm1.derivative(m + 1);
    const Complex irhs = static_cast<double>(m + 1) * bcm.derivative(m) * bc.derivative(1);
    const double iscale = std::max(std::abs(ilhs), std::abs(irhs));
    const double ind_rel = iscale == 0.0 ? 0.0 : std::abs(ilhs - irhs) / iscale;

    const bool worse = (!rule && out.product_rule_exact) || (!induct && out.induction_exact) ||
                       rule_rel > out.product_rule_rel || ind_rel > out.induction_rel;
    if (worse) out.worst_zero = static_cast<int>(j);
    out.product_rule_exact = out.product_rule_exact && rule;
    out.induction_exact = out.induction_exact && induct;
    out.product_rule_rel = std::max(out.product_rule_rel, rule_rel);
    out.induction_rel = std::max(out.induction_rel, ind_rel);
  }
  return out;
}

double blaschke_power_ratio(const InnerFunction& b, int j, int m) {
  if (j < 0 || j >= static_cast<int>(b.zeros().size())) throw UsageError("zero index out of range");
  if (m < 1) throw UsageError("power m must be at least 1");
  const JetC jet = inner_jet(b, b.zeros()[j], m);
  return std::abs(pow(jet, m).derivative(m)) * std::pow(b.zero_defects()[j], m);
}

}  // namespace innerlab
