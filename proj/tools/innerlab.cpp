// innerlab: command-line workbench over the library.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "innerlab/admissible.hpp"
#include "innerlab/cramer.hpp"
#include "innerlab/criteria.hpp"
#include "innerlab/geometry.hpp"
#include "innerlab/inner.hpp"
#include "innerlab/suites.hpp"

using namespace innerlab;
using nlohmann::json;

namespace {

// Flag values override the config file, which overrides the defaults. Every
// resolved value is echoed into the output document.
struct Settings {
  json file = json::object();
  json echo = json::object();

  template <class T>
  T get(const std::string& key, const std::optional<T>& flag, T fallback) {
    T v = flag ? *flag : file.contains(key) ? file.at(key).get<T>() : fallback;
    echo[key] = v;
    return v;
  }
};

struct Flags {
  std::optional<std::string> seq, format, out, config, suite, criterion, z, rhs, in;
  std::optional<double> a, b, alpha, eps;
  std::optional<int> J, k, n, depth, grid_q, order, N, l, boundary_log2;
  std::optional<std::uint64_t> seed;
  bool exploration = false;
};

Settings load_settings(const Flags& f) {
  Settings s;
  if (f.config) {
    std::ifstream in(*f.config);
    if (!in) throw std::runtime_error("cannot open config '" + *f.config + "'");
    s.file = json::parse(in);
    if (!s.file.is_object()) throw UsageError("config file must hold a JSON object");
    s.echo["config_file"] = *f.config;
  }
  return s;
}

ZeroSequence sequence_from(Settings& s, const Flags& f) {
  const std::string kind = s.get<std::string>("seq", f.seq, "radial");
  const int J = s.get("J", f.J, 20);
  if (kind == "custom") {
    if (!s.file.contains("points")) throw UsageError("custom sequences need 'points' in the config file");
    std::vector<Complex> pts, acc;
    for (const auto& p : s.file.at("points")) pts.emplace_back(p.at(0).get<double>(), p.at(1).get<double>());
    for (const auto& p : s.file.value("accumulation", json::array()))
      acc.emplace_back(p.at(0).get<double>(), p.at(1).get<double>());
    s.echo["points"] = s.file.at("points");
    return ZeroSequence::custom(std::move(pts), std::move(acc));
  }
  const SequenceKind k = sequence_kind_from_string(kind);
  const double a = s.get("a", f.a, k == SequenceKind::kSpiral ? 0.25 : 0.5);
  const double b = k == SequenceKind::kSpiral ? s.get("b", f.b, 0.5) : 0.0;
  return gen_sequence(k, a, b, J);
}

Complex parse_point(const std::string& text) {
  std::stringstream ss(text);
  double re = 0.0, im = 0.0;
  char comma = 0;
  ss >> re;
  if (ss >> comma) {
    if (comma != ',' || !(ss >> im)) throw UsageError("points are written re,im");
  }
  return {re, im};
}

void emit(const std::string& text, const std::optional<std::string>& out, const std::string& name) {
  if (!out) {
    std::cout << text;
    return;
  }
  write_text(std::filesystem::path(*out) / name, text);
  std::cout << (std::filesystem::path(*out) / name).string() << '\n';
}

std::string with_config(json doc, const Settings& s) {
  doc["config"] = s.echo;
  return doc.dump(2) + "\n";
}

std::string format_of(Settings& s, const Flags& f) {
  const std::string fmt = s.get<std::string>("format", f.format, "json");
  export_format_from_string(fmt);
  return fmt;
}

int cmd_gen(const Flags& f) {
  Settings s = load_settings(f);
  const ZeroSequence seq = sequence_from(s, f);
  json doc = to_json(seq);
  doc["tail_mass"] = tail_mass(seq, seq.size());
  emit(with_config(doc, s), f.out, "sequence.json");
  return 0;
}

int cmd_geom(const Flags& f) {
  Settings s = load_settings(f);
  const ZeroSequence seq = sequence_from(s, f);
  const int depth = s.get("depth", f.depth, 6);
  const std::string fmt = format_of(s, f);
  const GeometryReport g = geometry_report(seq, depth);
  if (f.out) {
    emit(g.table_csv(), f.out, "geometry.csv");
    emit(with_config(g.scalars_json(), s), f.out, "geometry.json");
  } else {
    std::cout << (fmt == "csv" ? g.table_csv() : with_config(g.scalars_json(), s));
  }
  return 0;
}

InnerFunction theta_from(Settings& s, const Flags& f) {
  if (s.file.contains("theta")) {
    s.echo["theta"] = s.file.at("theta");
    return inner_from_json(s.file.at("theta"));
  }
  return InnerFunction::blaschke(sequence_from(s, f));
}

int cmd_inner(const Flags& f) {
  Settings s = load_settings(f);
  const InnerFunction theta = theta_from(s, f);
  json doc = {{"schema", kSchemaVersion}, {"theta", to_json(theta)}};
  if (f.z || s.file.contains("z")) {
    const Complex z = parse_point(s.get<std::string>("z", f.z, "0"));
    const int order = s.get("order", f.order, 2);
    const JetC jet = inner_jet(theta, z, order);
    json coeffs = json::array(), derivs = json::array();
    for (int i = 0; i <= order; ++i) {
      coeffs.push_back({jet.coeff(i).real(), jet.coeff(i).imag()});
      derivs.push_back({jet.derivative(i).real(), jet.derivative(i).imag()});
    }
    const Complex v = eval_inner(theta, z);
    doc["value"] = {v.real(), v.imag()};
    doc["jet"] = {{"center", {z.real(), z.imag()}}, {"order", order}, {"coeffs", coeffs}, {"derivatives", derivs}};
    if (std::abs(std::abs(z) - 1.0) < 1e-12) {
      const DTau dt = d_tau(theta, z);
      doc["boundary_deriv_modulus"] = boundary_deriv_modulus(theta, z);
      doc["d"] = dt.d;
      doc["tau"] = dt.tau;
      doc["empty_spectrum"] = dt.empty_spectrum;
    }
  }
  if (f.eps || s.file.contains("eps")) {
    const double eps = s.get("eps", f.eps, 0.1);
    GridSpec grid;
    grid.depth = s.get("grid_q", f.grid_q, grid.depth);
    const SublevelSample sample = sample_sublevel(theta, eps, grid);
    doc["sublevel"] = {{"eps", eps}, {"grid", grid.describe()}, {"size", sample.size()}};
    if (f.out) emit(sample.to_csv(), f.out, "sublevel.csv");
  }
  emit(with_config(doc, s), f.out, "inner.json");
  return 0;
}

int cmd_jets(const Flags& f) {
  Settings s = load_settings(f);
  JetData data;
  if (s.file.contains("jet")) {
    data = jet_data_from_json(s.file.at("jet"));
    s.echo["jet"] = "from config";
  } else {
    const ZeroSequence seq = sequence_from(s, f);
    data = build_delta_jet(seq, s.get("k", f.k, 1), s.get("alpha", f.alpha, 1.5));
  }
  const AdmissibilityReport r = check_admissible(data);
  json doc = to_json(r, data);
  doc["jet"] = to_json(data);
  emit(with_config(doc, s), f.out, "admissibility.json");
  return 0;
}

int cmd_matrix(const Flags& f) {
  Settings s = load_settings(f);
  const int k = s.get("k", f.k, 2);
  const int n = s.get("n", f.n, 3);
  s.echo["exploration"] = f.exploration;
  const RationalMatrix m = build_M(k, n, f.exploration);
  json doc = {{"schema", kSchemaVersion}, {"k", k}, {"n", n}, {"matrix", to_json(m)}, {"det", rational_json(det_exact(m))}};
  if (2 * k <= n) doc["label"] = "outside the hypothesis n/2 < k";
  if (f.rhs || s.file.contains("rhs")) {
    const std::string text = s.get<std::string>("rhs", f.rhs, "");
    RationalVector rhs(m.rows());
    std::stringstream ss(text);
    std::string item;
    Eigen::Index i = 0;
    while (std::getline(ss, item, ',')) {
      if (i >= rhs.size()) throw UsageError("too many right-hand side entries");
      rhs[i++] = Rational(item);
    }
    if (i != rhs.size()) throw UsageError("right-hand side needs n-k+1 entries");
    doc["solution"] = to_json(cramer_solve(m, rhs));
  }
  emit(with_config(doc, s), f.out, "matrix.json");
  return 0;
}

int cmd_crit(const Flags& f) {
  Settings s = load_settings(f);
  const std::string name = s.get<std::string>("criterion", f.criterion, "boundary");
  const AnalyticExpr fexpr = s.file.contains("f") ? expr_from_json(s.file.at("f"))
                                                  : pow(constant(1.0) - identity(), 2);
  s.echo["f"] = to_json(fexpr);
  auto theta_or_atom = [&]() {
    if (s.file.contains("theta")) {
      s.echo["theta"] = s.file.at("theta");
      return inner_from_json(s.file.at("theta"));
    }
    const InnerFunction t = InnerFunction::singular({{Complex(1.0, 0.0), 1.0}});
    s.echo["theta"] = to_json(t);
    return t;
  };
  auto grid = [&]() {
    GridSpec g;
    g.depth = s.get("grid_q", f.grid_q, g.depth);
    return g;
  };
  auto bgrid = [&]() { return BoundaryGrid{1 << s.get("boundary_log2", f.boundary_log2, 14)}; };

  json doc;
  if (name == "decrease") {
    const InnerFunction t = theta_or_atom();
    doc = decrease_sup(fexpr, t, s.get("eps", f.eps, 0.1), s.get("alpha", f.alpha, 1.5), grid()).to_json();
  } else if (name == "derivative") {
    const InnerFunction t = theta_or_atom();
    doc = derivative_decrease(fexpr, t, s.get("eps", f.eps, 0.1), s.get("alpha", f.alpha, 1.5), s.get("k", f.k, 1),
                              grid())
              .to_json();
  } else if (name == "boundary") {
    const InnerFunction t = theta_or_atom();
    doc = boundary_crit(fexpr, t, s.get("N", f.N, 1), bgrid()).to_json();
  } else if (name == "shider") {
    const InnerFunction t = theta_or_atom();
    doc = shider_sup(t, s.get("l", f.l, 1), bgrid()).to_json();
  } else if (name == "leibniz") {
    const InnerFunction t = theta_or_atom();
    doc = leibniz_terms(fexpr, t, s.get("N", f.N, 1), bgrid()).to_json();
  } else if (name == "decay") {
    const ZeroSequence seq = sequence_from(s, f);
    const int k = s.get("k", f.k, 2);
    const double alpha = s.get("alpha", f.alpha, 2.5);
    const DecayProfile p = s.file.contains("f") ? zero_decay_profile(fexpr, seq, k, alpha)
                                                : zero_decay_profile(delta_table(seq, k, alpha), seq, k, alpha);
    if (f.out) emit(p.to_csv(), f.out, "decay.csv");
    doc = p.to_json();
    doc["table"] = s.file.contains("f") ? "f(z_j)" : "d_j^(alpha-k) (1-|z_j|)^k";
    doc["tail_mass"] = tail_mass(seq, seq.size());
  } else if (name == "covering") {
    const ZeroSequence seq = sequence_from(s, f);
    std::vector<Complex> odd, even;
    for (int j = 0; j < seq.size(); ++j) (j % 2 == 0 ? odd : even).push_back(seq[j]);
    doc = covering_profile(InnerFunction::from_zeros(odd), InnerFunction::from_zeros(even), s.get("eps", f.eps, 0.1),
                           grid())
              .to_json();
    doc["split"] = "odd/even indices";
  } else {
    throw UsageError("unknown criterion '" + name +
                     "' (decrease, derivative, boundary, shider, leibniz, decay, covering)");
  }
  emit(with_config(doc, s), f.out, "criterion.json");
  return 0;
}

int cmd_suite(const Flags& f) {
  Settings s = load_settings(f);
  SuiteSpec spec;
  spec.suite = s.get<std::string>("suite", f.suite, "");
  spec.seed = s.get<std::uint64_t>("seed", f.seed, 0);
  spec.overrides = s.file.value("overrides", json::object());
  if (f.out) spec.out_dir = *f.out;
  spec.validate();
  std::cerr << "suite " << spec.suite << " seed " << spec.seed << '\n';
  Report r = run_suite(spec);
  r.config["cli"] = s.echo;
  if (f.out) {
    export_report(r, ExportFormat::kJson, *f.out);
    export_report(r, ExportFormat::kCsv, *f.out);
  }
  for (const auto& c : r.checks) {
    if (c.status != "pass") std::cout << c.status << "  " << c.name << "  " << c.value.dump() << '\n';
  }
  std::cout << r.suite << ": " << r.count("pass") << " pass, " << r.count("fail") << " fail, " << r.count("info")
            << " info -> " << r.status() << '\n';
  return r.exit_code();
}

int cmd_export(const Flags& f) {
  Settings s = load_settings(f);
  if (!f.in) throw UsageError("export needs --in <report.json>");
  const ExportFormat fmt = export_format_from_string(s.get<std::string>("format", f.format, "json"));
  const Report r = import_report(*f.in);
  if (f.out) {
    std::cout << export_report(r, fmt, *f.out).string() << '\n';
  } else {
    std::cout << (fmt == ExportFormat::kJson ? r.to_json().dump(2) + "\n" : r.to_csv());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"innerlab: inner functions, zero geometry, admissible jets and the M(k,n) system"};
  app.require_subcommand(1);
  Flags f;

  auto common = [&](CLI::App* c) {
    c->add_option("--config", f.config, "JSON config file (flags take precedence)");
    c->add_option("--out", f.out, "output directory");
    c->add_option("--format", f.format, "json or csv");
  };
  auto seq_opts = [&](CLI::App* c) {
    c->add_option("--seq", f.seq, "spiral, radial or custom");
    c->add_option("--a", f.a, "generator parameter a");
    c->add_option("--b", f.b, "spiral parameter b");
    c->add_option("--J", f.J, "truncation depth");
  };

  auto* gen = app.add_subcommand("gen", "generate a zero sequence");
  common(gen), seq_opts(gen);
  auto* geom = app.add_subcommand("geom", "geometry report of a zero sequence");
  common(geom), seq_opts(geom);
  geom->add_option("--depth", f.depth, "dyadic arc depth");
  auto* inner = app.add_subcommand("inner", "evaluate an inner function, its jets and sublevel sets");
  common(inner), seq_opts(inner);
  inner->add_option("--z", f.z, "point re,im");
  inner->add_option("--order", f.order, "jet order");
  inner->add_option("--eps", f.eps, "sublevel threshold");
  inner->add_option("--grid-q", f.grid_q, "interior grid depth Q");
  auto* jets = app.add_subcommand("jets", "delta jets and admissibility");
  common(jets), seq_opts(jets);
  jets->add_option("--k", f.k, "order carrying the jet");
  jets->add_option("--alpha", f.alpha, "smoothness exponent");
  auto* matrix = app.add_subcommand("matrix", "the reciprocal-factorial matrix M(k,n)");
  common(matrix);
  matrix->add_option("--k", f.k, "k");
  matrix->add_option("--n", f.n, "n");
  matrix->add_option("--rhs", f.rhs, "comma-separated rational right-hand side");
  matrix->add_flag("--exploration", f.exploration, "allow k <= n/2");
  auto* crit = app.add_subcommand("crit", "a single criterion estimator");
  common(crit), seq_opts(crit);
  crit->add_option("--criterion", f.criterion, "decrease, derivative, boundary, shider, leibniz, decay, covering");
  crit->add_option("--eps", f.eps, "epsilon");
  crit->add_option("--alpha", f.alpha, "alpha");
  crit->add_option("--k", f.k, "derivative order k");
  crit->add_option("--N", f.N, "boundary exponent N");
  crit->add_option("--l", f.l, "derivative order l");
  crit->add_option("--grid-q", f.grid_q, "interior grid depth Q");
  crit->add_option("--depth", f.boundary_log2, "boundary grid has 2^depth points");
  auto* suite = app.add_subcommand("suite", "run a verification battery");
  common(suite);
  suite->add_option("--suite", f.suite, "lemma-identities, matrix-sweep, admissibility, dichotomy, criteria-corpus, covering");
  suite->add_option("--seed", f.seed, "seed for randomized cases (default 0)");
  auto* exp = app.add_subcommand("export", "re-export a saved report");
  common(exp);
  exp->add_option("--in", f.in, "report JSON");

  CLI11_PARSE(app, argc, argv);
  try {
    if (gen->parsed()) return cmd_gen(f);
    if (geom->parsed()) return cmd_geom(f);
    if (inner->parsed()) return cmd_inner(f);
    if (jets->parsed()) return cmd_jets(f);
    if (matrix->parsed()) return cmd_matrix(f);
    if (crit->parsed()) return cmd_crit(f);
    if (suite->parsed()) return cmd_suite(f);
    if (exp->parsed()) return cmd_export(f);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const json::exception& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
