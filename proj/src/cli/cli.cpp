#include "tangentrep/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>

#include "tangentrep/counterexample.hpp"
#include "tangentrep/domain_rep.hpp"
#include "tangentrep/errors.hpp"
#include "tangentrep/io.hpp"
#include "tangentrep/legendre.hpp"
#include "tangentrep/maxmin.hpp"
#include "tangentrep/segment_lemmas.hpp"
#include "tangentrep/verify.hpp"

namespace tangentrep::cli {

namespace {

using io::Json;

// Upper bound on representation sites; building is quadratic in this.
constexpr std::size_t kMaxSites = 20000;

struct Options {
  std::string field;
  int dim = 0;
  std::string domain;
  int resolution = 0;
  int test_resolution = 0;
  double tau = kDefaultTau;
  std::string rep_path;
  std::string point;
  std::string h;
  std::string a;
  std::string b;
  std::string shape = "disk";
  std::string phi;
  std::string bbox;
  int base_resolution = 21;
  int ray_count = 64;
  int grid = 101;
  double band = 0.05;
  int site_resolution = 41;
  std::string module;
  std::string format = "json";
  std::string json_path;
  std::string csv_path;
  std::string dual_path;
};

/// Artifacts of one command: a JSON document and CSV rows.
struct Artifacts {
  Json json = Json::object();
  std::string csv;
  std::string dual_csv;
  bool failed = false;
  std::string text;  // used instead of JSON on stdout when set (verify)
};

Point parse_point(const std::string& s, const char* what) {
  Point p;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    const std::size_t comma = std::min(s.find(',', pos), s.size());
    const std::string tok = s.substr(pos, comma - pos);
    double v = 0.0;
    const auto [end, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || ec != std::errc{} || end != tok.data() + tok.size()) {
      throw ConfigError(std::string("bad number list for ") + what + ": '" + s + "'");
    }
    p.push_back(v);
    pos = comma + 1;
  }
  return p;
}

struct FieldChoice {
  ScalarField field;
  std::optional<Domain> default_domain;
  Json spec;
};

FieldChoice resolve_field(const Options& o, std::optional<int> domain_dim) {
  if (o.field.empty()) throw ConfigError("--field is required");
  const auto names = catalog_names();
  if (std::find(names.begin(), names.end(), o.field) != names.end()) {
    CatalogEntry e = catalog_entry(o.field);
    return {e.field, e.domain, Json{{"catalog", o.field}}};
  }
  const int dim = o.dim > 0 ? o.dim : domain_dim.value_or(1);
  try {
    return {ScalarField::from_expression(parse(o.field, dim), o.field), std::nullopt,
            Json{{"expression", o.field}, {"dim", dim}}};
  } catch (const ParseError& e) {
    throw ConfigError("field '" + o.field + "' is neither a catalog name nor a valid expression: " + e.what());
  }
}

/// Field plus domain: an explicit --domain wins over the catalog domain.
std::pair<FieldChoice, Domain> field_and_domain(const Options& o) {
  std::optional<Domain> explicit_domain;
  if (!o.domain.empty()) explicit_domain = io::parse_domain(o.domain);
  FieldChoice fc = resolve_field(o, explicit_domain ? std::optional<int>(static_cast<int>(explicit_domain->dim()))
                                                    : std::nullopt);
  Domain d = explicit_domain ? *explicit_domain
                             : fc.default_domain ? *fc.default_domain
                                                 : throw ConfigError("--domain is required for expression fields");
  if (d.dim() != static_cast<std::size_t>(fc.field.dim())) {
    throw ConfigError("field dimension " + std::to_string(fc.field.dim()) + " does not match domain dimension " +
                      std::to_string(d.dim()));
  }
  return {std::move(fc), std::move(d)};
}

void check_resolution(int res, std::size_t dim, const char* what) {
  if (res < 2) throw ConfigError(std::string(what) + " must be at least 2");
  const double count = std::pow(static_cast<double>(res), static_cast<double>(dim));
  if (count > static_cast<double>(kMaxSites)) {
    throw ConfigError(std::string(what) + " gives " + std::to_string(static_cast<long long>(count)) +
                      " grid points; the cap is " + std::to_string(kMaxSites));
  }
}

int default_test_resolution(std::size_t dim) { return dim == 1 ? 2001 : dim == 2 ? 101 : 21; }

std::vector<std::string> coord_names(std::size_t dim, const char* prefix) {
  std::vector<std::string> out;
  for (std::size_t k = 1; k <= dim; ++k) out.push_back(prefix + std::to_string(k));
  return out;
}

std::string with_header(std::vector<std::string> names) { return io::csv_header(names) + "\n"; }

Artifacts cmd_represent(const Options& o) {
  auto [fc, domain] = field_and_domain(o);
  const int res = o.resolution > 0 ? o.resolution : 41;
  check_resolution(res, domain.dim(), "--resolution");
  const int test_res = o.test_resolution > 0 ? o.test_resolution : default_test_resolution(domain.dim());
  check_resolution(test_res, domain.dim(), "--test-resolution");
  const auto rep = build_representation(fc.field, domain, res, o.tau);

  auto names = coord_names(domain.dim(), "x");
  names.insert(names.end(), {"f", "rep", "abs_err"});
  Artifacts a;
  a.csv = with_header(names);
  double worst = 0.0;
  const auto grid = sample_grid(domain, test_res);
  for (const Point& x : grid) {
    const double f = fc.field.value(x);
    const double r = rep.eval(x);
    worst = std::max(worst, std::abs(r - f));
    Point row = x;
    row.insert(row.end(), {f, r, std::abs(r - f)});
    a.csv += io::csv_row(row) + "\n";
  }
  a.json = Json{{"command", "represent"},
                {"field", fc.spec},
                {"domain", io::to_json(domain)},
                {"resolution", res},
                {"sites", rep.size()},
                {"pivot_planes", rep.pivot_count()},
                {"unique_families", rep.unique_family_count()},
                {"test_points", grid.size()},
                {"max_abs_err", worst},
                {"representation", io::to_json(rep)}};
  return a;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("'" + path + "' is not valid JSON: " + e.what());
  }
}

Artifacts cmd_eval(const Options& o) {
  if (o.rep_path.empty()) throw ConfigError("--rep is required");
  const Json doc = read_json_file(o.rep_path);
  Domain domain = !o.domain.empty() ? io::parse_domain(o.domain)
                  : doc.contains("domain") ? io::domain_from_json(doc.at("domain"))
                                           : throw ConfigError("--domain is required when the file has none");
  const Json& rj = doc.contains("representation") ? doc.at("representation") : doc;
  const auto rep = io::representation_from_json(rj, domain);

  std::optional<ScalarField> field;
  if (!o.field.empty()) {
    field = resolve_field(o, static_cast<int>(domain.dim())).field;
  } else if (doc.contains("field")) {
    Options from_file;
    const Json& spec = doc.at("field");
    from_file.field = spec.contains("catalog") ? spec.at("catalog").get<std::string>()
                                               : spec.at("expression").get<std::string>();
    from_file.dim = spec.value("dim", 0);
    field = resolve_field(from_file, static_cast<int>(domain.dim())).field;
  }

  std::vector<Point> points;
  if (!o.point.empty()) {
    points.push_back(parse_point(o.point, "--point"));
    require_dim(domain.dim(), points.back().size());
  } else {
    const int res = o.resolution > 0 ? o.resolution : default_test_resolution(domain.dim());
    check_resolution(res, domain.dim(), "--resolution");
    points = sample_grid(domain, res);
  }

  auto names = coord_names(domain.dim(), "x");
  names.push_back("rep");
  if (field) names.insert(names.end(), {"f", "abs_err"});
  Artifacts a;
  a.csv = with_header(names);
  Json values = Json::array();
  double worst = 0.0;
  for (const Point& x : points) {
    Point row = x;
    const double r = rep.eval(x);
    row.push_back(r);
    values.push_back(r);
    if (field) {
      const double f = field->value(x);
      worst = std::max(worst, std::abs(r - f));
      row.insert(row.end(), {f, std::abs(r - f)});
    }
    a.csv += io::csv_row(row) + "\n";
  }
  a.json = Json{{"command", "eval"}, {"points", points.size()}, {"values", std::move(values)}};
  if (field) a.json["max_abs_err"] = worst;
  return a;
}

std::string trace_csv(const Lambda0Result& r) {
  std::string csv = "lambda,chord_gap\n";
  for (const auto& n : r.trace) {
    const double row[2] = {n.lambda, n.chord_gap};
    csv += io::csv_row(row) + "\n";
  }
  return csv;
}

Artifacts cmd_lemma1(const Options& o) {
  if (o.h.empty()) throw ConfigError("--expr is required (h as an expression in x1 on [0, 1])");
  const ScalarField h = [&] {
    try {
      return ScalarField::from_expression(parse(o.h, 1), o.h);
    } catch (const ParseError& e) {
      throw ConfigError(std::string("bad --expr expression: ") + e.what());
    }
  }();
  const SegmentFunction seg{[h](double l) { return h.value(Point{l}); },
                            [h](double l) { return h.eval_with_gradient(Point{l}).gradient[0]; }};
  const Lambda0Result r = lambda0(seg);
  Artifacts a;
  a.json = Json{{"command", "lemma1"}, {"h", o.h}, {"result", io::to_json(r)}};
  a.csv = trace_csv(r);
  return a;
}

Artifacts cmd_lemma2(const Options& o) {
  if (o.a.empty() || o.b.empty()) throw ConfigError("--a and --b are required");
  const Point pa = parse_point(o.a, "--a");
  const Point pb = parse_point(o.b, "--b");
  const FieldChoice fc = resolve_field(o, static_cast<int>(pa.size()));
  require_dim(static_cast<std::size_t>(fc.field.dim()), pa.size());
  require_dim(static_cast<std::size_t>(fc.field.dim()), pb.size());
  const PivotResult p = pivot_site(fc.field, pa, pb);
  Artifacts a;
  a.json = Json{{"command", "lemma2"},
                {"field", fc.spec},
                {"a", io::to_json(pa)},
                {"b", io::to_json(pb)},
                {"c", io::to_json(p.c)},
                {"f_a", p.f_a},
                {"f_b", p.f_b},
                {"g_c_at_a", p.g_c_at_a},
                {"g_c_at_b", p.g_c_at_b},
                {"lambda", io::to_json(p.lambda)}};
  a.csv = trace_csv(p.lambda);
  return a;
}

Artifacts cmd_legendre(const Options& o) {
  auto [fc, domain] = field_and_domain(o);
  const int res = o.resolution > 0 ? o.resolution : 1001;
  check_resolution(res, domain.dim(), "--resolution");
  const int test_res = o.test_resolution > 0 ? o.test_resolution : default_test_resolution(domain.dim());
  check_resolution(test_res, domain.dim(), "--test-resolution");
  const LegendreSet set = legendre_points(fc.field, sample_grid(domain, res));
  const ConjugateEnvelope env(set.samples);
  const std::size_t dim = domain.dim();

  Artifacts a;
  auto names = coord_names(dim, "x");
  names.insert(names.end(), {"f", "conjugate", "abs_err"});
  a.csv = with_header(names);
  double worst = 0.0;
  for (const Point& x : sample_grid(domain, test_res)) {
    const double f = fc.field.value(x);
    const double c = env.eval(x);
    worst = std::max(worst, std::abs(c - f));
    Point row = x;
    row.insert(row.end(), {f, c, std::abs(c - f)});
    a.csv += io::csv_row(row) + "\n";
  }

  auto dual_names = coord_names(dim, "t");
  for (auto& n : coord_names(dim, "p")) dual_names.push_back(n);
  dual_names.push_back("H");
  a.dual_csv = with_header(dual_names);
  Json samples = Json::array();
  for (const auto& s : set.samples) {
    Point row = s.t;
    row.insert(row.end(), s.p.begin(), s.p.end());
    row.push_back(s.H);
    a.dual_csv += io::csv_row(row) + "\n";
    samples.push_back(Json{{"t", io::to_json(s.t)}, {"p", io::to_json(s.p)}, {"H", s.H}});
  }
  const auto& inj = set.injectivity;
  Json injectivity{{"min_p_distance", inj.min_p_distance},
                   {"min_t_distance", inj.min_t_distance},
                   {"duplicate_p", inj.duplicate_p}};
  if (inj.second_differences_positive) injectivity["second_differences_positive"] = *inj.second_differences_positive;
  a.json = Json{{"command", "legendre"},
                {"field", fc.spec},
                {"domain", io::to_json(domain)},
                {"sites", set.samples.size()},
                {"max_roundtrip_err", worst},
                {"injectivity", std::move(injectivity)},
                {"samples", std::move(samples)}};
  return a;
}

ImplicitDomain2D resolve_shape(const Options& o) {
  if (!o.phi.empty()) {
    if (o.bbox.empty()) throw ConfigError("--bbox is required with --phi");
    const Point b = parse_point(o.bbox, "--bbox");
    if (b.size() != 4 || !(b[0] < b[1]) || !(b[2] < b[3])) throw ConfigError("--bbox expects lo1,hi1,lo2,hi2");
    try {
      return {ScalarField::from_expression(parse(o.phi, 2), o.phi), Box{{b[0], b[2]}, {b[1], b[3]}}};
    } catch (const ParseError& e) {
      throw ConfigError(std::string("bad --phi expression: ") + e.what());
    }
  }
  if (o.shape == "disk") return unit_disk_domain();
  if (o.shape == "peanut") return peanut_domain();
  throw ConfigError("--shape must be disk or peanut (or pass --phi and --bbox)");
}

Artifacts cmd_domain_rep(const Options& o) {
  const ImplicitDomain2D dom = resolve_shape(o);
  if (o.base_resolution < 2 || o.base_resolution > 201) throw ConfigError("--base-resolution must be in [2, 201]");
  if (o.ray_count < 3 || o.ray_count > 4096) throw ConfigError("--ray-count must be in [3, 4096]");
  if (o.grid < 2 || o.grid > 1001) throw ConfigError("--grid must be in [2, 1001]");
  if (!(o.band >= 0.0)) throw ConfigError("--band must be non-negative");

  const BooleanDomainRep rep = build_domain_rep(dom, o.base_resolution, o.ray_count);
  const DomainMembership mem(rep);
  const Point center{0.5 * (dom.bbox.lo[0] + dom.bbox.hi[0]), 0.5 * (dom.bbox.lo[1] + dom.bbox.hi[1])};
  const auto poly = boundary_polyline(dom, center, 4096);
  const AgreementStats stats = agreement(dom, rep, o.grid, poly, o.band);

  Artifacts a;
  a.csv = "x1,x2,phi,inside,member\n";
  const Domain box = ConvexDomain::box(dom.bbox.lo, dom.bbox.hi);
  for (const Point& y : sample_grid(box, o.grid)) {
    const double phi = dom.phi.value(y);
    const double row[5] = {y[0], y[1], phi, phi <= 0.0 ? 1.0 : 0.0, mem.member(y) ? 1.0 : 0.0};
    a.csv += io::csv_row(row) + "\n";
  }
  a.json = Json{{"command", "domain-rep"},
                {"base_resolution", o.base_resolution},
                {"ray_count", o.ray_count},
                {"agreement",
                 Json{{"grid", o.grid},
                      {"band", o.band},
                      {"tested", stats.tested},
                      {"agree", stats.agree},
                      {"band_points", stats.band_points},
                      {"rate", stats.rate()}}},
                {"representation", io::to_json(rep)}};
  return a;
}

Artifacts cmd_counterexample(const Options& o) {
  const Point pa = o.a.empty() ? Point{0.7, 0.3} : parse_point(o.a, "--a");
  require_dim(2, pa.size());
  if (o.site_resolution < 2 || o.site_resolution > 401) throw ConfigError("--site-resolution must be in [2, 401]");
  const int res = o.resolution > 0 ? o.resolution : 21;
  if (res < 11 || res > 101) throw ConfigError("--resolution must be in [11, 101] for the demo");
  const ObstructionReport cert = obstruction_certificate(pa, o.site_resolution);
  const DemoReport demo = failed_representation_demo(res);
  Artifacts a;
  a.csv = "t1,t2,g_a,g_b\n";
  for (const auto& s : cert.sites) {
    const double row[4] = {s.t[0], s.t[1], s.g_a, s.g_b};
    a.csv += io::csv_row(row) + "\n";
  }
  Json notes = Json::array();
  for (const auto& n : counterexample_notes()) notes.push_back(n);
  a.json = Json{{"command", "counterexample"},
                {"notes", std::move(notes)},
                {"certificate", io::to_json(cert)},
                {"demo", io::to_json(demo)}};
  return a;
}

Artifacts cmd_verify(const Options& o) {
  const auto known = verify::registry();
  if (!o.module.empty() && std::none_of(known.begin(), known.end(), [&](const auto& c) { return c.module == o.module; })) {
    throw ConfigError("unknown module '" + o.module + "'");
  }
  const verify::Report report = verify::run(o.module);
  Artifacts a;
  Json checks = Json::array();
  a.csv = "module,check,passed,seconds\n";
  for (const auto& c : report.checks) {
    char line[64];
    std::snprintf(line, sizeof line, " (%.2fs)", c.seconds);
    a.text += std::string(c.passed ? "PASS " : "FAIL ") + c.module + "." + c.name + ": " + c.detail + line + "\n";
    checks.push_back(Json{{"module", c.module}, {"check", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    a.csv += c.module + "," + c.name + "," + (c.passed ? "1" : "0") + "," + io::format_double(c.seconds) + "\n";
  }
  a.text += report.ok() ? "all checks passed\n" : "verification FAILED\n";
  a.json = Json{{"command", "verify"}, {"ok", report.ok()}, {"checks", std::move(checks)}};
  a.failed = !report.ok();
  return a;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  out << content;
  if (!out) throw ConfigError("failed writing '" + path + "'");
}

std::string json_text(const Json& j) { return io::to_json_string(j) + "\n"; }

/// Applies --config entries to options not given on the command line.
void apply_config(CLI::App& sub, const std::string& path) {
  const Json cfg = read_json_file(path);
  if (!cfg.is_object()) throw ConfigError("config file must hold a JSON object");
  for (const auto& [key, value] : cfg.items()) {
    if (key == "command") continue;
    CLI::Option* opt = sub.get_option_no_throw("--" + key);
    if (opt == nullptr) throw ConfigError("unknown config key '" + key + "' for " + sub.get_name());
    if (opt->count() > 0) continue;
    std::string text;
    if (value.is_string()) text = value.get<std::string>();
    else if (value.is_number_float()) text = io::format_double(value.get<double>());
    else if (value.is_number() || value.is_boolean()) text = value.dump();
    else if (value.is_array()) {
      for (const auto& v : value) {
        if (!text.empty()) text += ",";
        text += v.is_number_float() ? io::format_double(v.get<double>()) : v.dump();
      }
    } else {
      text = value.dump();
    }
    opt->add_result(text);
    try {
      opt->run_callback();
    } catch (const CLI::Error& e) {
      throw ConfigError("config key '" + key + "': " + e.what());
    }
  }
}

/// Prepends the config file's "command" when no subcommand is on the command line.
std::vector<std::string> with_config_command(std::vector<std::string> args, const std::vector<std::string>& commands) {
  const bool has_command = std::any_of(args.begin(), args.end(), [&](const std::string& s) {
    return std::find(commands.begin(), commands.end(), s) != commands.end();
  });
  if (has_command) return args;
  for (std::size_t i = 0; i + 1 < args.size(); ++i) {
    if (args[i] == "--config") {
      const Json cfg = read_json_file(args[i + 1]);
      if (cfg.is_object() && cfg.contains("command") && cfg["command"].is_string()) {
        args.insert(args.begin(), cfg["command"].get<std::string>());
      }
      break;
    }
  }
  return args;
}

}  // namespace

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  Options o;
  std::string config_path;
  CLI::App app{"Max-min tangent-plane representations, domain formulas and Legendre samples", "tangentrep"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Expand all help");

  auto common_output = [&](CLI::App* s) {
    s->add_option("--config", config_path, "JSON file with option values (keys are long flag names)");
    s->add_option("--format", o.format, "What goes to stdout")->check(CLI::IsMember({"json", "csv", "text", "none"}));
    s->add_option("--json", o.json_path, "Also write the JSON artifact here");
    s->add_option("--csv", o.csv_path, "Also write the CSV artifact here");
  };
  auto field_opts = [&](CLI::App* s) {
    s->add_option("--field", o.field, "Catalog name or expression in x1..xn");
    s->add_option("--dim", o.dim, "Dimension for expression fields (default: domain dimension)");
    s->add_option("--domain", o.domain, "box:lo,hi[,..] | ball:c..,r | polygon:x,y,.. | inline JSON");
  };

  CLI::App* represent = app.add_subcommand("represent", "Build and export a max-min representation");
  field_opts(represent);
  represent->add_option("--resolution", o.resolution, "Sites per axis (default 41)");
  represent->add_option("--test-resolution", o.test_resolution, "Error-grid points per axis");
  represent->add_option("--tau", o.tau, "Relative site-set tolerance")->check(CLI::NonNegativeNumber);
  common_output(represent);

  CLI::App* eval = app.add_subcommand("eval", "Evaluate an exported representation");
  eval->add_option("--rep", o.rep_path, "JSON file written by represent");
  field_opts(eval);
  eval->add_option("--resolution", o.resolution, "Evaluation grid points per axis");
  eval->add_option("--point", o.point, "Single point x1,x2,..");
  common_output(eval);

  CLI::App* lemma1 = app.add_subcommand("lemma1", "Solve for lambda0 of a function h on [0, 1]");
  lemma1->add_option("--expr", o.h, "Expression in x1 for h(lambda), lambda in [0, 1]");
  common_output(lemma1);

  CLI::App* lemma2 = app.add_subcommand("lemma2", "Pivot site on the segment [a, b]");
  lemma2->add_option("--field", o.field, "Catalog name or expression");
  lemma2->add_option("--dim", o.dim, "Dimension for expression fields (default: length of --a)");
  lemma2->add_option("--a", o.a, "Start point x1,x2,..");
  lemma2->add_option("--b", o.b, "End point x1,x2,..");
  common_output(lemma2);

  CLI::App* legendre = app.add_subcommand("legendre", "Sampled Legendre transform and conjugate recovery");
  field_opts(legendre);
  legendre->add_option("--resolution", o.resolution, "Sites per axis (default 1001)");
  legendre->add_option("--test-resolution", o.test_resolution, "Test-grid points per axis");
  legendre->add_option("--dual", o.dual_path, "Write the dual-space points (t, p, H) as CSV here");
  common_output(legendre);

  CLI::App* domain_rep = app.add_subcommand("domain-rep", "Half-plane formula for a planar level-set domain");
  domain_rep->add_option("--shape", o.shape, "disk or peanut");
  domain_rep->add_option("--phi", o.phi, "Custom level-set expression in x1, x2 (inside where <= 0)");
  domain_rep->add_option("--bbox", o.bbox, "lo1,hi1,lo2,hi2 for --phi");
  domain_rep->add_option("--base-resolution", o.base_resolution, "Base-point grid per axis");
  domain_rep->add_option("--ray-count", o.ray_count, "Rays per base point");
  domain_rep->add_option("--grid", o.grid, "Membership test grid per axis");
  domain_rep->add_option("--band", o.band, "Boundary band excluded from agreement");
  common_output(domain_rep);

  CLI::App* counter = app.add_subcommand("counterexample", "Obstruction on the three-triangle domain");
  counter->add_option("--a", o.a, "Point inside the right triangle (default 0.7,0.3)");
  counter->add_option("--site-resolution", o.site_resolution, "Site grid per axis for the certificate");
  counter->add_option("--resolution", o.resolution, "Representation grid per axis (default 21)");
  common_output(counter);

  CLI::App* verify_cmd = app.add_subcommand("verify", "Run the invariant suite");
  verify_cmd->add_option("--module", o.module, "Only checks of this module");
  common_output(verify_cmd);
  verify_cmd->get_option("--format")->default_str("text");
  o.format.clear();

  std::vector<std::string> names;
  for (const auto* s : app.get_subcommands([](const CLI::App*) { return true; })) names.push_back(s->get_name());

  try {
    std::vector<std::string> args = with_config_command(raw_args, names);
    std::reverse(args.begin(), args.end());  // CLI11 consumes from the back
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  }

  CLI::App* sub = app.get_subcommands().front();
  try {
    if (!config_path.empty()) apply_config(*sub, config_path);
    if (o.format.empty()) o.format = sub == verify_cmd ? "text" : "json";
    if (o.format == "text" && sub != verify_cmd) throw ConfigError("--format text is only for verify");

    Artifacts a;
    if (sub == represent) a = cmd_represent(o);
    else if (sub == eval) a = cmd_eval(o);
    else if (sub == lemma1) a = cmd_lemma1(o);
    else if (sub == lemma2) a = cmd_lemma2(o);
    else if (sub == legendre) a = cmd_legendre(o);
    else if (sub == domain_rep) a = cmd_domain_rep(o);
    else if (sub == counter) a = cmd_counterexample(o);
    else a = cmd_verify(o);

    if (!o.json_path.empty()) write_file(o.json_path, json_text(a.json));
    if (!o.csv_path.empty()) write_file(o.csv_path, a.csv);
    if (!o.dual_path.empty()) write_file(o.dual_path, a.dual_csv);
    if (o.format == "json") out << json_text(a.json);
    else if (o.format == "csv") out << a.csv;
    else if (o.format == "text") out << a.text;
    if (a.failed) {
      err << "verification failed\n";
      return kExitFailure;
    }
    return kExitOk;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace tangentrep::cli
