#include "commands.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "regsimplex/cmgeom.hpp"
#include "regsimplex/discover.hpp"
#include "regsimplex/errors.hpp"
#include "regsimplex/geom.hpp"
#include "regsimplex/poly.hpp"
#include "regsimplex/poly_json.hpp"
#include "regsimplex/rational.hpp"
#include "regsimplex/soddy.hpp"

namespace regsimplex::cli {

namespace {

using nlohmann::json;

struct Options {
  int d = 2;
  std::string edge_sq = "1";
  std::uint64_t seed = 1;
  int count = 0;
  int max_degree = 4;
  double threshold = discover::kDefaultThreshold;
  std::int64_t max_denominator = discover::kDefaultMaxDenominator;
  std::string tol;
  std::string out;

  std::string subset;
  std::string poly_file;
  std::string t;
  std::string radii;
  std::string k4;
  int edges_equilateral = 0;
  std::string a;
  std::string squared;
};

struct Outcome {
  json doc;
  std::string summary;
  int code = kExitOk;
};

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) parts.push_back(item);
  if (!text.empty() && text.back() == ',') parts.emplace_back();
  return parts;
}

double parse_double(const std::string& text, const std::string& what) {
  std::string_view s = text;
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(value)) {
    throw ParseError(what + ": not a number: '" + text + "'");
  }
  return value;
}

std::vector<double> parse_doubles(const std::string& text, const std::string& what) {
  std::vector<double> values;
  for (const auto& part : split_list(text)) values.push_back(parse_double(part, what));
  return values;
}

std::vector<Rational> parse_rationals(const std::string& text) {
  std::vector<Rational> values;
  for (const auto& part : split_list(text)) values.push_back(parse_rational(part));
  return values;
}

Rational positive_edge_sq(const Options& o) {
  const Rational q = parse_rational(o.edge_sq);
  if (sgn(q) <= 0) throw DomainError("--edge-sq must be positive");
  return q;
}

std::string fmt(double x) {
  std::ostringstream s;
  s << std::setprecision(10) << x;
  return s.str();
}

discover::DiscoveryConfig discovery_config(const Options& o) {
  discover::DiscoveryConfig cfg;
  cfg.d = o.d;
  cfg.edge_sq = positive_edge_sq(o);
  cfg.max_degree = o.max_degree;
  cfg.n_samples = o.count;
  cfg.seed = o.seed;
  cfg.threshold = o.threshold;
  cfg.max_denominator = o.max_denominator;
  return cfg;
}

// The report's own config block moves to the top level of the document.
json wrap(const std::string& command, json config, json result) {
  if (result.is_object()) result.erase("config");
  return json{{"command", command}, {"config", std::move(config)}, {"result", std::move(result)}};
}

Outcome cmd_verify(const Options& o) {
  const Rational edge_sq = positive_edge_sq(o);
  const auto simplex = geom::build_embedded_simplex(o.d, edge_sq);
  geom::SampleConfig sc;
  sc.seed = o.seed;
  sc.count = o.count;
  const auto samples = geom::sample_points(simplex, sc);
  const auto relation = poly::build_F(o.d, edge_sq);

  json violations = json::array();
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const Rational r = poly::eval_on_squares(relation, samples[i].distances.squared);
    if (r != 0) {
      json v = samples[i];
      v["index"] = i;
      v["residual"] = to_string(r);
      violations.push_back(std::move(v));
    }
  }

  json config{{"d", o.d}, {"edge_sq", to_string(edge_sq)}, {"count", o.count}, {"seed", o.seed},
              {"box", to_string(sc.box)}};
  const bool ok = violations.empty();
  json result{{"samples", samples.size()}, {"violations", violations}, {"all_zero", ok}};

  Outcome out;
  out.doc = wrap("verify", std::move(config), std::move(result));
  out.summary = "verify: d=" + std::to_string(o.d) + ", " + std::to_string(samples.size()) + " exact samples, " +
                std::to_string(violations.size()) + " nonzero residuals";
  out.code = ok ? kExitOk : kExitFinding;
  return out;
}

std::string candidate_lines(const std::vector<discover::CertifiedCandidate>& cands) {
  std::string s;
  for (const auto& c : cands) {
    s += "\n  [" + discover::certificate_name(c.certificate) + "] " + poly::to_string(c.poly);
  }
  return s;
}

std::string spectrum_line(const discover::NullspaceReport& ns, bool inconclusive) {
  std::string s = "null_dim=" + std::to_string(ns.null_dim) + ", gap=" + fmt(ns.gap);
  if (inconclusive) s += " (inconclusive)";
  return s;
}

Outcome cmd_discover(const Options& o) {
  const auto cfg = discovery_config(o);
  const auto report = discover::discover_vanishing(cfg);
  Outcome out;
  out.doc = wrap("discover", json(cfg), json(report));
  out.summary = "discover: d=" + std::to_string(cfg.d) + ", max_degree=" + std::to_string(cfg.max_degree) + ", " +
                std::to_string(report.sample_count) + " samples, " + spectrum_line(report.nullspace, report.inconclusive) +
                candidate_lines(report.candidates);
  out.code = (report.inconclusive || !report.all_certified()) ? kExitFinding : kExitOk;
  return out;
}

std::vector<int> parse_subset(const Options& o) {
  std::vector<int> subset;
  if (o.subset.empty()) {
    for (int j = 1; j <= o.d; ++j) subset.push_back(j);
    return subset;
  }
  for (const auto& part : split_list(o.subset)) {
    int v = 0;
    const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (part.empty() || ec != std::errc{} || ptr != part.data() + part.size()) {
      throw ParseError("--subset: not an integer: '" + part + "'");
    }
    subset.push_back(v);
  }
  return subset;
}

Outcome cmd_independence(const Options& o) {
  const auto cfg = discovery_config(o);
  const auto report = discover::independence_test(cfg, parse_subset(o));
  json config = cfg;
  config["subset"] = report.subset;

  const bool found = report.verdict == discover::Verdict::relation_found;
  const bool uncertified = std::any_of(report.candidates.begin(), report.candidates.end(), [](const auto& c) {
    return c.certificate == discover::Certificate::uncertified;
  });

  Outcome out;
  out.doc = wrap("independence", std::move(config), json(report));
  std::string subset;
  for (int v : report.subset) subset += (subset.empty() ? "" : ",") + std::to_string(v);
  out.summary = "independence: d=" + std::to_string(cfg.d) + ", subset {" + subset + "}, " +
                spectrum_line(report.nullspace, report.inconclusive) + ", " +
                (found ? "relation-found" : "no-relation-found") + candidate_lines(report.candidates);
  out.code = (report.inconclusive || uncertified) ? kExitFinding : kExitOk;
  return out;
}

Outcome cmd_sphere(const Options& o) {
  const auto cfg = discovery_config(o);
  const auto report = discover::discover_on_sphere(cfg);
  Outcome out;
  out.doc = wrap("sphere", json(cfg), json(report));
  std::string dims;
  for (int n : report.null_dim_by_degree) dims += (dims.empty() ? "" : ",") + std::to_string(n);
  out.summary = "sphere: d=" + std::to_string(cfg.d) + ", null dims by degree [" + dims + "], " +
                spectrum_line(report.nullspace, report.inconclusive) + ", " + std::to_string(report.members.size()) +
                " in <G,H>, " + std::to_string(report.extras.size()) + " outside" + candidate_lines(report.members) +
                candidate_lines(report.extras);
  out.code = (report.inconclusive || !report.extras_consistent()) ? kExitFinding : kExitOk;
  return out;
}

Outcome cmd_reduce(const Options& o) {
  const Rational edge_sq = positive_edge_sq(o);
  if (o.d < 1) throw DomainError("--d must be >= 1");

  std::ifstream in(o.poly_file);
  if (!in) throw ParseError("cannot open polynomial file '" + o.poly_file + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  const auto g = poly::poly_from_json(j);
  const auto arity = static_cast<std::size_t>(o.d + 1);
  if (g.arity() != arity) {
    throw DomainError("polynomial has " + std::to_string(g.arity()) + " variables, expected d+1 = " +
                      std::to_string(arity));
  }
  const auto division = poly::divide_by_F(g, o.d, edge_sq);
  const bool member = division.remainder.is_zero();
  const auto names = poly::default_names(arity);

  json config{{"d", o.d}, {"edge_sq", to_string(edge_sq)}, {"poly", o.poly_file}};
  json result{{"quotient", poly::poly_to_json(division.quotient, names)},
              {"remainder", poly::poly_to_json(division.remainder, names)},
              {"quotient_text", poly::to_string(division.quotient)},
              {"remainder_text", poly::to_string(division.remainder)},
              {"member", member}};
  Outcome out;
  out.doc = wrap("reduce", std::move(config), std::move(result));
  out.summary = std::string("reduce: ") + (member ? "member of <F>" : "not a member of <F>") +
                ", remainder " + poly::to_string(division.remainder);
  return out;
}

std::optional<double> parse_tol(const Options& o) {
  if (o.tol.empty()) return std::nullopt;
  const double tol = parse_double(o.tol, "--tol");
  if (!(tol > 0.0)) throw DomainError("--tol must be positive");
  return tol;
}

Outcome cmd_reconstruct(const Options& o) {
  const Rational edge_sq = positive_edge_sq(o);
  if (o.d < 1) throw DomainError("--d must be >= 1");
  const auto t = parse_doubles(o.t, "--t");
  const auto simplex = geom::build_cartesian_simplex(o.d, std::sqrt(to_double(edge_sq)));
  const auto result = cmgeom::reconstruct_point(simplex, t, parse_tol(o));

  json config{{"d", o.d}, {"edge_sq", to_string(edge_sq)}, {"t", t}, {"tol", result.tolerance}};
  Outcome out;
  out.doc = wrap("reconstruct", std::move(config), json(result));
  const bool feasible = result.status == cmgeom::Feasibility::feasible;
  std::string point;
  for (double x : result.point) point += (point.empty() ? "" : ", ") + fmt(x);
  out.summary = std::string("reconstruct: ") + (feasible ? "feasible" : "infeasible") + ", point (" + point +
                "), residual " + fmt(result.residual);
  return out;
}

Outcome cmd_probe(const Options& o) {
  cmgeom::ProbeConfig cfg;
  cfg.d = o.d;
  cfg.edge_sq = positive_edge_sq(o);
  cfg.trials = o.count;
  cfg.seed = o.seed;
  cfg.tol = parse_tol(o);
  if (cfg.trials < 1) throw DomainError("--count must be >= 1");
  const auto report = cmgeom::probe_realizability(cfg);
  json body = report;
  json config = body["config"];
  Outcome out;
  out.doc = wrap("probe63", std::move(config), std::move(body));
  out.summary = "probe63: d=" + std::to_string(cfg.d) + ", " + std::to_string(cfg.trials) + " trials: " +
                std::to_string(report.no_real_root) + " without a real root, " + std::to_string(report.feasible) +
                " feasible roots, " + std::to_string(report.infeasible) + " infeasible roots";
  return out;
}

Outcome cmd_soddy(const Options& o) {
  if (o.d < 2) throw DomainError("--d must be >= 2");
  const auto radii = parse_doubles(o.radii, "--radii");
  if (radii.size() != static_cast<std::size_t>(o.d + 1)) {
    throw DomainError("--radii needs d+1 = " + std::to_string(o.d + 1) + " values");
  }
  std::vector<double> known;
  for (double r : radii) {
    if (!(r > 0.0)) throw DomainError("--radii must be positive");
    known.push_back(1.0 / r);
  }
  std::optional<double> k4_override;
  if (!o.k4.empty()) k4_override = parse_double(o.k4, "--k4");

  json config{{"d", o.d}, {"radii", radii}};
  config["k4"] = k4_override ? json(*k4_override) : json(nullptr);

  json result{{"known_curvatures", known}};
  std::string summary = "soddy: d=" + std::to_string(o.d);

  const auto roots = soddy::solve_missing_curvature(known, o.d);
  std::vector<double> placed;
  if (roots) {
    double s1 = 0.0;
    double s2 = 0.0;
    for (double k : known) {
      s1 += k;
      s2 += k * k;
    }
    const double lead = o.d - 1.0;
    result["roots"] = {roots->first, roots->second};
    result["vieta"] = {{"sum", roots->first + roots->second},
                       {"expected_sum", 2.0 * s1 / lead},
                       {"product", roots->first * roots->second},
                       {"expected_product", (o.d * s2 - s1 * s1) / lead}};
    summary += ", roots " + fmt(roots->first) + " / " + fmt(roots->second);
    placed = {roots->first, roots->second};
  } else {
    result["roots"] = nullptr;
    summary += ", no real roots";
  }
  if (k4_override) placed = {*k4_override};

  json descartes = json::array();
  for (double k : placed) {
    auto all = known;
    all.push_back(k);
    descartes.push_back({{"k4", k}, {"residual", soddy::verify_descartes(all, o.d)}});
  }
  result["descartes_residuals"] = descartes;

  if (o.d == 2) {
    const auto circles = soddy::build_tangent_circles_2d(radii[0], radii[1], radii[2]);
    result["circles"] = circles.spheres;
    result["tangency_residuals"] = circles.tangency_residuals();
    json fourth = json::array();
    for (double k : placed) {
      if (k == 0.0) {
        fourth.push_back({{"k4", k}, {"circle", nullptr}, {"residual", nullptr}});
        summary += "\n  k4=0: the fourth circle degenerates to a line";
        continue;
      }
      const auto sc = soddy::build_soddy_circle_2d(circles, k);
      fourth.push_back({{"k4", k}, {"circle", sc.circle}, {"residual", sc.residual}});
      summary += "\n  k4=" + fmt(k) + ": center (" + fmt(sc.circle.center[0]) + ", " + fmt(sc.circle.center[1]) +
                 "), radius " + fmt(sc.circle.radius) + ", tangency residual " + fmt(sc.residual);
    }
    result["fourth_circles"] = fourth;
  }

  Outcome out;
  out.doc = wrap("soddy", std::move(config), std::move(result));
  out.summary = summary;
  return out;
}

Outcome cmd_cm(const Options& o, bool edge_sq_given) {
  const bool equilateral = o.edges_equilateral > 0;
  if (equilateral == !o.squared.empty()) {
    throw DomainError("give exactly one of --edges-equilateral N or --squared");
  }
  json config;
  std::optional<cmgeom::ExactDistanceMatrix> m;
  if (equilateral) {
    Rational edge_sq;
    if (!o.a.empty()) {
      if (edge_sq_given) throw DomainError("--a and --edge-sq are mutually exclusive");
      const Rational a = parse_rational(o.a);
      if (sgn(a) <= 0) throw DomainError("--a must be positive");
      edge_sq = a * a;
      config["a"] = to_string(a);
    } else {
      edge_sq = positive_edge_sq(o);
    }
    config["edges_equilateral"] = o.edges_equilateral;
    config["edge_sq"] = to_string(edge_sq);
    m = cmgeom::ExactDistanceMatrix::uniform(static_cast<std::size_t>(o.edges_equilateral), edge_sq);
  } else {
    const auto upper = parse_rationals(o.squared);
    std::size_t n = 2;
    while (n * (n - 1) / 2 < upper.size()) ++n;
    if (n * (n - 1) / 2 != upper.size()) {
      throw DomainError("--squared needs n(n-1)/2 upper-triangle entries, got " + std::to_string(upper.size()));
    }
    std::vector<std::vector<Rational>> rows(n, std::vector<Rational>(n, Rational(0)));
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) rows[i][j] = rows[j][i] = upper[k++];
    }
    json entries = json::array();
    for (const auto& q : upper) entries.push_back(to_string(q));
    config["squared"] = entries;
    m = cmgeom::ExactDistanceMatrix::from_rows(std::move(rows));
  }

  const Rational det = cmgeom::cayley_menger_det(*m);
  json result{{"points", m->size()}, {"determinant", to_string(det)}, {"determinant_float", to_double(det)}};
  std::string summary = "cm: " + std::to_string(m->size()) + " points, determinant " + to_string(det);
  try {
    const double v = cmgeom::simplex_volume(*m);
    result["volume"] = v;
    result["embeddable"] = true;
    summary += ", " + std::to_string(m->size() - 1) + "-volume " + fmt(v);
  } catch (const InfeasibleError& e) {
    result["volume"] = nullptr;
    result["embeddable"] = false;
    summary += ", not realizable: " + std::string(e.what());
  }
  Outcome out;
  out.doc = wrap("cm", std::move(config), std::move(result));
  out.summary = summary;
  return out;
}

void add_model_options(CLI::App* sub, Options& o) {
  sub->add_option("--d", o.d, "simplex dimension")->capture_default_str();
  sub->add_option("--edge-sq", o.edge_sq, "squared edge length, rational p/q")->capture_default_str();
}

void add_discovery_options(CLI::App* sub, Options& o) {
  add_model_options(sub, o);
  sub->add_option("--max-degree", o.max_degree, "maximum total degree of the monomial basis")->capture_default_str();
  sub->add_option("--count", o.count, "number of samples (0: three times the basis size)")->capture_default_str();
  sub->add_option("--seed", o.seed, "random seed")->capture_default_str();
  sub->add_option("--threshold", o.threshold, "relative singular value cut")->capture_default_str();
  sub->add_option("--max-denominator", o.max_denominator, "denominator bound for rationalization")
      ->capture_default_str();
}

void add_out_option(CLI::App* sub, Options& o) {
  sub->add_option("--out", o.out, "write the JSON report here; the summary then goes to stdout");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Distance relations of regular simplices: exact checks, relation discovery, reconstruction", "regsimplex"};
  app.require_subcommand(1, 1);

  Options verify_o;
  verify_o.count = 1000;
  auto* verify = app.add_subcommand("verify", "evaluate the quartic relation exactly on seeded samples");
  add_model_options(verify, verify_o);
  verify->add_option("--count", verify_o.count, "number of samples")->capture_default_str();
  verify->add_option("--seed", verify_o.seed, "random seed")->capture_default_str();
  add_out_option(verify, verify_o);

  Options discover_o;
  auto* discover_cmd = app.add_subcommand("discover", "find polynomials vanishing on all distance tuples");
  add_discovery_options(discover_cmd, discover_o);
  add_out_option(discover_cmd, discover_o);

  Options indep_o;
  auto* indep = app.add_subcommand("independence", "look for relations among the distances to a vertex subset");
  add_discovery_options(indep, indep_o);
  indep->add_option("--subset", indep_o.subset, "1-based vertex indices, comma separated (default 1..d)");
  add_out_option(indep, indep_o);

  Options sphere_o;
  sphere_o.max_degree = 2;
  auto* sphere = app.add_subcommand("sphere", "find polynomials vanishing on distance tuples from the circumsphere");
  add_discovery_options(sphere, sphere_o);
  add_out_option(sphere, sphere_o);

  Options reduce_o;
  auto* reduce = app.add_subcommand("reduce", "divide a polynomial by the relation and report membership");
  add_model_options(reduce, reduce_o);
  reduce->add_option("--poly", reduce_o.poly_file, "polynomial JSON file")->required();
  add_out_option(reduce, reduce_o);

  Options recon_o;
  auto* recon = app.add_subcommand("reconstruct", "recover a point from its distances to the vertices");
  add_model_options(recon, recon_o);
  recon->add_option("--t", recon_o.t, "d+1 distances, comma separated")->required();
  recon->add_option("--tol", recon_o.tol, "feasibility tolerance (default 1e-9 * edge_sq)");
  add_out_option(recon, recon_o);

  Options probe_o;
  probe_o.count = 1000;
  auto* probe = app.add_subcommand("probe63", "probe whether tuples on the relation are always realizable");
  add_model_options(probe, probe_o);
  probe->add_option("--count", probe_o.count, "number of trials")->capture_default_str();
  probe->add_option("--seed", probe_o.seed, "random seed")->capture_default_str();
  probe->add_option("--tol", probe_o.tol, "feasibility tolerance (default 1e-9 * edge_sq)");
  add_out_option(probe, probe_o);

  Options soddy_o;
  auto* soddy_cmd = app.add_subcommand("soddy", "curvature of the sphere tangent to d+1 mutually tangent spheres");
  soddy_cmd->add_option("--radii", soddy_o.radii, "d+1 positive radii, comma separated")->required();
  soddy_cmd->add_option("--d", soddy_o.d, "ambient dimension")->capture_default_str();
  soddy_cmd->add_option("--k4", soddy_o.k4, "place this curvature instead of the computed roots (d = 2)");
  add_out_option(soddy_cmd, soddy_o);

  Options cm_o;
  auto* cm = app.add_subcommand("cm", "Cayley-Menger determinant and simplex volume");
  cm->add_option("--edges-equilateral", cm_o.edges_equilateral, "number of points at equal mutual distance");
  cm->add_option("--a", cm_o.a, "edge length for --edges-equilateral, rational p/q");
  auto* cm_edge = cm->add_option("--edge-sq", cm_o.edge_sq, "squared edge length for --edges-equilateral")
                      ->capture_default_str();
  cm->add_option("--squared", cm_o.squared, "upper triangle of the squared distance matrix, row-major");
  add_out_option(cm, cm_o);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  Options* opts = nullptr;
  Outcome outcome;
  try {
    if (verify->parsed()) {
      opts = &verify_o;
      outcome = cmd_verify(verify_o);
    } else if (discover_cmd->parsed()) {
      opts = &discover_o;
      outcome = cmd_discover(discover_o);
    } else if (indep->parsed()) {
      opts = &indep_o;
      outcome = cmd_independence(indep_o);
    } else if (sphere->parsed()) {
      opts = &sphere_o;
      outcome = cmd_sphere(sphere_o);
    } else if (reduce->parsed()) {
      opts = &reduce_o;
      outcome = cmd_reduce(reduce_o);
    } else if (recon->parsed()) {
      opts = &recon_o;
      outcome = cmd_reconstruct(recon_o);
    } else if (probe->parsed()) {
      opts = &probe_o;
      outcome = cmd_probe(probe_o);
    } else if (soddy_cmd->parsed()) {
      opts = &soddy_o;
      outcome = cmd_soddy(soddy_o);
    } else {
      opts = &cm_o;
      outcome = cmd_cm(cm_o, cm_edge->count() > 0);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }

  const std::string text = outcome.doc.dump(2) + "\n";
  if (!opts->out.empty()) {
    std::ofstream file(opts->out);
    if (!(file << text)) {
      err << "error: cannot write '" << opts->out << "'\n";
      return kExitConfig;
    }
    out << outcome.summary << '\n';
  } else {
    out << text;
    err << outcome.summary << '\n';
  }
  return outcome.code;
}

}  // namespace regsimplex::cli
