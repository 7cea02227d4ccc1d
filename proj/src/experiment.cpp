#include "mixlap/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

#include "mixlap/oracle.hpp"
#include "mixlap/semilinear.hpp"
#include "mixlap/spectral.hpp"
#include "mixlap/symmetry.hpp"

namespace mixlap {

namespace fs = std::filesystem;
using nlohmann::json;

std::uint64_t fnv1a_hash(const std::string& data) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

namespace {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParsedConfig {
  std::string experiment;
  json domain;
  double s = 0.5;
  NormalizationMode mode = NormalizationMode::paper;
  std::string nl_name = "constant_one";
  NonlinearityParams nl_params;
  NewtonParams newton;
  double tol_plane = 1e-8, tol_monotonicity = 1e-12, tol_moving_plane = 1e-8;
  std::vector<double> scan_radii;
  std::string scan_family = "interval";
  int scan_nodes = 101;
  double gibbons_perturbation = 0.0;
  std::uint64_t seed = 0;
};

double require_number(const json& j, const std::string& key, double fallback,
                      bool required = false) {
  if (!j.contains(key)) {
    if (required) throw ConfigError("missing key \"" + key + "\"");
    return fallback;
  }
  if (!j.at(key).is_number()) throw ConfigError("key \"" + key + "\" must be a number");
  return j.at(key).get<double>();
}

ParsedConfig parse_config(const json& cfg) {
  ParsedConfig p;
  if (!cfg.is_object()) throw ConfigError("config root must be an object");

  if (cfg.contains("experiment")) {
    if (!cfg.at("experiment").is_string())
      throw ConfigError("key \"experiment\" must be a string");
    p.experiment = cfg.at("experiment").get<std::string>();
  }
  static const std::vector<std::string> kinds{"solve", "eigen", "scan", "symmetry",
                                             "gibbons"};
  if (std::find(kinds.begin(), kinds.end(), p.experiment) == kinds.end())
    throw ConfigError("key \"experiment\" must be one of solve|eigen|scan|symmetry|gibbons");

  p.s = require_number(cfg, "s", 0.5);
  if (!(p.s > 0.0 && p.s < 1.0))
    throw ConfigError("key \"s\" must lie in (0,1), got " + std::to_string(p.s));

  if (cfg.contains("normalization")) {
    std::string m = cfg.at("normalization").get<std::string>();
    if (m == "paper")
      p.mode = NormalizationMode::paper;
    else if (m == "standard")
      p.mode = NormalizationMode::standard;
    else
      throw ConfigError("key \"normalization\" must be \"paper\" or \"standard\"");
  }

  if (p.experiment != "scan") {
    if (!cfg.contains("domain") || !cfg.at("domain").is_object())
      throw ConfigError("missing key \"domain\"");
    p.domain = cfg.at("domain");
    if (!p.domain.contains("kind")) throw ConfigError("missing key \"domain.kind\"");
  } else if (cfg.contains("domain")) {
    p.domain = cfg.at("domain");
  }

  if (cfg.contains("nonlinearity")) {
    const json& nl = cfg.at("nonlinearity");
    if (!nl.is_object() || !nl.contains("name"))
      throw ConfigError("key \"nonlinearity\" must be an object with a \"name\"");
    p.nl_name = nl.at("name").get<std::string>();
    auto names = nonlinearity_names();
    if (std::find(names.begin(), names.end(), p.nl_name) == names.end())
      throw ConfigError("unknown \"nonlinearity.name\": " + p.nl_name);
    if (nl.contains("params")) {
      const json& pr = nl.at("params");
      p.nl_params.a = require_number(pr, "a", 0.0);
      p.nl_params.b = require_number(pr, "b", 0.0);
      p.nl_params.rate = require_number(pr, "rate", 1.0);
    }
  }

  if (cfg.contains("solver")) {
    const json& sv = cfg.at("solver");
    p.newton.tol = require_number(sv, "tol", 1e-10);
    p.newton.max_iter = static_cast<int>(require_number(sv, "max_iter", 60));
    p.newton.max_halvings = static_cast<int>(require_number(sv, "max_damping", 30));
    if (!(p.newton.tol > 0.0)) throw ConfigError("key \"solver.tol\" must be positive");
    if (p.newton.max_iter < 1) throw ConfigError("key \"solver.max_iter\" must be >= 1");
  }

  if (cfg.contains("tolerances")) {
    const json& t = cfg.at("tolerances");
    p.tol_plane = require_number(t, "plane", p.tol_plane);
    p.tol_monotonicity = require_number(t, "monotonicity", p.tol_monotonicity);
    p.tol_moving_plane = require_number(t, "moving_plane", p.tol_moving_plane);
    if (!(p.tol_plane > 0.0 && p.tol_monotonicity > 0.0 && p.tol_moving_plane > 0.0))
      throw ConfigError("keys under \"tolerances\" must be positive");
  }

  if (cfg.contains("scan")) {
    const json& sc = cfg.at("scan");
    if (sc.contains("radii")) {
      for (const auto& r : sc.at("radii")) p.scan_radii.push_back(r.get<double>());
    }
    if (sc.contains("family")) p.scan_family = sc.at("family").get<std::string>();
    p.scan_nodes = static_cast<int>(require_number(sc, "n", 101));
  }

  if (cfg.contains("gibbons"))
    p.gibbons_perturbation =
        require_number(cfg.at("gibbons"), "perturbation_amplitude", 0.0);

  if (cfg.contains("seed")) p.seed = cfg.at("seed").get<std::uint64_t>();
  return p;
}

Grid build_domain(const json& domain) {
  std::string kind = domain.at("kind").get<std::string>();
  if (kind == "interval") {
    if (!domain.contains("bounds") || !domain.at("bounds").is_array() ||
        domain.at("bounds").size() != 2)
      throw ConfigError("key \"domain.bounds\" must be [a, b]");
    double a = domain.at("bounds")[0].get<double>();
    double b = domain.at("bounds")[1].get<double>();
    int n = static_cast<int>(require_number(domain, "n", 0, true));
    try {
      return build_interval(a, b, n);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("domain: ") + e.what());
    }
  }
  if (kind == "disc") {
    double r = require_number(domain, "radius", 0, true);
    int n = static_cast<int>(require_number(domain, "n", 0, true));
    try {
      return build_disc(r, n);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("domain: ") + e.what());
    }
  }
  if (kind == "strip") {
    double w = require_number(domain, "half_width", 0, true);
    double l = require_number(domain, "half_length", 0, true);
    int n = static_cast<int>(require_number(domain, "n_across", 0, true));
    try {
      return build_strip(w, l, n);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("domain: ") + e.what());
    }
  }
  throw ConfigError("unknown \"domain.kind\": " + kind);
}

void write_field_csv(const fs::path& path, const Field& u) {
  std::ofstream out(path);
  out.precision(17);
  const Grid& g = *u.grid;
  if (g.dim == 1) {
    out << "x,value\n";
    for (int node = 0; node < g.node_count(); ++node)
      out << g.coord(node, 0) << ',' << u.values[node] << '\n';
  } else {
    out << "x,y,value\n";
    for (int node = 0; node < g.node_count(); ++node)
      out << g.coord(node, 0) << ',' << g.coord(node, 1) << ',' << u.values[node]
          << '\n';
  }
}

void write_curve_csv(const fs::path& path, const std::string& xname,
                     const std::string& yname, const std::vector<double>& xs,
                     const std::vector<double>& ys) {
  std::ofstream out(path);
  out.precision(17);
  out << xname << ',' << yname << '\n';
  for (std::size_t i = 0; i < xs.size(); ++i) out << xs[i] << ',' << ys[i] << '\n';
}

json grid_json(const Grid& g) {
  json j;
  j["kind"] = g.desc.name();
  j["dim"] = g.dim;
  j["h"] = g.h;
  j["shape"] = {g.shape[0], g.shape[1]};
  j["n_interior"] = g.interior_count();
  switch (g.desc.kind) {
    case DomainKind::interval: j["bounds"] = {g.desc.a, g.desc.b}; break;
    case DomainKind::disc: j["radius"] = g.desc.radius; break;
    case DomainKind::strip:
      j["half_width"] = g.desc.half_width;
      j["half_length"] = g.desc.half_length;
      break;
    case DomainKind::box: j["bounds"] = {g.desc.ax, g.desc.bx, g.desc.ay, g.desc.by}; break;
  }
  return j;
}

json provenance_block(const json& cfg, const ParsedConfig& p, const Grid* grid) {
  json prov;
  std::ostringstream hex;
  hex << std::hex << fnv1a_hash(cfg.dump());
  prov["config_hash"] = "fnv1a-" + hex.str();
  prov["s"] = p.s;
  prov["normalization"] = p.mode == NormalizationMode::paper ? "paper" : "standard";
  prov["seed"] = p.seed;
  prov["tolerances"] = {{"plane", p.tol_plane},
                        {"monotonicity", p.tol_monotonicity},
                        {"moving_plane", p.tol_moving_plane},
                        {"solver", p.newton.tol}};
  if (grid) prov["domain"] = grid_json(*grid);
  return prov;
}

json report_of(const SolveReport& rep) {
  return json{{"converged", rep.converged},
              {"iterations", rep.iterations},
              {"final_residual_sup", rep.final_residual_sup},
              {"damping_events", rep.damping_events},
              {"positive_interior", rep.positive_interior},
              {"residual_history", rep.residual_history},
              {"message", rep.message}};
}

void write_report(const fs::path& dir, json report) {
  report["timestamp"] = std::chrono::duration_cast<std::chrono::milliseconds>(
                            std::chrono::system_clock::now().time_since_epoch())
                            .count();
  std::ofstream out(dir / "report.json");
  out << report.dump(2) << '\n';
}

}  // namespace

ExperimentOutcome run_experiment(const json& cfg, const std::string& out_dir,
                                 std::optional<std::uint64_t> seed_override) {
  ExperimentOutcome out;
  ParsedConfig p;
  try {
    p = parse_config(cfg);
    if (seed_override) p.seed = *seed_override;
  } catch (const ConfigError& e) {
    out.exit_code = 2;
    out.error = std::string("config error: ") + e.what();
    return out;
  }

  fs::path dir(out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);

  try {
    json report;
    report["experiment"] = p.experiment;

    if (p.experiment == "scan") {
      DomainKind family =
          p.scan_family == "disc" ? DomainKind::disc : DomainKind::interval;
      if (p.scan_family != "disc" && p.scan_family != "interval")
        throw ConfigError("key \"scan.family\" must be interval or disc");
      if (p.scan_radii.empty())
        throw ConfigError("key \"scan.radii\" must be a nonempty decreasing list");
      std::vector<ScanRow> rows;
      try {
        rows = lambda1_volume_scan(family, p.scan_radii, p.scan_nodes, p.s, p.mode);
      } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("scan: ") + e.what());
      }
      std::ofstream scsv(dir / "scan.csv");
      scsv.precision(17);
      scsv << "radius,lambda1,residual,n_interior\n";
      std::vector<double> xs, ys;
      json jrows = json::array();
      for (const auto& r : rows) {
        scsv << r.radius << ',' << r.lambda1 << ',' << r.residual << ','
             << r.n_interior << '\n';
        xs.push_back(r.radius);
        ys.push_back(r.lambda1);
        jrows.push_back({{"radius", r.radius},
                         {"lambda1", r.lambda1},
                         {"residual", r.residual},
                         {"n_interior", r.n_interior}});
      }
      write_curve_csv(dir / "curve_lambda1_vs_radius.csv", "radius", "lambda1", xs, ys);
      report["rows"] = jrows;
      report["provenance"] = provenance_block(cfg, p, nullptr);
      write_report(dir, report);
      out.report = report;
      out.exit_code = 0;
      return out;
    }

    Grid grid = build_domain(p.domain);
    MixedOperator op = assemble(grid, p.s, p.mode);
    report["provenance"] = provenance_block(cfg, p, &grid);

    if (p.experiment == "eigen") {
      EigenResult eig = lambda1(op);
      EigenResult local = lambda1(op, /*local_only=*/true);
      write_field_csv(dir / "field.csv", eig.eigenfield);
      report["lambda1"] = eig.lambda1;
      report["lambda1_local_only"] = local.lambda1;
      report["residual_norm"] = eig.residual_norm;
      report["iterations"] = eig.iterations;
      write_report(dir, report);
      out.report = report;
      out.exit_code = 0;
      return out;
    }

    Nonlinearity nl = make_nonlinearity(p.nl_name, p.nl_params);
    report["nonlinearity"] = p.nl_name;

    if (p.experiment == "solve") {
      Field u0 = make_field(grid);
      auto [u, rep] = solve_dirichlet(op, nl, u0, p.newton);
      write_field_csv(dir / "field.csv", u);
      std::vector<double> idx(rep.residual_history.size());
      for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<double>(i);
      write_curve_csv(dir / "curve_residual_history.csv", "iteration", "residual_sup",
                      idx, rep.residual_history);
      report["solve"] = report_of(rep);
      write_report(dir, report);
      out.report = report;
      out.exit_code = rep.converged ? 0 : 3;
      return out;
    }

    if (p.experiment == "symmetry") {
      for (int axis = 0; axis < grid.dim; ++axis)
        if (!mask_symmetric(grid, axis, 0.0))
          throw ConfigError("domain not reflection-symmetric about {x_" +
                            std::to_string(axis + 1) + " = 0}");
      std::mt19937_64 rng(p.seed);
      std::uniform_real_distribution<double> unif(-1.0, 1.0);
      Field u0 = make_field(grid);
      for (int node : grid.interior_nodes) u0.values[node] = 0.1 * unif(rng);
      auto [u, rep] = solve_dirichlet(op, nl, u0, p.newton);
      write_field_csv(dir / "field.csv", u);
      report["solve"] = report_of(rep);
      if (!rep.converged) {
        write_report(dir, report);
        out.report = report;
        out.exit_code = 3;
        out.error = "solver failure: " + rep.message;
        return out;
      }
      SymmetryReport sym = theorem_one_report(op, u, nl);
      sym.tol_plane = p.tol_plane;
      sym.tol_monotonicity = p.tol_monotonicity;
      sym.tol_moving_plane = p.tol_moving_plane;
      double plane_max = 0.0;
      for (double v : sym.plane_asymmetry) plane_max = std::max(plane_max, v);
      sym.verdict_plane = plane_max <= sym.tol_plane;
      sym.verdict_monotone = sym.monotonicity_violation <= sym.tol_monotonicity;
      sym.verdict_moving_plane = sym.max_sup_violation <= sym.tol_moving_plane;

      auto snaps = moving_plane_scan(op, u, 0, nl);
      std::vector<double> ls, vs;
      json mp_table = json::array();
      for (const auto& s : snaps) {
        ls.push_back(s.lambda);
        vs.push_back(s.sup_violation);
        mp_table.push_back({{"lambda", s.lambda}, {"sup_violation", s.sup_violation}});
      }
      write_curve_csv(dir / "curve_moving_plane.csv", "lambda", "sup_violation", ls, vs);

      report["symmetry"] = {{"plane_asymmetry", sym.plane_asymmetry},
                            {"monotonicity_violation", sym.monotonicity_violation},
                            {"max_sup_violation", sym.max_sup_violation},
                            {"radial_orbit_asymmetry", sym.radial_orbit_asymmetry},
                            {"radial_profile_spread", sym.radial_profile_spread},
                            {"positive_interior", sym.positive_interior},
                            {"verdict_plane", sym.verdict_plane},
                            {"verdict_monotone", sym.verdict_monotone},
                            {"verdict_moving_plane", sym.verdict_moving_plane},
                            {"verdict", sym.verdict()},
                            {"moving_plane_table", mp_table}};
      write_report(dir, report);
      out.report = report;
      out.exit_code = sym.verdict() ? 0 : 1;
      if (!sym.verdict()) out.error = "symmetry verdict failure";
      return out;
    }

    // gibbons
    if (!nl.gibbons_admissible)
      throw ConfigError("nonlinearity \"" + p.nl_name +
                        "\" is not admissible for the gibbons experiment");
    int far = op.far_axis;
    ExteriorRule rule = ExteriorRule::far(-1.0, 1.0, far);
    double W = grid.desc.kind == DomainKind::strip ? grid.desc.half_width : 1.0;
    double amp = p.gibbons_perturbation;
    Field u0 = field_from_function(grid, rule, [&](double x, double y) {
      double t = far == 0 ? x : y;
      double yy = far == 0 ? y : x;
      double base = std::clamp(t, -1.0, 1.0);
      if (amp != 0.0 && grid.dim == 2)
        base += amp * std::sin(std::numbers::pi * yy / W) * std::exp(-t * t);
      return base;
    });
    GibbonsResult res = solve_gibbons(op, nl, u0, p.newton);
    write_field_csv(dir / "field.csv", res.u);

    // profile along the far axis (first cross index for strips)
    std::vector<double> ts, us;
    if (grid.dim == 1) {
      for (int node = 0; node < grid.node_count(); ++node) {
        ts.push_back(grid.coord(node, 0));
        us.push_back(res.u.values[node]);
      }
    } else {
      for (int it = 0; it < grid.shape[1]; ++it) {
        int node = grid.index(0, it);
        ts.push_back(grid.coord(node, 1));
        us.push_back(res.u.values[node]);
      }
    }
    {
      std::ofstream prof(dir / "profile.csv");
      prof.precision(17);
      prof << "t,value\n";
      for (std::size_t i = 0; i < ts.size(); ++i) prof << ts[i] << ',' << us[i] << '\n';
    }

    double oddness = 0.0;
    {
      ReflectionMap map = reflect(grid, far, 0.0);
      for (int node : grid.interior_nodes) {
        int pr = map.pair[node];
        if (pr == ReflectionMap::off_grid) continue;
        oddness = std::max(oddness, std::abs(res.u.values[node] + res.u.values[pr]));
      }
    }
    report["gibbons"] = {{"solve", report_of(res.report)},
                         {"truncation_sensitivity", res.truncation_sensitivity},
                         {"onedim_variation",
                          grid.dim == 2 ? onedim_variation(res.u, 1) : 0.0},
                         {"oddness", oddness}};
    write_report(dir, report);
    out.report = report;
    out.exit_code = res.report.converged ? 0 : 3;
    if (!res.report.converged) out.error = "solver failure: " + res.report.message;
    return out;
  } catch (const ConfigError& e) {
    out.exit_code = 2;
    out.error = std::string("config error: ") + e.what();
    return out;
  } catch (const std::invalid_argument& e) {
    out.exit_code = 2;
    out.error = std::string("config error: ") + e.what();
    return out;
  } catch (const std::exception& e) {
    out.exit_code = 3;
    out.error = std::string("solver failure: ") + e.what();
    return out;
  }
}

std::string presets_text() {
  std::ostringstream os;
  os << "nonlinearity presets:\n";
  for (const auto& name : nonlinearity_names()) {
    Nonlinearity nl = make_nonlinearity(name, NonlinearityParams{0.0, 0.0, 1.0});
    os << "  " << name;
    if (name == "affine") os << " (params: a, b; f = a + b*u)";
    if (name == "constant_one") os << " (f = 1)";
    if (name == "allen_cahn") os << " (f = u - u^3)";
    if (name == "logistic") os << " (params: rate; f = rate*u*(1-u))";
    os << " | far-field admissible: " << (nl.gibbons_admissible ? "yes" : "no") << "\n";
  }
  os << "experiments: solve | eigen | scan | symmetry | gibbons\n";
  return os.str();
}

nlohmann::json presets_json() {
  json j;
  j["experiments"] = {"solve", "eigen", "scan", "symmetry", "gibbons"};
  json nls = json::array();
  for (const auto& name : nonlinearity_names()) {
    Nonlinearity nl = make_nonlinearity(name, NonlinearityParams{0.0, 0.0, 1.0});
    json e;
    e["name"] = name;
    e["gibbons_admissible"] = nl.gibbons_admissible;
    if (name == "affine") e["params"] = {"a", "b"};
    if (name == "logistic") e["params"] = {"rate"};
    nls.push_back(e);
  }
  j["nonlinearities"] = nls;
  return j;
}

}  // namespace mixlap
