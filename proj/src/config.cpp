#include "dpl/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "dpl/errors.hpp"
#include "dpl/profiles.hpp"

namespace dpl {

Problem ProblemTemplate::build(std::size_t n_cells_override) const {
  const Geometry1D geom(h, L, n_cells_override ? n_cells_override : n_cells);
  const auto xs = geom.nodes();
  MaterialField material(Profile::parse(a_text, -h, L).sample(xs),
                         Profile::parse(k_text, -h, L).sample(xs));

  ProblemData pd;
  pd.T0 = Profile::parse(T0_text, -h, L).sample(xs);
  pd.q0 = Profile::parse(q0_text, -h, L).sample(xs);
  pd.qdot0 = Profile::parse(qdot0_text, -h, L).sample(xs);
  if (supply_text == "zero") {
    pd.supply = [](double, double) { return 0.0; };
  } else {
    const Profile prof = Profile::parse(supply_text, -h, L);
    const double w = supply_omega;
    pd.supply = [prof, w](double x, double t) {
      return prof(x) * std::cos(w * t);
    };
  }

  auto make_bc = [](BoundaryKind kind, double value) {
    if (value == 0.0)
      return kind == BoundaryKind::Temperature
                 ? BoundaryCondition::temperature_zero()
                 : BoundaryCondition::flux_zero();
    TimeFn f = [value](double) { return value; };
    return kind == BoundaryKind::Temperature
               ? BoundaryCondition::temperature(f)
               : BoundaryCondition::flux(f);
  };

  return Problem(geom, std::move(material), delays, std::move(pd),
                 make_bc(left_kind, left_value), make_bc(right_kind, right_value));
}

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

double parse_number(const std::string& v, int line) {
  try {
    std::size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("expected a number, got '" + v + "'", line);
  }
}

std::size_t parse_count(const std::string& v, int line) {
  const double x = parse_number(v, line);
  if (x < 0 || x != std::floor(x))
    throw ConfigError("expected a nonnegative integer, got '" + v + "'", line);
  return static_cast<std::size_t>(x);
}

bool parse_bool(const std::string& v, int line) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw ConfigError("expected true or false, got '" + v + "'", line);
}

std::vector<double> parse_list(const std::string& v, int line) {
  std::vector<double> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_number(trim(item), line));
  if (out.empty()) throw ConfigError("expected a comma-separated list", line);
  return out;
}

void parse_boundary(const std::string& v, int line, BoundaryKind& kind,
                    double& value) {
  std::istringstream ss(v);
  std::string word, rest;
  ss >> word >> rest;
  if (word == "temperature")
    kind = BoundaryKind::Temperature;
  else if (word == "flux")
    kind = BoundaryKind::NormalFlux;
  else
    throw ConfigError("boundary kind must be 'temperature' or 'flux'", line);
  if (rest.empty() || rest == "zero")
    value = 0.0;
  else
    value = parse_number(rest, line);
}

const std::set<std::string> kKinds = {
    "uniqueness-zero-data", "conservation-law", "continuous-dependence",
    "influence-domain",     "steady-decay",     "convergence-study"};

}  // namespace

ExperimentConfig parse_config(std::istream& in, const std::string& origin) {
  ExperimentConfig cfg;
  std::set<std::string> seen_sections;
  std::string section;
  std::string line;
  int lineno = 0;
  double tau_q = -1.0, tau_T = -1.0;
  StripTemplate strip;
  bool strip_seen = false;

  while (std::getline(in, line)) {
    ++lineno;
    const auto cut = line.find_first_of("#;");
    if (cut != std::string::npos) line.erase(cut);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("unterminated section header", lineno);
      section = trim(line.substr(1, line.size() - 2));
      if (section != "experiment" && section != "geometry" &&
          section != "material" && section != "delays" &&
          section != "initial" && section != "boundary" &&
          section != "supply" && section != "steady")
        throw ConfigError("unknown section [" + section + "]", lineno);
      seen_sections.insert(section);
      if (section == "steady") strip_seen = true;
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("expected 'key = value'", lineno);
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (section.empty())
      throw ConfigError("key '" + key + "' appears before any section", lineno);
    if (val.empty()) throw ConfigError("empty value for '" + key + "'", lineno);

    if (section == "experiment") {
      if (key == "kind") cfg.kind = val;
      else if (key == "name") cfg.name = val;
      else if (key == "t_end") cfg.control.t_end = parse_number(val, lineno);
      else if (key == "dt") cfg.control.dt = parse_number(val, lineno);
      else if (key == "cfl_safety") cfg.control.cfl_safety = parse_number(val, lineno);
      else if (key == "relax_safety") cfg.control.relax_safety = parse_number(val, lineno);
      else if (key == "observer_stride") cfg.control.observer_stride = parse_count(val, lineno);
      else if (key == "snapshot_times") cfg.control.snapshot_times = parse_list(val, lineno);
      else if (key == "enforce_stability") cfg.control.enforce_stability = parse_bool(val, lineno);
      else if (key == "levels") cfg.levels = parse_count(val, lineno);
      else if (key == "threshold") cfg.front_threshold = parse_number(val, lineno);
      else if (key == "output") cfg.output_dir = val;
      else throw ConfigError("unknown key '" + key + "' in [experiment]", lineno);
    } else if (section == "geometry") {
      if (key == "h") cfg.problem.h = parse_number(val, lineno);
      else if (key == "L") cfg.problem.L = parse_number(val, lineno);
      else if (key == "nodes") {
        const std::size_t n = parse_count(val, lineno);
        if (n < 2) throw ConfigError("nodes must be at least 2", lineno);
        cfg.problem.n_cells = n - 1;
      }
      else throw ConfigError("unknown key '" + key + "' in [geometry]", lineno);
    } else if (section == "material") {
      if (key == "a") cfg.problem.a_text = val;
      else if (key == "k") cfg.problem.k_text = val;
      else throw ConfigError("unknown key '" + key + "' in [material]", lineno);
    } else if (section == "delays") {
      if (key == "tau_q") tau_q = parse_number(val, lineno);
      else if (key == "tau_T") tau_T = parse_number(val, lineno);
      else throw ConfigError("unknown key '" + key + "' in [delays]", lineno);
    } else if (section == "initial") {
      if (key == "T0") cfg.problem.T0_text = val;
      else if (key == "q0") cfg.problem.q0_text = val;
      else if (key == "q0_dot") cfg.problem.qdot0_text = val;
      else throw ConfigError("unknown key '" + key + "' in [initial]", lineno);
    } else if (section == "boundary") {
      if (key == "left")
        parse_boundary(val, lineno, cfg.problem.left_kind, cfg.problem.left_value);
      else if (key == "right")
        parse_boundary(val, lineno, cfg.problem.right_kind, cfg.problem.right_value);
      else throw ConfigError("unknown key '" + key + "' in [boundary]", lineno);
    } else if (section == "supply") {
      if (key == "r") cfg.problem.supply_text = val;
      else if (key == "omega") cfg.problem.supply_omega = parse_number(val, lineno);
      else throw ConfigError("unknown key '" + key + "' in [supply]", lineno);
    } else {  // steady
      if (key == "W") strip.W = parse_number(val, lineno);
      else if (key == "L") strip.L = parse_number(val, lineno);
      else if (key == "nx1") strip.nx1 = parse_count(val, lineno);
      else if (key == "nx3") strip.nx3 = parse_count(val, lineno);
      else if (key == "a") strip.a_value = parse_number(val, lineno);
      else if (key == "k") strip.k_value = parse_number(val, lineno);
      else if (key == "h") strip.h_text = val;
      else if (key == "omegas") strip.omegas = parse_list(val, lineno);
      else if (key == "tolerance") strip.envelope_tol = parse_number(val, lineno);
      else throw ConfigError("unknown key '" + key + "' in [steady]", lineno);
    }
  }

  if (cfg.kind.empty())
    throw ConfigError("missing 'kind' in [experiment] of " + origin, 0);
  if (!kKinds.count(cfg.kind))
    throw ConfigError("unknown experiment kind '" + cfg.kind + "'", 0);
  if (!seen_sections.count("delays"))
    throw ConfigError("missing required section [delays] in " + origin, 0);
  if (tau_q < 0.0 || tau_T < 0.0)
    throw ConfigError("[delays] must set both tau_q and tau_T", 0);

  try {
    cfg.delays = DelayPair(tau_q, tau_T);
  } catch (const ValidationError& e) {
    throw ConfigError(e.what(), 0);
  }
  cfg.problem.delays = cfg.delays;
  if (cfg.name.empty()) cfg.name = cfg.kind;

  if (cfg.kind == "steady-decay") {
    if (!strip_seen)
      throw ConfigError("kind steady-decay requires a [steady] section", 0);
    if (strip.omegas.empty())
      throw ConfigError("[steady] must list at least one omega", 0);
    cfg.strip = strip;
  }
  return cfg;
}

ExperimentConfig parse_config_text(const std::string& text,
                                   const std::string& origin) {
  std::istringstream in(text);
  return parse_config(in, origin);
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'", 0);
  return parse_config(in, path);
}

}  // namespace dpl
