#include "sqgcrit/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <charconv>
#include <cstdlib>
#include <fmt/format.h>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "sqgcrit/error.hpp"
#include "sqgcrit/io.hpp"

namespace sqgcrit {
namespace {

namespace pt = boost::property_tree;

const std::map<std::string, std::set<std::string>>& schema() {
  static const std::map<std::string, std::set<std::string>> keys = {
      {"domain", {"N", "G", "quadrature"}},
      {"solver",
       {"T", "dt", "window", "picard_tol", "picard_max_iter", "stepper", "store_stride", "grad_ceiling",
        "horizon_constant"}},
      {"nonlinearity", {"mu", "mu_list", "dealias"}},
      {"initial", {"kind", "m", "n", "amplitude", "sample", "profile", "decay", "normalization", "path"}},
      {"experiment", {"id", "seed", "output", "jobs"}},
      {"ensemble", {"count", "profile", "decay", "normalization", "resolutions"}},
      {"verify",
       {"resolution_slack", "mu_spread", "denominator_guard", "equivalence_window", "psi_constant", "scaling_slack",
        "gamma"}},
      {"besov", {"s", "p", "q", "field"}},
      {"gronwall", {"perturbation", "resolutions", "max_constant"}},
  };
  return keys;
}

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

double to_double(const std::string& field, const std::string& raw) {
  const std::string v = trim(raw);
  if (v == "inf" || v == "infinity") return kInfinity;
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size() || v.empty()) {
    throw ConfigError(field, "expected a number, got '" + raw + "'");
  }
  return out;
}

long long to_integer(const std::string& field, const std::string& raw) {
  const std::string v = trim(raw);
  long long out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size() || v.empty()) {
    throw ConfigError(field, "expected an integer, got '" + raw + "'");
  }
  return out;
}

int to_int(const std::string& field, const std::string& raw) {
  const long long v = to_integer(field, raw);
  if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) {
    throw ConfigError(field, "integer out of range");
  }
  return static_cast<int>(v);
}

std::vector<std::string> split(const std::string& raw) {
  std::vector<std::string> out;
  std::stringstream ss(raw);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

template <class T>
T choose(const std::string& field, const std::string& raw, const std::map<std::string, T>& options) {
  const auto it = options.find(trim(raw));
  if (it != options.end()) return it->second;
  std::string allowed;
  for (const auto& [name, value] : options) allowed += (allowed.empty() ? "" : "|") + name;
  throw ConfigError(field, "expected one of " + allowed + ", got '" + raw + "'");
}

const std::map<std::string, SpectrumProfile> kProfiles = {{"flat", SpectrumProfile::flat},
                                                           {"decay", SpectrumProfile::decay}};
const std::map<std::string, Normalization> kNormalizations = {
    {"none", Normalization::none}, {"l2", Normalization::l2}, {"besov", Normalization::besov_2_2_1}};

std::string name_of(SpectrumProfile p) { return p == SpectrumProfile::flat ? "flat" : "decay"; }
std::string name_of(Normalization n) {
  switch (n) {
    case Normalization::none: return "none";
    case Normalization::l2: return "l2";
    case Normalization::besov_2_2_1: return "besov";
  }
  return "";
}

std::string number(double v) { return std::isinf(v) ? "inf" : fmt::format("{:.17g}", v); }

// Window defaults to T when the file does not set it.
struct Parsed {
  RunConfig cfg;
  bool window_set = false;
};

void apply_override(pt::ptree& tree, const std::string& item) {
  const auto eq = item.find('=');
  const auto dot = item.find('.');
  if (eq == std::string::npos || dot == std::string::npos || dot > eq) {
    throw ConfigError("", "override '" + item + "' must have the form section.key=value");
  }
  const std::string section = trim(item.substr(0, dot));
  const std::string key = trim(item.substr(dot + 1, eq - dot - 1));
  if (section.empty() || key.empty()) throw ConfigError("", "override '" + item + "' has an empty section or key");
  tree.put_child(pt::ptree::path_type(section + "\x1f" + key, '\x1f'), pt::ptree(trim(item.substr(eq + 1))));
}

Parsed interpret(const pt::ptree& tree) {
  const auto& keys = schema();
  for (const auto& [section, body] : tree) {
    const auto it = keys.find(section);
    if (it == keys.end()) {
      if (body.empty() && !body.data().empty()) throw ConfigError(section, "key outside of any section");
      throw ConfigError(section, "unknown section");
    }
    for (const auto& [key, value] : body) {
      if (!it->second.count(key)) throw ConfigError(section + "." + key, "unknown key");
      if (!value.empty()) throw ConfigError(section + "." + key, "nested values are not supported");
    }
  }

  Parsed out;
  RunConfig& c = out.cfg;
  auto get = [&](const std::string& section, const std::string& key) -> std::optional<std::string> {
    const auto child = tree.get_child_optional(pt::ptree::path_type(section + "\x1f" + key, '\x1f'));
    if (!child) return std::nullopt;
    return child->data();
  };
  auto num = [&](const std::string& s, const std::string& k, double& dst) {
    if (auto v = get(s, k)) dst = to_double(s + "." + k, *v);
  };
  auto integer = [&](const std::string& s, const std::string& k, int& dst) {
    if (auto v = get(s, k)) dst = to_int(s + "." + k, *v);
  };

  // domain
  integer("domain", "N", c.domain.modes);
  if (auto g = get("domain", "G")) {
    c.domain.grid = to_int("domain.G", *g);
  } else if (get("domain", "N")) {
    c.domain.grid = DomainSpec::dealiased_grid(c.domain.modes);
  }
  if (auto q = get("domain", "quadrature")) {
    c.domain.quadrature = choose<Quadrature>("domain.quadrature", *q,
                                             {{"trapezoid", Quadrature::trapezoid}, {"midpoint", Quadrature::midpoint}});
  }

  // solver
  if (auto t = get("solver", "T")) {
    if (trim(*t) == "auto") {
      c.horizon_auto = true;
    } else {
      c.solver.horizon = to_double("solver.T", *t);
    }
  }
  num("solver", "dt", c.solver.dt);
  if (auto w = get("solver", "window")) {
    c.solver.window = to_double("solver.window", *w);
    out.window_set = true;
  }
  num("solver", "picard_tol", c.solver.picard_tol);
  integer("solver", "picard_max_iter", c.solver.picard_max_iter);
  if (auto s = get("solver", "stepper")) {
    c.solver.stepper = choose<Stepper>("solver.stepper", *s,
                                       {{"picard", Stepper::picard}, {"rk4", Stepper::rk4}, {"explicit_rk4", Stepper::rk4}});
  }
  integer("solver", "store_stride", c.solver.store_stride);
  num("solver", "grad_ceiling", c.solver.grad_ceiling);
  num("solver", "horizon_constant", c.horizon_constant);

  // nonlinearity
  num("nonlinearity", "mu", c.mu);
  if (auto l = get("nonlinearity", "mu_list")) {
    c.mus.clear();
    for (const auto& item : split(*l)) c.mus.push_back(to_double("nonlinearity.mu_list", item));
  }
  if (auto d = get("nonlinearity", "dealias")) {
    c.solver.dealias = choose<Dealias>("nonlinearity.dealias", *d,
                                       {{"three_halves", Dealias::three_halves}, {"none", Dealias::none}});
  }

  // initial
  if (auto k = get("initial", "kind")) {
    c.initial.kind = choose<InitialKind>(
        "initial.kind", *k,
        {{"mode", InitialKind::mode}, {"random", InitialKind::random}, {"checkpoint", InitialKind::checkpoint}});
  }
  integer("initial", "m", c.initial.m);
  integer("initial", "n", c.initial.n);
  num("initial", "amplitude", c.initial.amplitude);
  integer("initial", "sample", c.initial.sample);
  if (auto p = get("initial", "profile")) c.initial.profile = choose("initial.profile", *p, kProfiles);
  num("initial", "decay", c.initial.decay_rate);
  if (auto n = get("initial", "normalization")) c.initial.normalization = choose("initial.normalization", *n, kNormalizations);
  if (auto p = get("initial", "path")) c.initial.path = trim(*p);

  // experiment
  if (auto id = get("experiment", "id")) c.experiment = trim(*id);
  if (auto s = get("experiment", "seed")) {
    const long long v = to_integer("experiment.seed", *s);
    if (v < 0) throw ConfigError("experiment.seed", "must be non-negative");
    c.seed = static_cast<std::uint64_t>(v);
  }
  if (auto o = get("experiment", "output")) c.output = std::filesystem::path(trim(*o));
  integer("experiment", "jobs", c.jobs);

  // ensemble
  integer("ensemble", "count", c.ensemble.count);
  if (auto p = get("ensemble", "profile")) c.ensemble.profile = choose("ensemble.profile", *p, kProfiles);
  num("ensemble", "decay", c.ensemble.decay_rate);
  if (auto n = get("ensemble", "normalization")) c.ensemble.normalization = choose("ensemble.normalization", *n, kNormalizations);
  if (auto r = get("ensemble", "resolutions")) {
    c.ensemble.resolutions.clear();
    for (const auto& item : split(*r)) c.ensemble.resolutions.push_back(to_int("ensemble.resolutions", item));
  }
  c.ensemble.seed = c.seed;

  // verify
  num("verify", "resolution_slack", c.tolerances.resolution_slack);
  num("verify", "mu_spread", c.tolerances.mu_spread);
  num("verify", "denominator_guard", c.tolerances.denominator_guard);
  num("verify", "equivalence_window", c.tolerances.equivalence_window);
  num("verify", "psi_constant", c.tolerances.psi_constant);
  num("verify", "scaling_slack", c.tolerances.scaling_slack);
  num("verify", "gamma", c.gamma);

  // besov
  num("besov", "s", c.besov.s);
  num("besov", "p", c.besov.p);
  num("besov", "q", c.besov.q);
  if (auto f = get("besov", "field")) c.besov_field = std::filesystem::path(trim(*f));

  // gronwall
  num("gronwall", "perturbation", c.perturbation);
  if (auto r = get("gronwall", "resolutions")) {
    c.gronwall_resolutions.clear();
    for (const auto& item : split(*r)) c.gronwall_resolutions.push_back(to_int("gronwall.resolutions", item));
  }
  num("gronwall", "max_constant", c.gronwall_max_constant);

  c.window_follows_horizon = !out.window_set;
  if (c.window_follows_horizon && !c.horizon_auto) c.solver.window = c.solver.horizon;
  return out;
}

RunConfig finish(const pt::ptree& tree) {
  Parsed parsed = interpret(tree);
  parsed.cfg.validate();
  return parsed.cfg;
}

}  // namespace

void RunConfig::validate() const {
  if (domain.modes < 1) throw ConfigError("domain.N", "must be at least 1");
  if (domain.grid < domain.modes) throw ConfigError("domain.G", "grid size G must be at least N");
  if (solver.dealias == Dealias::three_halves && !domain.dealiased()) {
    throw ConfigError("domain.G", "3/2-rule dealiasing needs G >= 3N/2");
  }
  if (horizon_auto) {
    if (!(horizon_constant > 0.0)) throw ConfigError("solver.horizon_constant", "must be positive");
    if (!(solver.dt > 0.0)) throw ConfigError("solver.dt", "time step must be positive");
    if (!window_follows_horizon && !(solver.window >= solver.dt)) {
      throw ConfigError("solver.window", "window must be at least dt");
    }
  } else {
    solver.validate();
  }
  if (!(mu >= 0.0) || !std::isfinite(mu)) throw ConfigError("nonlinearity.mu", "must be finite and non-negative");
  if (mus.empty()) throw ConfigError("nonlinearity.mu_list", "needs at least one value");
  for (std::size_t k = 0; k < mus.size(); ++k) {
    if (!(mus[k] > 0.0)) throw ConfigError("nonlinearity.mu_list", "values must be positive");
    if (k > 0 && !(mus[k] < mus[k - 1])) throw ConfigError("nonlinearity.mu_list", "values must decrease strictly");
  }
  if (initial.kind == InitialKind::mode) {
    if (initial.m < 1 || initial.m > domain.modes) throw ConfigError("initial.m", "mode index outside 1..N");
    if (initial.n < 1 || initial.n > domain.modes) throw ConfigError("initial.n", "mode index outside 1..N");
  }
  if (initial.sample < 0) throw ConfigError("initial.sample", "must be non-negative");
  if (!(initial.decay_rate >= 0.0)) throw ConfigError("initial.decay", "must be non-negative");
  if (initial.kind == InitialKind::checkpoint && initial.path.empty()) {
    throw ConfigError("initial.path", "checkpoint initial data needs a path");
  }
  if (experiment.empty() || experiment.find_first_of("/\\") != std::string::npos) {
    throw ConfigError("experiment.id", "must be a non-empty name without path separators");
  }
  if (jobs < 1) throw ConfigError("experiment.jobs", "must be at least 1");
  ensemble.validate();
  if (!(tolerances.resolution_slack >= 1.0)) throw ConfigError("verify.resolution_slack", "must be >= 1");
  if (!(tolerances.mu_spread >= 1.0)) throw ConfigError("verify.mu_spread", "must be >= 1");
  if (!(tolerances.denominator_guard >= 0.0)) throw ConfigError("verify.denominator_guard", "must be >= 0");
  if (!(tolerances.equivalence_window >= 1.0)) throw ConfigError("verify.equivalence_window", "must be >= 1");
  if (!(tolerances.psi_constant > 0.0)) throw ConfigError("verify.psi_constant", "must be positive");
  if (!(tolerances.scaling_slack >= 0.0)) throw ConfigError("verify.scaling_slack", "must be >= 0");
  if (!(gamma > 0.0 && gamma < 0.5)) throw ConfigError("verify.gamma", "must lie in (0, 1/2)");
  if (!(besov.p >= 1.0)) throw ConfigError("besov.p", "must be >= 1");
  if (!(besov.q >= 1.0)) throw ConfigError("besov.q", "must be >= 1");
  if (!std::isfinite(besov.s)) throw ConfigError("besov.s", "must be finite");
  if (!(perturbation > 0.0)) throw ConfigError("gronwall.perturbation", "must be positive");
  if (gronwall_resolutions.empty()) throw ConfigError("gronwall.resolutions", "needs at least one resolution");
  for (int n : gronwall_resolutions) {
    if (n < 1) throw ConfigError("gronwall.resolutions", "resolutions must be positive");
  }
  if (!(gronwall_max_constant > 0.0)) throw ConfigError("gronwall.max_constant", "must be positive");
}

RunConfig parse_config(const std::string& text, const std::vector<std::string>& overrides, const std::string& origin) {
  pt::ptree tree;
  std::istringstream in(text);
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError("", fmt::format("{}:{}: {}", origin, e.line(), e.message()));
  }
  for (const auto& item : overrides) apply_override(tree, item);
  return finish(tree);
}

RunConfig load_config(const std::filesystem::path& path, const std::vector<std::string>& overrides) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), overrides, path.string());
}

RunConfig default_config(const std::vector<std::string>& overrides) { return parse_config("", overrides); }

std::string render_config(const RunConfig& c) {
  std::string out;
  auto list = [](const auto& values) {
    std::string s;
    for (const auto& v : values) {
      if (!s.empty()) s += ",";
      if constexpr (std::is_same_v<std::decay_t<decltype(v)>, double>) {
        s += number(v);
      } else {
        s += std::to_string(v);
      }
    }
    return s;
  };
  out += fmt::format("[domain]\nN={}\nG={}\nquadrature={}\n\n", c.domain.modes, c.domain.grid,
                     c.domain.quadrature == Quadrature::midpoint ? "midpoint" : "trapezoid");
  out += fmt::format(
      "[solver]\nT={}\ndt={}\n{}picard_tol={}\npicard_max_iter={}\nstepper={}\nstore_stride={}\n"
      "grad_ceiling={}\nhorizon_constant={}\n\n",
      c.horizon_auto ? "auto" : number(c.solver.horizon), number(c.solver.dt),
      c.window_follows_horizon ? std::string() : "window=" + number(c.solver.window) + "\n",
      number(c.solver.picard_tol), c.solver.picard_max_iter, c.solver.stepper == Stepper::rk4 ? "rk4" : "picard",
      c.solver.store_stride, number(c.solver.grad_ceiling), number(c.horizon_constant));
  out += fmt::format("[nonlinearity]\nmu={}\nmu_list={}\ndealias={}\n\n", number(c.mu), list(c.mus),
                     c.solver.dealias == Dealias::none ? "none" : "three_halves");
  const char* kind = c.initial.kind == InitialKind::mode ? "mode"
                     : c.initial.kind == InitialKind::random ? "random"
                                                             : "checkpoint";
  out += fmt::format("[initial]\nkind={}\nm={}\nn={}\namplitude={}\nsample={}\nprofile={}\ndecay={}\nnormalization={}\n",
                     kind, c.initial.m, c.initial.n, number(c.initial.amplitude), c.initial.sample,
                     name_of(c.initial.profile), number(c.initial.decay_rate), name_of(c.initial.normalization));
  if (!c.initial.path.empty()) out += fmt::format("path={}\n", c.initial.path.string());
  out += fmt::format("\n[experiment]\nid={}\nseed={}\njobs={}\n", c.experiment, c.seed, c.jobs);
  if (c.output) out += fmt::format("output={}\n", c.output->string());
  out += fmt::format("\n[ensemble]\ncount={}\nprofile={}\ndecay={}\nnormalization={}\nresolutions={}\n\n",
                     c.ensemble.count, name_of(c.ensemble.profile), number(c.ensemble.decay_rate),
                     name_of(c.ensemble.normalization), list(c.ensemble.resolutions));
  out += fmt::format(
      "[verify]\nresolution_slack={}\nmu_spread={}\ndenominator_guard={}\nequivalence_window={}\npsi_constant={}\n"
      "scaling_slack={}\ngamma={}\n\n",
      number(c.tolerances.resolution_slack), number(c.tolerances.mu_spread), number(c.tolerances.denominator_guard),
      number(c.tolerances.equivalence_window), number(c.tolerances.psi_constant), number(c.tolerances.scaling_slack),
      number(c.gamma));
  out += fmt::format("[besov]\ns={}\np={}\nq={}\n", number(c.besov.s), number(c.besov.p), number(c.besov.q));
  if (c.besov_field) out += fmt::format("field={}\n", c.besov_field->string());
  out += fmt::format("\n[gronwall]\nperturbation={}\nresolutions={}\nmax_constant={}\n", number(c.perturbation),
                     list(c.gronwall_resolutions), number(c.gronwall_max_constant));
  return out;
}

SolverConfig resolve_solver(const RunConfig& cfg, const SpectralField& theta0) {
  SolverConfig out = cfg.solver;
  if (cfg.horizon_auto) {
    const double t = existence_window(theta0, cfg.horizon_constant);
    if (!std::isfinite(t)) throw ConfigError("solver.T", "T = auto is undefined for zero initial data");
    out.horizon = t;
  }
  if (cfg.window_follows_horizon) out.window = out.horizon;
  out.validate();
  return out;
}

std::filesystem::path run_directory(const RunConfig& cfg) {
  if (cfg.output) return *cfg.output;
  if (const char* root = std::getenv("SQGCRIT_OUTPUT_ROOT"); root && *root) {
    return std::filesystem::path(root) / cfg.experiment;
  }
  return std::filesystem::path("runs") / cfg.experiment;
}

SpectralField initial_field(const RunConfig& cfg) {
  switch (cfg.initial.kind) {
    case InitialKind::mode:
      return SpectralField::mode(cfg.domain, cfg.initial.m, cfg.initial.n, cfg.initial.amplitude);
    case InitialKind::random: {
      EnsembleSpec spec;
      spec.count = cfg.initial.sample + 1;
      spec.profile = cfg.initial.profile;
      spec.decay_rate = cfg.initial.decay_rate;
      spec.seed = cfg.seed;
      spec.resolutions = {cfg.domain.modes};
      spec.normalization = cfg.initial.normalization;
      return cfg.initial.amplitude * random_field(cfg.domain, spec, cfg.initial.sample);
    }
    case InitialKind::checkpoint: {
      const Checkpoint cp = read_checkpoint(cfg.initial.path);
      if (cp.field.modes() != cfg.domain.modes) {
        throw ConfigError("initial.path", fmt::format("checkpoint has N={} but domain.N={}", cp.field.modes(),
                                                      cfg.domain.modes));
      }
      return cp.field.with_domain(cfg.domain);
    }
  }
  throw ConfigError("initial.kind", "unsupported initial data");
}

}  // namespace sqgcrit
