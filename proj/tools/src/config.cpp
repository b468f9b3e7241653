#include "qss/cli/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "qss/cli/toml.hpp"

namespace qss::cli {

const char* to_string(InitialKind kind) noexcept {
  switch (kind) {
    case InitialKind::gaussian: return "gaussian";
    case InitialKind::plane_wave: return "plane_wave";
    case InitialKind::ground_state_file: return "ground_state_file";
    case InitialKind::ground_state: return "ground_state";
  }
  return "unknown";
}

namespace {

// Reads typed keys from one table and remembers which were consumed.
class Section {
 public:
  Section(std::string name, const TomlTable* table) : name_(std::move(name)), table_(table) {}

  bool present() const { return table_ != nullptr; }

  const TomlValue* find(const std::string& key) {
    if (!table_) return nullptr;
    auto it = table_->find(key);
    if (it == table_->end()) return nullptr;
    used_.insert(key);
    return &it->second;
  }

  void read(const std::string& key, double& out) {
    if (const TomlValue* v = find(key)) out = as_double(key, *v);
  }

  void read(const std::string& key, int& out) {
    if (const TomlValue* v = find(key)) out = static_cast<int>(as_int(key, *v));
  }

  void read(const std::string& key, std::uint64_t& out) {
    if (const TomlValue* v = find(key)) {
      const auto x = as_int(key, *v);
      if (x < 0) bad(key, "must be nonnegative");
      out = static_cast<std::uint64_t>(x);
    }
  }

  void read(const std::string& key, bool& out) {
    if (const TomlValue* v = find(key)) {
      if (!v->is_bool()) bad(key, "expected a boolean");
      out = std::get<bool>(v->data);
    }
  }

  void read(const std::string& key, std::string& out) {
    if (const TomlValue* v = find(key)) {
      if (!v->is_string()) bad(key, "expected a string");
      out = std::get<std::string>(v->data);
    }
  }

  void read(const std::string& key, std::vector<int>& out) {
    if (const TomlValue* v = find(key)) {
      if (!v->is_array()) bad(key, "expected an array of integers");
      out.clear();
      for (const auto& e : std::get<TomlArray>(v->data)) out.push_back(static_cast<int>(as_int(key, e)));
    }
  }

  void read(const std::string& key, std::vector<double>& out) {
    if (const TomlValue* v = find(key)) {
      if (!v->is_array()) bad(key, "expected an array of numbers");
      out.clear();
      for (const auto& e : std::get<TomlArray>(v->data)) out.push_back(as_double(key, e));
    }
  }

  void reject_unknown() const {
    if (!table_) return;
    for (const auto& [key, value] : *table_) {
      if (!used_.count(key)) {
        throw ConfigError("unknown key '" + key + "' in " + label());
      }
    }
  }

  [[noreturn]] void bad(const std::string& key, const std::string& what) const {
    throw ConfigError(label() + "." + key + ": " + what);
  }

 private:
  std::string label() const { return name_.empty() ? "top level" : "[" + name_ + "]"; }

  double as_double(const std::string& key, const TomlValue& v) const {
    if (v.is_float()) return std::get<double>(v.data);
    if (v.is_int()) return static_cast<double>(std::get<std::int64_t>(v.data));
    bad(key, "expected a number");
  }

  std::int64_t as_int(const std::string& key, const TomlValue& v) const {
    if (!v.is_int()) bad(key, "expected an integer");
    return std::get<std::int64_t>(v.data);
  }

  std::string name_;
  const TomlTable* table_;
  std::set<std::string> used_;
};

const std::set<std::string> known_tables = {"", "grid", "physics", "integrator", "groundstate",
                                            "initial", "output", "scenario"};

InitialKind parse_kind(const std::string& s) {
  for (auto k : {InitialKind::gaussian, InitialKind::plane_wave, InitialKind::ground_state_file,
                 InitialKind::ground_state}) {
    if (s == to_string(k)) return k;
  }
  throw ConfigError("[initial].kind: unknown preset '" + s + "'");
}

}  // namespace

RunConfig parse_config(std::string_view text) {
  TomlDocument doc;
  try {
    doc = parse_toml(text);
  } catch (const TomlError& e) {
    throw ConfigError(std::string("config syntax: ") + e.what());
  }
  for (const auto& [name, table] : doc.tables) {
    if (!known_tables.count(name)) throw ConfigError("unknown table [" + name + "]");
  }
  auto section = [&](const std::string& name) {
    auto it = doc.tables.find(name);
    return Section(name, it == doc.tables.end() ? nullptr : &it->second);
  };

  RunConfig c;
  try {
    Section root = section("");
    root.read("seed", c.seed);
    root.reject_unknown();

    Section grid = section("grid");
    if (!grid.present()) throw ConfigError("missing [grid] table");
    int n = 0;
    std::vector<int> points;
    std::vector<double> lengths;
    grid.read("n", n);
    grid.read("points", points);
    grid.read("lengths", lengths);
    grid.reject_unknown();
    c.grid = Grid(n, points, lengths);

    Section phys = section("physics");
    phys.read("gamma1", c.physics.gamma1);
    phys.read("gamma2", c.physics.gamma2);
    phys.read("beta", c.physics.beta);
    phys.read("omega", c.physics.omega);
    phys.reject_unknown();
    validate(c.physics);

    Section integ = section("integrator");
    integ.read("dt0", c.integrator.dt0);
    integ.read("dt_min", c.integrator.dt_min);
    integ.read("dt_max", c.integrator.dt_max);
    integ.read("t_end", c.integrator.t_end);
    integ.read("cfl_const", c.integrator.cfl_const);
    integ.read("blowup_factor", c.integrator.blowup_factor);
    integ.read("record_every", c.integrator.record_every);
    integ.read("dealias", c.integrator.dealias);
    integ.reject_unknown();
    validate(c.integrator);

    Section gs = section("groundstate");
    gs.read("max_iter", c.groundstate.max_iter);
    gs.read("tol", c.groundstate.tol);
    gs.read("stab_exponent", c.groundstate.stab_exponent);
    gs.read("relaxation", c.groundstate.relaxation);
    GaussianPreset guess = std::get<GaussianPreset>(c.groundstate.init);
    gs.read("init_amplitude_u", guess.amplitude_u);
    gs.read("init_amplitude_v", guess.amplitude_v);
    gs.read("init_width", guess.width);
    c.groundstate.init = guess;
    gs.reject_unknown();
    validate(c.groundstate);
    if (!(guess.width > 0.0)) throw ConfigError("[groundstate].init_width must be positive");

    Section init = section("initial");
    std::string kind = to_string(c.initial.kind);
    std::string path;
    init.read("kind", kind);
    c.initial.kind = parse_kind(kind);
    init.read("amplitude_u", c.initial.gaussian.amplitude_u);
    init.read("amplitude_v", c.initial.gaussian.amplitude_v);
    init.read("width", c.initial.gaussian.width);
    init.read("mode", c.initial.plane_wave.mode);
    init.read("path", path);
    init.read("scale", c.initial.scale);
    init.reject_unknown();
    c.initial.path = path;
    c.initial.plane_wave.amplitude_u = c.initial.gaussian.amplitude_u;
    c.initial.plane_wave.amplitude_v = c.initial.gaussian.amplitude_v;
    switch (c.initial.kind) {
      case InitialKind::gaussian:
        if (!(c.initial.gaussian.width > 0.0)) throw ConfigError("[initial].width must be positive");
        break;
      case InitialKind::plane_wave:
        if (static_cast<int>(c.initial.plane_wave.mode.size()) != c.grid.dim()) {
          throw ConfigError("[initial].mode needs one entry per grid axis");
        }
        break;
      case InitialKind::ground_state_file:
        if (path.empty()) throw ConfigError("[initial].path is required for ground_state_file");
        break;
      case InitialKind::ground_state:
        validate_for_ground_state(c.physics);
        break;
    }

    Section out = section("output");
    out.read("snapshot_every", c.output.snapshot_every);
    out.reject_unknown();
    if (c.output.snapshot_every < 0) throw ConfigError("[output].snapshot_every must be >= 0");

    Section sc = section("scenario");
    sc.read("scale", c.scenario.scale);
    if (const TomlValue* v = sc.find("branch2_beta")) {
      if (v->is_float()) {
        c.scenario.branch2_beta = std::get<double>(v->data);
      } else if (v->is_int()) {
        c.scenario.branch2_beta = static_cast<double>(std::get<std::int64_t>(v->data));
      } else {
        sc.bad("branch2_beta", "expected a number");
      }
    }
    sc.read("perturbations", c.scenario.perturbations);
    sc.read("epsilon", c.scenario.epsilon);
    sc.read("growth_limit", c.scenario.growth_limit);
    sc.read("tolerance", c.scenario.tolerance);
    sc.read("trials", c.scenario.trials);
    sc.read("cgn_band", c.scenario.cgn_band);
    sc.reject_unknown();
    if (c.scenario.perturbations < 1 || c.scenario.trials < 1) {
      throw ConfigError("[scenario] counts must be >= 1");
    }
    if (!(c.scenario.epsilon > 0.0) || !(c.scenario.growth_limit > 1.0) || !(c.scenario.tolerance > 0.0) ||
        !(c.scenario.cgn_band > 0.0) || !(c.scenario.scale > 0.0)) {
      throw ConfigError("[scenario] tolerances and scales must be positive (growth_limit > 1)");
    }
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string to_toml(const RunConfig& c) {
  std::ostringstream o;
  auto ints = [](const std::vector<int>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + std::to_string(v[i]);
    return s + "]";
  };
  auto floats = [](const std::vector<double>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + toml_float(v[i]);
    return s + "]";
  };
  auto boolean = [](bool b) { return b ? "true" : "false"; };
  const auto& guess = std::get<GaussianPreset>(c.groundstate.init);

  o << "seed = " << c.seed << "\n\n";
  o << "[grid]\n"
    << "n = " << c.grid.dim() << "\n"
    << "points = " << ints(c.grid.points()) << "\n"
    << "lengths = " << floats(c.grid.lengths()) << "\n\n";
  o << "[physics]\n"
    << "gamma1 = " << toml_float(c.physics.gamma1) << "\n"
    << "gamma2 = " << toml_float(c.physics.gamma2) << "\n"
    << "beta = " << toml_float(c.physics.beta) << "\n"
    << "omega = " << toml_float(c.physics.omega) << "\n\n";
  o << "[integrator]\n"
    << "dt0 = " << toml_float(c.integrator.dt0) << "\n"
    << "dt_min = " << toml_float(c.integrator.dt_min) << "\n"
    << "dt_max = " << toml_float(c.integrator.dt_max) << "\n"
    << "t_end = " << toml_float(c.integrator.t_end) << "\n"
    << "cfl_const = " << toml_float(c.integrator.cfl_const) << "\n"
    << "blowup_factor = " << toml_float(c.integrator.blowup_factor) << "\n"
    << "record_every = " << c.integrator.record_every << "\n"
    << "dealias = " << boolean(c.integrator.dealias) << "\n\n";
  o << "[groundstate]\n"
    << "max_iter = " << c.groundstate.max_iter << "\n"
    << "tol = " << toml_float(c.groundstate.tol) << "\n"
    << "stab_exponent = " << toml_float(c.groundstate.stab_exponent) << "\n"
    << "relaxation = " << toml_float(c.groundstate.relaxation) << "\n"
    << "init_amplitude_u = " << toml_float(guess.amplitude_u) << "\n"
    << "init_amplitude_v = " << toml_float(guess.amplitude_v) << "\n"
    << "init_width = " << toml_float(guess.width) << "\n\n";
  o << "[initial]\n"
    << "kind = " << toml_string(to_string(c.initial.kind)) << "\n"
    << "amplitude_u = " << toml_float(c.initial.gaussian.amplitude_u) << "\n"
    << "amplitude_v = " << toml_float(c.initial.gaussian.amplitude_v) << "\n"
    << "width = " << toml_float(c.initial.gaussian.width) << "\n";
  if (!c.initial.plane_wave.mode.empty()) o << "mode = " << ints(c.initial.plane_wave.mode) << "\n";
  if (!c.initial.path.empty()) o << "path = " << toml_string(c.initial.path.string()) << "\n";
  o << "scale = " << toml_float(c.initial.scale) << "\n\n";
  o << "[output]\n"
    << "snapshot_every = " << c.output.snapshot_every << "\n\n";
  o << "[scenario]\n"
    << "scale = " << toml_float(c.scenario.scale) << "\n";
  if (c.scenario.branch2_beta) o << "branch2_beta = " << toml_float(*c.scenario.branch2_beta) << "\n";
  o << "perturbations = " << c.scenario.perturbations << "\n"
    << "epsilon = " << toml_float(c.scenario.epsilon) << "\n"
    << "growth_limit = " << toml_float(c.scenario.growth_limit) << "\n"
    << "tolerance = " << toml_float(c.scenario.tolerance) << "\n"
    << "trials = " << c.scenario.trials << "\n"
    << "cgn_band = " << toml_float(c.scenario.cgn_band) << "\n";
  return o.str();
}

Preset initial_preset(const InitialConfig& initial) {
  switch (initial.kind) {
    case InitialKind::gaussian: return initial.gaussian;
    case InitialKind::plane_wave: return initial.plane_wave;
    case InitialKind::ground_state_file: return GroundStateFilePreset{initial.path, initial.scale};
    case InitialKind::ground_state: break;
  }
  throw ConfigError("ground_state initial data has no static preset");
}

}  // namespace qss::cli
