#include "sggl/config.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "json.hpp"

namespace sggl {

using nlohmann::json;

namespace {

struct KeyDoc {
  const char* key;
  const char* what;
};

// Order is the order of --help output and of dump_config.
const KeyDoc kKeys[] = {
    {"params.alpha", "dispersion of the linear term"},
    {"params.beta", "dispersion of the nonlinear term"},
    {"params.gamma", "linear gain, >= 0"},
    {"params.sigma", "nonlinearity exponent, > 0 (theory needs > 2)"},
    {"params.lambda1_x_re", "derivative coefficient lambda1, x component, real part"},
    {"params.lambda1_x_im", "lambda1, x component, imaginary part"},
    {"params.lambda1_y_re", "lambda1, y component, real part"},
    {"params.lambda1_y_im", "lambda1, y component, imaginary part"},
    {"params.lambda2_x_re", "derivative coefficient lambda2, x component, real part"},
    {"params.lambda2_x_im", "lambda2, x component, imaginary part"},
    {"params.lambda2_y_re", "lambda2, y component, real part"},
    {"params.lambda2_y_im", "lambda2, y component, imaginary part"},
    {"params.L1", "side length in x"},
    {"params.L2", "side length in y"},
    {"noise.marks", "number of atoms (optional, must equal len(nu))"},
    {"noise.nu", "atom intensities, > 0"},
    {"noise.h", "atom weights, >= 0"},
    {"noise.family", "\"linear\" or \"quadratic\""},
    {"noise.c", "linear family amplitude"},
    {"noise.cap", "quadratic family cap on |u| (\"inf\" for none)"},
    {"noise.p", "moment order for the p-th moment bound, 2 <= p < 2 sigma"},
    {"sim.n1", "modes in x"},
    {"sim.n2", "modes in y"},
    {"sim.dt", "time step"},
    {"sim.t_end", "horizon T"},
    {"sim.blowup_radius", "stop a path once ||u||^2 >= this"},
    {"sim.seed", "RNG seed"},
    {"sim.n_paths", "ensemble size"},
    {"sim.snap_every", "keep the full state every k grid steps (0: first and last)"},
    {"sim.pad", "collocation padding factor (0: max(ceil(sigma+1), 3))"},
    {"sim.levels", "truncation levels for galerkin-scan"},
    {"sim.delta", "initial separation for uniqueness"},
    {"sim.initial.mode", "\"zero\", \"mode\", \"gaussian\" or \"random\""},
    {"sim.initial.amplitude", "L2 norm (random), peak (gaussian) or coefficient (mode)"},
    {"sim.initial.j", "mode index in x (mode)"},
    {"sim.initial.k", "mode index in y (mode)"},
    {"sim.initial.width", "bump width as a fraction of the side (gaussian)"},
    {"sim.initial.modes", "modes per axis (random)"},
    {"sim.initial.decay", "spectral decay exponent (random)"},
    {"monotonicity.eps8", "Young splitting parameter"},
    {"monotonicity.eps9", "Young splitting parameter"},
    {"monotonicity.eps10", "Young splitting parameter"},
    {"monotonicity.eps11", "Young splitting parameter"},
    {"monotonicity.eps12", "Young splitting parameter"},
    {"monotonicity.eps13", "Young splitting parameter"},
    {"monotonicity.eps14", "Young splitting parameter"},
    {"monotonicity.eps15", "Young splitting parameter"},
    {"monotonicity.samples", "field pairs per inequality check"},
    {"monotonicity.oy_samples", "draws for the pointwise C^d check"},
    {"monotonicity.sample_modes", "modes per axis of sampled fields"},
    {"monotonicity.seed", "seed of the inequality sampler"},
};

const char* mode_name(InitialCondition::Mode m) {
  switch (m) {
    case InitialCondition::Mode::Zero: return "zero";
    case InitialCondition::Mode::Mode: return "mode";
    case InitialCondition::Mode::Gaussian: return "gaussian";
    case InitialCondition::Mode::Random: return "random";
  }
  return "random";
}

json to_json(const RunConfig& c) {
  json j;
  auto& p = j["params"];
  p["alpha"] = c.params.alpha;
  p["beta"] = c.params.beta;
  p["gamma"] = c.params.gamma;
  p["sigma"] = c.params.sigma;
  const char* ax[] = {"x", "y"};
  for (int i = 0; i < 2; ++i) {
    p[std::string("lambda1_") + ax[i] + "_re"] = c.params.lambda1[i].real();
    p[std::string("lambda1_") + ax[i] + "_im"] = c.params.lambda1[i].imag();
    p[std::string("lambda2_") + ax[i] + "_re"] = c.params.lambda2[i].real();
    p[std::string("lambda2_") + ax[i] + "_im"] = c.params.lambda2[i].imag();
  }
  p["L1"] = c.params.L1;
  p["L2"] = c.params.L2;

  auto& n = j["noise"];
  n["marks"] = c.noise.marks();
  n["nu"] = c.noise.nu;
  n["h"] = c.noise.h;
  n["family"] = c.noise.family == NoiseFamily::Linear ? "linear" : "quadratic";
  n["c"] = c.noise.c;
  if (std::isinf(c.noise.cap))
    n["cap"] = "inf";
  else
    n["cap"] = c.noise.cap;
  n["p"] = c.noise.p;

  auto& s = j["sim"];
  s["n1"] = c.sim.n1;
  s["n2"] = c.sim.n2;
  s["dt"] = c.sim.dt;
  s["t_end"] = c.sim.t_end;
  s["blowup_radius"] = c.sim.blowup_radius;
  s["seed"] = c.sim.seed;
  s["n_paths"] = c.sim.n_paths;
  s["snap_every"] = c.sim.snap_every;
  s["pad"] = c.sim.pad;
  s["levels"] = c.levels;
  s["delta"] = c.delta;
  auto& ic = s["initial"];
  ic["mode"] = mode_name(c.initial.mode);
  ic["amplitude"] = c.initial.amplitude;
  ic["j"] = c.initial.j;
  ic["k"] = c.initial.k;
  ic["width"] = c.initial.width;
  ic["modes"] = c.initial.modes;
  ic["decay"] = c.initial.decay;

  auto& m = j["monotonicity"];
  const auto& e = c.monotonicity;
  m["eps8"] = e.eps8;
  m["eps9"] = e.eps9;
  m["eps10"] = e.eps10;
  m["eps11"] = e.eps11;
  m["eps12"] = e.eps12;
  m["eps13"] = e.eps13;
  m["eps14"] = e.eps14;
  m["eps15"] = e.eps15;
  m["samples"] = c.suite.samples;
  m["oy_samples"] = c.suite.oy_samples;
  m["sample_modes"] = c.suite.n;
  m["seed"] = c.suite.seed;
  return j;
}

// Typed reads that name the dotted key on failure.
class Reader {
 public:
  Reader(const json& obj, std::string prefix) : obj_(obj), prefix_(std::move(prefix)) {
    if (!obj_.is_object()) throw ConfigError(prefix_.empty() ? "<root>" : prefix_, "must be an object");
    for (auto it = obj_.begin(); it != obj_.end(); ++it) seen_[it.key()] = false;
  }

  std::string key(const std::string& k) const { return prefix_.empty() ? k : prefix_ + "." + k; }

  bool has(const std::string& k) const { return obj_.contains(k); }

  const json* raw(const std::string& k) {
    if (!obj_.contains(k)) return nullptr;
    seen_[k] = true;
    return &obj_.at(k);
  }

  void num(const std::string& k, double& out) {
    if (const json* v = raw(k)) {
      if (!v->is_number()) throw ConfigError(key(k), "expected a number");
      out = v->get<double>();
    }
  }

  template <class Int>
  void count(const std::string& k, Int& out) {
    if (const json* v = raw(k)) {
      if (!v->is_number_integer() || v->get<long long>() < 0)
        throw ConfigError(key(k), "expected a non-negative integer");
      out = static_cast<Int>(v->get<unsigned long long>());
    }
  }

  void str(const std::string& k, std::string& out) {
    if (const json* v = raw(k)) {
      if (!v->is_string()) throw ConfigError(key(k), "expected a string");
      out = v->get<std::string>();
    }
  }

  template <class T>
  void list(const std::string& k, std::vector<T>& out) {
    if (const json* v = raw(k)) {
      if (!v->is_array()) throw ConfigError(key(k), "expected an array");
      out.clear();
      for (const auto& x : *v) {
        if (!x.is_number()) throw ConfigError(key(k), "expected an array of numbers");
        if constexpr (std::is_integral_v<T>) {
          if (!x.is_number_integer() || x.get<long long>() < 0)
            throw ConfigError(key(k), "expected non-negative integers");
          out.push_back(static_cast<T>(x.get<unsigned long long>()));
        } else {
          out.push_back(x.get<T>());
        }
      }
    }
  }

  void reject_unknown() const {
    for (const auto& [k, used] : seen_)
      if (!used) throw ConfigError(key(k), "unknown key");
  }

 private:
  const json& obj_;
  std::string prefix_;
  std::map<std::string, bool> seen_;
};

void read_params(Reader& r, GLParams& p) {
  r.num("alpha", p.alpha);
  r.num("beta", p.beta);
  r.num("gamma", p.gamma);
  r.num("sigma", p.sigma);
  const char* ax[] = {"x", "y"};
  for (int i = 0; i < 2; ++i) {
    for (int which = 1; which <= 2; ++which) {
      CVec2& v = which == 1 ? p.lambda1 : p.lambda2;
      const std::string base = "lambda" + std::to_string(which) + "_" + ax[i];
      double re = v[i].real(), im = v[i].imag();
      r.num(base + "_re", re);
      r.num(base + "_im", im);
      v[i] = cplx(re, im);
    }
  }
  r.num("L1", p.L1);
  r.num("L2", p.L2);
  r.reject_unknown();
}

void read_noise(Reader& r, JumpModel& m) {
  r.list("nu", m.nu);
  r.list("h", m.h);
  if (r.has("marks")) {
    std::size_t marks = 0;
    r.count("marks", marks);
    if (marks != m.nu.size()) throw ConfigError(r.key("marks"), "must equal the length of noise.nu");
  }
  std::string fam = m.family == NoiseFamily::Linear ? "linear" : "quadratic";
  r.str("family", fam);
  if (fam == "linear")
    m.family = NoiseFamily::Linear;
  else if (fam == "quadratic")
    m.family = NoiseFamily::Quadratic;
  else
    throw ConfigError(r.key("family"), "must be \"linear\" or \"quadratic\"");
  r.num("c", m.c);
  if (const json* v = r.raw("cap")) {
    if (v->is_string() && (v->get<std::string>() == "inf" || v->get<std::string>() == "infinity"))
      m.cap = std::numeric_limits<double>::infinity();
    else if (v->is_number())
      m.cap = v->get<double>();
    else
      throw ConfigError(r.key("cap"), "expected a number or \"inf\"");
  }
  r.num("p", m.p);
  r.reject_unknown();
}

void read_initial(Reader& r, InitialCondition& ic) {
  std::string mode = mode_name(ic.mode);
  r.str("mode", mode);
  if (mode == "zero")
    ic.mode = InitialCondition::Mode::Zero;
  else if (mode == "mode")
    ic.mode = InitialCondition::Mode::Mode;
  else if (mode == "gaussian")
    ic.mode = InitialCondition::Mode::Gaussian;
  else if (mode == "random")
    ic.mode = InitialCondition::Mode::Random;
  else
    throw ConfigError(r.key("mode"), "must be zero, mode, gaussian or random");
  r.num("amplitude", ic.amplitude);
  r.count("j", ic.j);
  r.count("k", ic.k);
  r.num("width", ic.width);
  r.count("modes", ic.modes);
  r.num("decay", ic.decay);
  r.reject_unknown();
}

void read_sim(Reader& r, RunConfig& c) {
  r.count("n1", c.sim.n1);
  r.count("n2", c.sim.n2);
  r.num("dt", c.sim.dt);
  r.num("t_end", c.sim.t_end);
  r.num("blowup_radius", c.sim.blowup_radius);
  r.count("seed", c.sim.seed);
  r.count("n_paths", c.sim.n_paths);
  r.count("snap_every", c.sim.snap_every);
  r.num("pad", c.sim.pad);
  r.list("levels", c.levels);
  r.num("delta", c.delta);
  if (const json* v = r.raw("initial")) {
    Reader ri(*v, r.key("initial"));
    read_initial(ri, c.initial);
  }
  r.reject_unknown();
}

void read_monotonicity(Reader& r, RunConfig& c) {
  auto& e = c.monotonicity;
  r.num("eps8", e.eps8);
  r.num("eps9", e.eps9);
  r.num("eps10", e.eps10);
  r.num("eps11", e.eps11);
  r.num("eps12", e.eps12);
  r.num("eps13", e.eps13);
  r.num("eps14", e.eps14);
  r.num("eps15", e.eps15);
  r.count("samples", c.suite.samples);
  r.count("oy_samples", c.suite.oy_samples);
  r.count("sample_modes", c.suite.n);
  r.count("seed", c.suite.seed);
  r.reject_unknown();
}

// Validators of the inner modules name bare fields; qualify them.
[[noreturn]] void requalify(const ConfigError& e, const std::string& section) {
  const std::string& k = e.key();
  std::string msg = e.what();
  const auto colon = msg.find(": ");
  if (colon != std::string::npos) msg = msg.substr(colon + 2);
  throw ConfigError(k.find('.') == std::string::npos ? section + "." + k : k, msg);
}

}  // namespace

void RunConfig::validate() const {
  try {
    params.validate();
  } catch (const ConfigError& e) {
    requalify(e, "params");
  }
  try {
    noise.validate();
  } catch (const ConfigError& e) {
    requalify(e, "noise");
  }
  if (!(noise.p < 2.0 * params.sigma)) throw ConfigError("noise.p", "must be < 2 sigma");
  try {
    sim.validate();
  } catch (const ConfigError& e) {
    requalify(e, "sim");
  }
  try {
    monotonicity.validate_eps();
  } catch (const ConfigError& e) {
    requalify(e, "monotonicity");
  }
  if (levels.size() < 3) throw ConfigError("sim.levels", "needs at least three levels");
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (levels[i] < 1) throw ConfigError("sim.levels", "levels must be >= 1");
    if (i > 0 && levels[i] <= levels[i - 1])
      throw ConfigError("sim.levels", "levels must be strictly increasing");
  }
  if (!(delta >= 0.0) || !std::isfinite(delta)) throw ConfigError("sim.delta", "must be >= 0");
  if (!(initial.amplitude >= 0.0) || !std::isfinite(initial.amplitude))
    throw ConfigError("sim.initial.amplitude", "must be >= 0");
  if (initial.mode == InitialCondition::Mode::Mode &&
      (initial.j < 1 || initial.k < 1 || initial.j > sim.n1 || initial.k > sim.n2))
    throw ConfigError("sim.initial.j", "mode (j, k) must lie in 1..n1 x 1..n2");
  if (!(initial.width > 0.0)) throw ConfigError("sim.initial.width", "must be > 0");
  if (initial.modes < 1) throw ConfigError("sim.initial.modes", "must be >= 1");
  if (suite.n < 1) throw ConfigError("monotonicity.sample_modes", "must be >= 1");
}

RunConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("<file>", std::string("invalid JSON: ") + e.what());
  }
  RunConfig c;
  Reader root(j, "");
  if (const json* v = root.raw("params")) {
    Reader r(*v, "params");
    read_params(r, c.params);
  }
  if (const json* v = root.raw("noise")) {
    Reader r(*v, "noise");
    read_noise(r, c.noise);
  }
  if (const json* v = root.raw("sim")) {
    Reader r(*v, "sim");
    read_sim(r, c);
  }
  if (const json* v = root.raw("monotonicity")) {
    Reader r(*v, "monotonicity");
    read_monotonicity(r, c);
  }
  root.reject_unknown();
  c.validate();
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("--config", "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string dump_config(const RunConfig& cfg) { return to_json(cfg).dump(2); }

std::string config_key_help() {
  const json d = to_json(RunConfig{});
  std::ostringstream os;
  os << "Config keys (JSON sections params, noise, sim, monotonicity):\n";
  for (const auto& k : kKeys) {
    const json::json_pointer ptr("/" + [&] {
      std::string s = k.key;
      for (auto& ch : s)
        if (ch == '.') ch = '/';
      return s;
    }());
    os << "  " << k.key;
    const std::size_t len = std::string(k.key).size();
    os << std::string(len < 26 ? 26 - len : 1, ' ') << "default " << d.at(ptr).dump() << "  "
       << k.what << "\n";
  }
  return os.str();
}

}  // namespace sggl
