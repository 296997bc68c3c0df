#include "crspin_app/config.hpp"

#include <fmt/format.h>
#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace crspin::app {

namespace {

int line_of(const YAML::Node& n) { return n.Mark().line >= 0 ? n.Mark().line + 1 : 0; }

[[noreturn]] void fail(const YAML::Node& n, const std::string& msg) {
  const int line = line_of(n);
  throw ConfigError(line > 0 ? fmt::format("line {}: {}", line, msg) : msg, line);
}

void require_map(const YAML::Node& n, const std::string& where) {
  if (!n.IsMap()) fail(n, where + " must be a mapping");
}

// Rejects keys outside the allowed set, pointing at the offending key.
void check_keys(const YAML::Node& map, const std::string& where, const std::set<std::string>& allowed) {
  for (const auto& kv : map) {
    const auto key = kv.first.as<std::string>();
    if (!allowed.contains(key)) fail(kv.first, fmt::format("unknown key '{}' in {}", key, where));
  }
}

template <class T>
T scalar(const YAML::Node& n, const std::string& key) {
  if (!n.IsScalar()) fail(n, fmt::format("'{}' must be a scalar", key));
  try {
    return n.as<T>();
  } catch (const YAML::Exception&) {
    fail(n, fmt::format("'{}' has invalid value '{}'", key, n.Scalar()));
  }
}

int int_in(const YAML::Node& n, const std::string& key, int lo, int hi) {
  const int v = scalar<int>(n, key);
  if (v < lo || v > hi) fail(n, fmt::format("'{}' = {} outside [{}, {}]", key, v, lo, hi));
  return v;
}

double positive(const YAML::Node& n, const std::string& key) {
  const double v = scalar<double>(n, key);
  if (!(v > 0.0) || !std::isfinite(v)) fail(n, fmt::format("tolerance '{}' must be positive, got {}", key, n.Scalar()));
  return v;
}

models::ModelKind parse_kind(const YAML::Node& n) {
  const auto s = scalar<std::string>(n, "kind");
  if (s == "heisenberg") return models::ModelKind::heisenberg;
  if (s == "torus" || s == "torus_bundle") return models::ModelKind::torus_bundle;
  if (s == "sphere") return models::ModelKind::sphere;
  fail(n, fmt::format("unknown model kind '{}' (heisenberg, torus, sphere)", s));
}

void parse_model(const YAML::Node& n, ModelSpec& spec) {
  require_map(n, "model");
  check_keys(n, "model", {"kind", "m", "ell", "flux", "sectors", "truncation", "tau", "scal"});
  if (!n["kind"]) fail(n, "model needs 'kind'");
  spec.kind = parse_kind(n["kind"]);
  if (n["m"]) spec.m = int_in(n["m"], "m", 1, 8);
  if (n["ell"]) spec.ell = int_in(n["ell"], "ell", -64, 64);
  if (n["flux"]) {
    spec.flux = int_in(n["flux"], "flux", -16, 16);
    if (spec.flux == 0) fail(n["flux"], "'flux' must be nonzero");
  }
  if (const auto s = n["sectors"]) {
    if (!s.IsSequence() || s.size() == 0) fail(s, "'sectors' must be a nonempty list");
    if (s.size() > 64) fail(s, "'sectors' lists more than 64 entries");
    spec.sectors.clear();
    for (const auto& e : s) spec.sectors.push_back(int_in(e, "sectors", -64, 64));
  }
  if (const auto t = n["truncation"]) {
    require_map(t, "truncation");
    check_keys(t, "truncation", {"modes", "levels"});
    if (t["modes"]) spec.truncation.modes = int_in(t["modes"], "modes", 0, 16);
    if (t["levels"]) spec.truncation.levels = int_in(t["levels"], "levels", 1, 64);
  }
  if (const auto t = n["tau"]) {
    if (!t.IsSequence() || t.size() != 2) fail(t, "'tau' must be [re, im]");
    spec.tau = {scalar<double>(t[0], "tau"), scalar<double>(t[1], "tau")};
    if (!(spec.tau.imag() > 0.0)) fail(t, "'tau' needs positive imaginary part");
  }
  if (n["scal"]) spec.scal = scalar<double>(n["scal"], "scal");
}

}  // namespace

ConfigError::ConfigError(const std::string& what, int line) : std::runtime_error(what), line_(line) {}

std::string to_string(CheckKind c) {
  switch (c) {
    case CheckKind::identities: return "identities";
    case CheckKind::spectrum: return "spectrum";
    case CheckKind::cohomology: return "cohomology";
    case CheckKind::vanishing: return "vanishing";
    case CheckKind::conformal: return "conformal";
  }
  return "?";
}

CheckKind parse_check(const std::string& name) {
  for (auto c : {CheckKind::identities, CheckKind::spectrum, CheckKind::cohomology, CheckKind::vanishing,
                 CheckKind::conformal})
    if (to_string(c) == name) return c;
  throw ConfigError(fmt::format("unknown check '{}' (identities, spectrum, cohomology, vanishing, conformal)", name));
}

OutputFormat parse_format(const std::string& name) {
  if (name == "csv") return OutputFormat::csv;
  if (name == "json") return OutputFormat::json;
  throw ConfigError(fmt::format("unknown format '{}' (csv, json)", name));
}

RunConfig parse_config(const std::string& yaml_text) {
  YAML::Node root;
  try {
    root = YAML::Load(yaml_text);
  } catch (const YAML::ParserException& e) {
    throw ConfigError(fmt::format("line {}: {}", e.mark.line + 1, e.msg), e.mark.line + 1);
  }
  if (!root.IsMap()) throw ConfigError("config must be a mapping with a 'model' section");
  check_keys(root, "config", {"model", "checks", "tolerances", "conformal", "output", "strict"});
  RunConfig cfg;
  if (!root["model"]) throw ConfigError("config needs a 'model' section");
  parse_model(root["model"], cfg.model);

  if (const auto c = root["checks"]) {
    if (!c.IsSequence() || c.size() == 0) fail(c, "'checks' must be a nonempty list");
    cfg.checks.clear();
    for (const auto& e : c) {
      try {
        const auto k = parse_check(scalar<std::string>(e, "checks"));
        if (std::find(cfg.checks.begin(), cfg.checks.end(), k) == cfg.checks.end()) cfg.checks.push_back(k);
      } catch (const ConfigError& err) {
        if (err.line() > 0) throw;
        fail(e, err.what());
      }
    }
  }
  if (const auto t = root["tolerances"]) {
    require_map(t, "tolerances");
    check_keys(t, "tolerances", {"complex", "identity", "kernel", "conformal"});
    if (t["complex"]) cfg.tol.complex = positive(t["complex"], "complex");
    if (t["identity"]) cfg.tol.identity = positive(t["identity"], "identity");
    if (t["kernel"]) cfg.tol.kernel = positive(t["kernel"], "kernel");
    if (t["conformal"]) cfg.tol.conformal = positive(t["conformal"], "conformal");
  }
  if (const auto c = root["conformal"]) {
    require_map(c, "conformal");
    check_keys(c, "conformal", {"points", "seed"});
    if (c["points"]) cfg.conformal.points = int_in(c["points"], "points", 1, 10000);
    if (c["seed"]) cfg.conformal.seed = scalar<std::uint64_t>(c["seed"], "seed");
  }
  if (const auto o = root["output"]) {
    require_map(o, "output");
    check_keys(o, "output", {"dir", "format"});
    if (o["dir"]) cfg.out_dir = scalar<std::string>(o["dir"], "dir");
    if (o["format"]) {
      try {
        cfg.format = parse_format(scalar<std::string>(o["format"], "format"));
      } catch (const ConfigError& err) {
        if (err.line() > 0) throw;
        fail(o["format"], err.what());
      }
    }
  }
  if (root["strict"]) cfg.strict = scalar<bool>(root["strict"], "strict");
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("cannot open config '{}'", path.string()));
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

models::PseudoHermitianModel build_model(const ModelSpec& spec, int sector) {
  switch (spec.kind) {
    case models::ModelKind::heisenberg: return models::heisenberg_model(spec.m, sector, spec.truncation, spec.ell);
    case models::ModelKind::torus_bundle:
      return models::cr_alpha_bundle({spec.m, spec.tau}, spec.flux, sector, spec.truncation, spec.ell);
    case models::ModelKind::sphere: return models::sphere_model(spec.m, spec.scal, spec.ell);
    case models::ModelKind::custom: break;
  }
  throw std::invalid_argument("custom models cannot be built from a config");
}

}  // namespace crspin::app
