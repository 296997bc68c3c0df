#pragma once

// Run configuration for the crspin tool, read from YAML.

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "crspin/models.hpp"

namespace crspin::app {

enum class CheckKind { identities, spectrum, cohomology, vanishing, conformal };
enum class OutputFormat { csv, json };

std::string to_string(CheckKind c);
CheckKind parse_check(const std::string& name);  // throws ConfigError
OutputFormat parse_format(const std::string& name);

class ConfigError : public std::runtime_error {
 public:
  // line is 1-based; 0 when unknown
  ConfigError(const std::string& what, int line = 0);
  [[nodiscard]] int line() const { return line_; }

 private:
  int line_;
};

struct ModelSpec {
  models::ModelKind kind = models::ModelKind::heisenberg;
  int m = 1;
  int ell = 0;
  int flux = 1;                 // torus bundle: c
  std::vector<int> sectors{0};  // Heisenberg k or bundle s
  models::TruncationSpec truncation;
  cplx tau{0.0, 1.0};
  double scal = 1.0;            // sphere
};

struct Tolerances {
  double complex = 1e-12;
  double identity = 1e-10;
  double kernel = 1e-8;
  double conformal = 1e-9;
};

struct ConformalSpec {
  int points = 20;
  std::uint64_t seed = 2024;
};

struct RunConfig {
  ModelSpec model;
  std::vector<CheckKind> checks{CheckKind::identities};
  Tolerances tol;
  ConformalSpec conformal;
  std::filesystem::path out_dir = "crspin_out";
  OutputFormat format = OutputFormat::json;
  bool strict = false;
};

RunConfig parse_config(const std::string& yaml_text);
RunConfig load_config(const std::filesystem::path& path);

// Model of the given sector (ignored for the sphere).
models::PseudoHermitianModel build_model(const ModelSpec& spec, int sector);

}  // namespace crspin::app
