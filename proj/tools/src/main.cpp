// crspin: run identity, spectrum, cohomology, vanishing and conformal checks
// on a configured model and write JSON or CSV reports.
//
// Exit status: 0 all checks pass, 1 some check fails, 2 usage or config error.

#include <fmt/format.h>

#include <CLI11.hpp>
#include <algorithm>
#include <cstdio>
#include <optional>

#include "crspin_app/config.hpp"
#include "crspin_app/run.hpp"

int main(int argc, char** argv) {
  using namespace crspin::app;

  CLI::App cli{"Spinor calculus checks on pseudo-Hermitian model geometries"};
  std::string config_path;
  std::vector<std::string> checks;
  bool strict = false;
  std::optional<std::string> out_dir;
  std::optional<std::string> format;
  bool quiet = false;
  cli.add_option("--config", config_path, "YAML run configuration")->required()->check(CLI::ExistingFile);
  cli.add_option("--check", checks, "checks to run: identities spectrum cohomology vanishing conformal");
  cli.add_flag("--strict", strict, "treat truncation warnings as failures");
  cli.add_option("--out", out_dir, "output directory (overrides the config)");
  cli.add_option("--format", format, "csv or json (overrides the config)")->check(CLI::IsMember({"csv", "json"}));
  cli.add_flag("-q,--quiet", quiet, "only print failures");
  try {
    cli.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = cli.exit(e);
    return code == 0 ? 0 : 2;
  }

  RunConfig cfg;
  try {
    cfg = load_config(config_path);
    if (!checks.empty()) {
      cfg.checks.clear();
      for (const auto& c : checks) {
        const auto k = parse_check(c);
        if (std::find(cfg.checks.begin(), cfg.checks.end(), k) == cfg.checks.end()) cfg.checks.push_back(k);
      }
    }
    if (strict) cfg.strict = true;
    if (out_dir) cfg.out_dir = *out_dir;
    if (format) cfg.format = parse_format(*format);
  } catch (const ConfigError& e) {
    fmt::print(stderr, "{}: {}\n", config_path, e.what());
    return 2;
  }

  const auto result = run(cfg);
  try {
    write_reports(cfg, result);
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return 2;
  }
  for (const auto& r : result.reports) {
    if (!r.error.empty()) {
      fmt::print(stderr, "ERROR {}: {}\n", to_string(r.kind), r.error);
      continue;
    }
    const bool ok = r.pass();
    if (!quiet || !ok) {
      const auto failed = std::count_if(r.metrics.begin(), r.metrics.end(), [](const Metric& m) { return !m.pass(); });
      fmt::print("{} {} ({} metrics, {} over tolerance, {} warnings)\n", ok ? "PASS" : "FAIL", to_string(r.kind),
                 r.metrics.size(), failed, r.warnings.size());
    }
    for (const auto& m : r.metrics)
      if (!m.pass()) fmt::print("  {} = {} > {}\n", m.name, format_number(m.value), format_number(m.tol));
    if (cfg.strict)
      for (const auto& w : r.warnings) fmt::print("  strict: {}\n", w);
  }
  return result.pass() ? 0 : 1;
}
