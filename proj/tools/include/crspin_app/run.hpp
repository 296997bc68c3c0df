#pragma once

// Check execution and report writing for the crspin tool.

#include <filesystem>
#include <string>
#include <vector>

#include "crspin_app/config.hpp"

namespace crspin::app {

struct Metric {
  std::string name;
  double value = 0.0;
  double tol = 0.0;  // pass iff value <= tol
  [[nodiscard]] bool pass() const { return value <= tol; }
};

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

struct CheckReport {
  CheckKind kind = CheckKind::identities;
  std::string error;  // nonempty: the check could not run
  std::vector<Metric> metrics;
  std::vector<Table> tables;
  std::vector<std::string> warnings;
  bool strict = false;

  // Fails on an error, a metric over tolerance, or a warning under strict.
  [[nodiscard]] bool pass() const;
};

struct RunResult {
  std::vector<CheckReport> reports;  // in config order
  [[nodiscard]] bool pass() const;
};

// Full-precision scientific notation used for every number in the artifacts.
std::string format_number(double v);

CheckReport run_check(const RunConfig& cfg, CheckKind kind);
// Checks run concurrently; results keep the configured order.
RunResult run(const RunConfig& cfg);

std::string to_json(const CheckReport& report);
// One CSV document per table plus one for the metrics, keyed by file stem.
std::vector<std::pair<std::string, std::string>> to_csv(const CheckReport& report);

// Writes artifacts for every report; returns the written paths in order.
std::vector<std::filesystem::path> write_reports(const RunConfig& cfg, const RunResult& result);

}  // namespace crspin::app
