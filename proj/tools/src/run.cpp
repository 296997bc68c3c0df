#include "crspin_app/run.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <fstream>
#include <future>
#include <limits>
#include <nlohmann/json.hpp>

#include "crspin/cohomology.hpp"
#include "crspin/conformal.hpp"
#include "crspin/operators.hpp"
#include "crspin/vanishing.hpp"
#include "crspin/weitzenboeck.hpp"

namespace crspin::app {

namespace {

std::string yes_no(bool b) { return b ? "true" : "false"; }

void add(CheckReport& r, std::string name, double value, double tol) {
  r.metrics.push_back({std::move(name), value, tol});
}

void model_identities(const RunConfig& cfg, CheckReport& r) {
  const auto model = build_model(cfg.model, cfg.model.sectors.front());
  const double tol = cfg.tol.identity;
  add(r, "ricci_consistency", models::ricci_consistency(model), tol);
  add(r, "bianchi_residual", models::bianchi_residual(model), tol);
  add(r, "torsion_symmetry_residual", models::torsion_symmetry_residual(model), tol);
  for (int q = 0; q <= model.m; ++q) {
    const auto split = weitzenboeck::q_split(model, cfg.model.ell, q);
    const auto term = weitzenboeck::curvature_term(model, cfg.model.ell, q);
    add(r, fmt::format("q_split[q={}]", q), norm(split.weight * split.r_star + split.k - term.as_matrix), tol);
  }
}

void check_identities(const RunConfig& cfg, CheckReport& r) {
  model_identities(cfg, r);
  if (cfg.model.kind == models::ModelKind::sphere) return;
  for (int s : cfg.model.sectors) {
    const ops::SectionSpace sp(build_model(cfg.model, s));
    const auto tag = sp.sector_label();
    const Mat dp = ops::assemble_dplus(sp).matrix;
    const Mat dm = ops::assemble_dminus(sp).matrix;
    const Mat d = ops::assemble_kohn_dirac(sp).matrix;
    add(r, fmt::format("dplus_squared[{}]", tag), norm(dp * dp), cfg.tol.complex);
    add(r, fmt::format("dminus_squared[{}]", tag), norm(dm * dm), cfg.tol.complex);
    add(r, fmt::format("dirac_hermiticity[{}]", tag), norm(d - d.adjoint()), cfg.tol.complex);
    add(r, fmt::format("sl_residual[{}]", tag), weitzenboeck::sl_residual(sp), cfg.tol.identity);
    for (int ell = -sp.m(); ell <= sp.m(); ell += 2)
      add(r, fmt::format("dl_residual[{},l={}]", tag, ell), weitzenboeck::dl_residual(sp, ell), cfg.tol.identity);
    const Mat box = cohomology::kohn_laplacian(sp, cohomology::FormMetric::webster);
    add(r, fmt::format("dirac_vs_kohn_laplacian[{}]", tag), norm(d * d - 2.0 * box), cfg.tol.identity);
    for (int q = 0; q <= sp.m(); ++q)
      add(r, fmt::format("sector_identity[{},q={}]", tag, q), cohomology::sector_identity_defect(sp, q),
          cfg.tol.identity);
  }
}

void check_spectrum(const RunConfig& cfg, CheckReport& r) {
  Table spec{"spectrum", {"sector", "eigenvalue", "multiplicity"}, {}};
  Table kern{"kernel", {"sector", "q", "raw", "spurious", "genuine"}, {}};
  for (int s : cfg.model.sectors) {
    const ops::SectionSpace sp(build_model(cfg.model, s));
    const auto tag = sp.sector_label();
    const Mat d = ops::assemble_kohn_dirac(sp).matrix;
    add(r, fmt::format("dirac_hermiticity[{}]", tag), norm(d - d.adjoint()), cfg.tol.complex);
    const Mat d2 = d * d;
    for (const auto& e : ops::spectrum(Mat(0.5 * (d2 + d2.adjoint()))))
      spec.rows.push_back({std::to_string(s), format_number(e.value), std::to_string(e.multiplicity)});
    for (const auto& k : ops::kernel_dim(sp, d, cfg.tol.kernel)) {
      kern.rows.push_back({std::to_string(s), std::to_string(k.q), std::to_string(k.raw), std::to_string(k.spurious),
                           std::to_string(k.genuine)});
      if (k.spurious > 0)
        r.warnings.push_back(fmt::format("truncation: {} null vectors on the top shell discarded ({}, q={})",
                                         k.spurious, tag, k.q));
    }
  }
  r.tables.push_back(std::move(spec));
  r.tables.push_back(std::move(kern));
}

void check_cohomology(const RunConfig& cfg, CheckReport& r) {
  const bool torus = cfg.model.kind == models::ModelKind::torus_bundle;
  Table t{"cohomology", {"sector", "q", "dim", "certified", "spurious", "spinor_dim", "analytic_dim"}, {}};
  for (int s : cfg.model.sectors) {
    const auto model = build_model(cfg.model, s);
    const ops::SectionSpace sp(model);
    const auto kt = cohomology::kohn_table(sp, cfg.tol.kernel);
    const auto ht = cohomology::harmonic_spinor_table(sp, cfg.tol.kernel);
    double spinor_mismatch = 0.0;
    double analytic_mismatch = 0.0;
    double identity = 0.0;
    for (int q = 0; q <= sp.m(); ++q) {
      const auto& e = kt.at(q, s);
      const auto& h = ht.at(q, s);
      if (!(e == h)) spinor_mismatch += 1.0;
      identity = std::max(identity, cohomology::sector_identity_defect(sp, q));
      std::string analytic = "-";
      if (torus) {
        const auto a = cohomology::analytic_table(model, q, q, s, s).at(q, s).dim;
        analytic = std::to_string(a);
        if (e.certified && a != e.dim) analytic_mismatch += 1.0;
      }
      if (!e.certified)
        r.warnings.push_back(fmt::format("truncation: h_{} in sector {} is only a lower bound", q, s));
      t.rows.push_back({std::to_string(s), std::to_string(q), std::to_string(e.dim), yes_no(e.certified),
                        std::to_string(e.spurious), std::to_string(h.dim), analytic});
    }
    const auto tag = sp.sector_label();
    add(r, fmt::format("spinor_vs_kohn_mismatches[{}]", tag), spinor_mismatch, 0.0);
    if (torus) add(r, fmt::format("analytic_mismatches[{}]", tag), analytic_mismatch, 0.0);
    add(r, fmt::format("sector_identity_max[{}]", tag), identity, cfg.tol.identity);
  }
  r.tables.push_back(std::move(t));
}

std::string join_witnesses(const vanishing::Verdict& v) {
  std::string out;
  for (const auto& w : v.witnesses) {
    if (!out.empty()) out += ';';
    out += w.name + '=' + format_number(w.value);
  }
  return out;
}

void check_vanishing(const RunConfig& cfg, CheckReport& r) {
  const auto model = build_model(cfg.model, cfg.model.sectors.front());
  const auto rep = vanishing::vanishing_verdicts(model, cfg.model.ell);
  Table t{"verdicts", {"q", "verdict", "clause", "witnesses", "rejected"}, {}};
  for (const auto& v : rep.verdicts) {
    std::string rejected;
    for (auto c : v.rejected) rejected += (rejected.empty() ? "" : ";") + std::string(vanishing::to_string(c));
    t.rows.push_back({std::to_string(v.q), vanishing::to_string(v.kind),
                      v.clause ? vanishing::to_string(*v.clause) : "-", join_witnesses(v), rejected});
  }
  r.tables.push_back(std::move(t));

  const auto qh = vanishing::qhat(cfg.model.m, cfg.model.ell);
  Table o{"obstruction", {"qhat", "integral", "verdict", "message"}, {}};
  if (cfg.model.kind == models::ModelKind::sphere) {
    o.rows.push_back({qh.value.str(), yes_no(qh.integral), "-", "no spectral data"});
    r.tables.push_back(std::move(o));
    return;
  }
  double contradictions = 0.0;
  for (int s : cfg.model.sectors) {
    const ops::SectionSpace sp(build_model(cfg.model, s));
    const auto kt = cohomology::kohn_table(sp, cfg.tol.kernel);
    for (const auto& v : rep.verdicts)
      if (v.kind == vanishing::VerdictKind::forced_zero && kt.at(v.q, s).dim != 0) contradictions += 1.0;
    if (s != 0) continue;
    try {
      const auto ob = vanishing::obstruction_check(cfg.model.m, cfg.model.ell, kt);
      o.rows.push_back({qh.value.str(), yes_no(qh.integral), vanishing::to_string(ob.kind), ob.message});
    } catch (const std::invalid_argument& e) {
      r.warnings.push_back(std::string("obstruction: ") + e.what());
    }
  }
  add(r, "forced_zero_contradictions", contradictions, 0.0);
  r.tables.push_back(std::move(o));
}

std::vector<conformal::ConformalScale> default_scales(int m) {
  const auto n = static_cast<std::size_t>(2 * m + 1);
  std::vector<double> w1(n, 0.4);
  std::vector<double> w2(n, 0.0);
  w2[0] = 1.0;
  w2[n - 1] = 0.7;
  std::vector<double> w3(n, 0.0);
  w3[1] = -0.8;
  w3[n - 1] = 1.1;
  return {conformal::ConformalScale::cosine(m, 0.3, 0),
          conformal::ConformalScale(m, {{0.2, w1, 0.3}, {0.15, w2, 0.1}}),
          conformal::ConformalScale(m, {{0.25, w3, -0.4}})};
}

// Laws whose operator vanishes identically on the grade carry no information.
bool nontrivial(conformal::CovarianceLaw law, int m, int q) {
  using L = conformal::CovarianceLaw;
  if (law == L::dminus || law == L::twistor01) return q > 0;
  if (law == L::dplus || law == L::twistor10) return q < m;
  return true;
}

void check_conformal(const RunConfig& cfg, CheckReport& r) {
  const int m = cfg.model.m;
  const int ell = cfg.model.ell;
  const auto pts = conformal::sample_points(m, cfg.conformal.points, cfg.conformal.seed);
  const auto scales = default_scales(m);
  Table t{"exponent_scan", {"scale", "law", "q", "exponent", "defect", "min_off_defect", "sound"}, {}};
  double unsound = 0.0;
  for (std::size_t i = 0; i < scales.size(); ++i) {
    add(r, fmt::format("max_defect[scale={}]", i), conformal::conformal_check(m, ell, scales[i], pts, cfg.conformal.seed),
        cfg.tol.conformal);
    for (auto law : {conformal::CovarianceLaw::dminus, conformal::CovarianceLaw::dplus,
                     conformal::CovarianceLaw::twistor10, conformal::CovarianceLaw::twistor01})
      for (int q = 0; q <= m; ++q) {
        if (!nontrivial(law, m, q)) continue;
        const auto phi = conformal::random_spinor_field(m, q, cfg.conformal.seed + static_cast<std::uint64_t>(q));
        const auto scan = conformal::exponent_scan({m, ell, q, law}, scales[i], phi, pts, cfg.tol.conformal);
        double at_zero = 0.0;
        double off = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < scan.offsets.size(); ++k) {
          if (scan.offsets[k] == 0)
            at_zero = scan.defects[k];
          else
            off = std::min(off, scan.defects[k]);
        }
        if (!scan.sound) unsound += 1.0;
        t.rows.push_back({std::to_string(i), conformal::to_string(law), std::to_string(q),
                          format_number(conformal::law_exponent(law, m, ell, q)), format_number(at_zero),
                          format_number(off), yes_no(scan.sound)});
      }
  }
  add(r, "unsound_exponent_scans", unsound, 0.0);
  r.tables.push_back(std::move(t));
}

}  // namespace

bool CheckReport::pass() const {
  if (!error.empty()) return false;
  if (strict && !warnings.empty()) return false;
  return std::all_of(metrics.begin(), metrics.end(), [](const Metric& m) { return m.pass(); });
}

bool RunResult::pass() const {
  return std::all_of(reports.begin(), reports.end(), [](const CheckReport& r) { return r.pass(); });
}

std::string format_number(double v) { return fmt::format("{:.17e}", v == 0.0 ? 0.0 : v); }

CheckReport run_check(const RunConfig& cfg, CheckKind kind) {
  CheckReport r;
  r.kind = kind;
  r.strict = cfg.strict;
  try {
    switch (kind) {
      case CheckKind::identities: check_identities(cfg, r); break;
      case CheckKind::spectrum: check_spectrum(cfg, r); break;
      case CheckKind::cohomology: check_cohomology(cfg, r); break;
      case CheckKind::vanishing: check_vanishing(cfg, r); break;
      case CheckKind::conformal: check_conformal(cfg, r); break;
    }
  } catch (const std::exception& e) {
    r.error = e.what();
  }
  return r;
}

RunResult run(const RunConfig& cfg) {
  std::vector<std::future<CheckReport>> jobs;
  jobs.reserve(cfg.checks.size());
  for (auto kind : cfg.checks) jobs.push_back(std::async(std::launch::async, run_check, std::cref(cfg), kind));
  RunResult out;
  for (auto& j : jobs) out.reports.push_back(j.get());
  return out;
}

std::string to_json(const CheckReport& report) {
  nlohmann::ordered_json j;
  j["check"] = to_string(report.kind);
  j["pass"] = report.pass();
  j["strict"] = report.strict;
  if (!report.error.empty()) j["error"] = report.error;
  auto metrics = nlohmann::ordered_json::array();
  for (const auto& m : report.metrics)
    metrics.push_back({{"name", m.name}, {"value", format_number(m.value)}, {"tol", format_number(m.tol)}, {"pass", m.pass()}});
  j["metrics"] = metrics;
  j["warnings"] = report.warnings;
  auto tables = nlohmann::ordered_json::object();
  for (const auto& t : report.tables) {
    auto rows = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
      nlohmann::ordered_json o;
      for (std::size_t c = 0; c < t.columns.size(); ++c) o[t.columns[c]] = row.at(c);
      rows.push_back(o);
    }
    tables[t.name] = rows;
  }
  j["tables"] = tables;
  return j.dump(2) + "\n";
}

namespace {

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

std::string csv_line(const std::vector<std::string>& cells) {
  std::string out;
  for (std::size_t i = 0; i < cells.size(); ++i) out += (i ? "," : "") + csv_cell(cells[i]);
  return out + "\n";
}

}  // namespace

std::vector<std::pair<std::string, std::string>> to_csv(const CheckReport& report) {
  const auto stem = to_string(report.kind);
  std::string metrics = csv_line({"name", "value", "tol", "pass"});
  for (const auto& m : report.metrics)
    metrics += csv_line({m.name, format_number(m.value), format_number(m.tol), yes_no(m.pass())});
  if (!report.error.empty()) metrics += csv_line({"error", report.error, "", "false"});
  std::vector<std::pair<std::string, std::string>> out{{stem + "_metrics", metrics}};
  for (const auto& t : report.tables) {
    std::string doc = csv_line(t.columns);
    for (const auto& row : t.rows) doc += csv_line(row);
    out.emplace_back(stem + "_" + t.name, doc);
  }
  return out;
}

std::vector<std::filesystem::path> write_reports(const RunConfig& cfg, const RunResult& result) {
  std::filesystem::create_directories(cfg.out_dir);
  std::vector<std::filesystem::path> written;
  auto put = [&](const std::string& stem, const std::string& ext, const std::string& body) {
    const auto path = cfg.out_dir / (stem + ext);
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path.string());
    f << body;
    written.push_back(path);
  };
  for (const auto& r : result.reports) {
    if (cfg.format == OutputFormat::json)
      put(to_string(r.kind), ".json", to_json(r));
    else
      for (const auto& [stem, body] : to_csv(r)) put(stem, ".csv", body);
  }
  return written;
}

}  // namespace crspin::app
