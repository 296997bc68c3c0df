#include "crspin/vanishing.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "crspin/weitzenboeck.hpp"

namespace crspin::vanishing {

QHat qhat(int m, int ell) {
  if (m < 1) throw std::invalid_argument("qhat needs m >= 1");
  const boost::multiprecision::cpp_rational v(m * (m + ell + 2), 2 * (m + 2));
  return {v, denominator(v) == 1};
}

bool spin_c_exists(int m, int p, RootFlags flags) {
  const bool m_odd = m % 2 != 0;
  const bool p_odd = p % 2 != 0;
  return flags.has_square_root || (m_odd && p_odd) || (!m_odd && !p_odd);
}

const char* to_string(Clause c) {
  switch (c) {
    case Clause::vani_a1: return "vani-a1";
    case Clause::vani_a2: return "vani-a2";
    case Clause::vani_a3: return "vani-a3";
    case Clause::vani_b: return "vani-b";
    case Clause::vani_c: return "vani-c";
    case Clause::vankr_1: return "VanKR-1";
    case Clause::vankr_2: return "VanKR-2";
    case Clause::vankr_3: return "VanKR-3";
    case Clause::vankr_4: return "VanKR-4";
    case Clause::obskr: return "ObsKR";
    case Clause::regvan_a: return "RegVan-a";
    case Clause::sl_positive: return "SL-positive";
  }
  return "?";
}

const char* to_string(VerdictKind v) {
  switch (v) {
    case VerdictKind::forced_zero: return "forced_zero";
    case VerdictKind::not_forced: return "not_forced";
    case VerdictKind::extremal_exempt: return "extremal_exempt";
  }
  return "?";
}

const char* to_string(ObstructionKind k) {
  switch (k) {
    case ObstructionKind::obstructed: return "obstructed";
    case ObstructionKind::not_obstructed: return "not_obstructed";
    case ObstructionKind::no_verdict: return "no_verdict";
  }
  return "?";
}

VanishingReport vanishing_verdicts(const models::PseudoHermitianModel& model, int ell,
                                   const VanishingOptions& options) {
  const int m = model.m;
  if (options.circle_clauses && (!model.flags.regular || !model.flags.torsion_free))
    throw std::invalid_argument(
        "circle-bundle clauses need the regular and torsion_free flags; set them or disable the clauses");
  const double tol = options.tol;
  const double scal = model.scalW;

  const Eigen::SelfAdjointEigenSolver<Mat> es(Mat(0.5 * (model.rho + model.rho.adjoint())),
                                              Eigen::EigenvaluesOnly);
  const double rho_min = es.eigenvalues().minCoeff();
  const double rho_max = es.eigenvalues().maxCoeff();
  const double rho_scale = tol * (1.0 + es.eigenvalues().cwiseAbs().maxCoeff());
  const bool rho_zero = std::max(std::abs(rho_min), std::abs(rho_max)) <= rho_scale;
  const bool rho_pos_semi = rho_min >= -rho_scale;
  const bool rho_neg_semi = rho_max <= rho_scale;
  const bool rho_semi = rho_pos_semi || rho_neg_semi;
  const bool rho_pos_def = rho_min > rho_scale;
  const bool scal_pos = scal > tol;
  const bool scal_nonneg_nonzero = scal > tol;  // homogeneous: >= 0 and not identically 0
  const auto qh = qhat(m, ell);
  const double threshold = -static_cast<double>(m) * ell / (m + 2.0);
  const bool regular_circle = model.flags.regular.value_or(false) && model.flags.torsion_free.value_or(false);

  VanishingReport report;
  report.model = models::to_string(model.kind);
  report.m = m;
  report.ell = ell;
  for (int q = 0; q <= m; ++q) {
    Verdict v;
    v.q = q;
    const double mu = m - 2 * q;
    if (q == 0 || q == m) {
      v.kind = VerdictKind::extremal_exempt;
      report.verdicts.push_back(v);
      continue;
    }
    const auto term = weitzenboeck::curvature_term(model, ell, q);
    const double q_min = term.eigenvalues.front();
    const bool q_positive = q_min > tol * (1.0 + std::abs(scal));
    const bool at_qhat = qh.integral && numerator(qh.value) == q;

    const std::vector<std::pair<Clause, bool>> clauses = {
        {Clause::vani_a1, std::abs(mu - threshold) <= 1e-12 && scal_pos},
        {Clause::vani_a2, mu > threshold + 1e-12 && rho_semi && (m + 2 - ell) * scal > tol},
        {Clause::vani_a3, mu < threshold - 1e-12 && rho_semi && (m + 2 + ell) * scal > tol},
        {Clause::vani_b, std::abs(ell) > m + 2 && !rho_zero && rho_neg_semi},
        {Clause::vani_c, std::abs(ell) < m + 2 && !rho_zero && rho_pos_semi},
        {Clause::vankr_1, m >= 2 && std::abs(ell) > m + 2 && !rho_zero && rho_neg_semi},
        {Clause::vankr_2, m >= 2 && std::abs(ell) < m + 2 && !rho_zero && rho_pos_semi},
        {Clause::vankr_3, m >= 2 && rho_pos_def && ell == m + 2},
        {Clause::vankr_4, m >= 2 && m % 2 == 0 && ell == 0 && 2 * q == m && scal_nonneg_nonzero},
        {Clause::obskr, m >= 2 && std::abs(ell) < m + 2 && at_qhat && scal_pos},
        {Clause::regvan_a, options.circle_clauses && regular_circle && m >= 2 && std::abs(ell) < m + 2 &&
                               at_qhat && scal_nonneg_nonzero},
        {Clause::sl_positive, q_positive},
    };
    for (const auto& [clause, holds] : clauses) {
      if (!holds) continue;
      if (q_positive) {
        v.kind = VerdictKind::forced_zero;
        v.clause = clause;
        break;
      }
      v.rejected.push_back(clause);
    }
    v.witnesses = {
        {"mu", mu},
        {"mu_threshold", threshold},
        {"rho_min", rho_min},
        {"rho_max", rho_max},
        {"scalW", scal},
        {"Q_min", q_min},
        {"bound_minus", weitzenboeck::proof_bound_minus(m, ell, q) * scal / 4.0},
        {"bound_plus", weitzenboeck::proof_bound_plus(m, ell, q) * scal / 4.0},
    };
    report.verdicts.push_back(v);
  }
  return report;
}

ObstructionVerdict obstruction_check(int m, int ell, const cohomology::CohomologyTable& table) {
  if (m < 2) return {ObstructionKind::no_verdict, "the obstruction needs m >= 2"};
  if (std::abs(ell) >= m + 2) return {ObstructionKind::no_verdict, "the obstruction needs |l| < m+2"};
  const auto qh = qhat(m, ell);
  if (!qh.integral) return {ObstructionKind::no_verdict, "q-hat is not an integer"};
  const auto q = numerator(qh.value).convert_to<int>();
  bool any = false;
  for (const auto& e : table.entries) {
    if (e.q != q) continue;
    any = true;
    if (!e.certified)
      throw std::invalid_argument("entry at q-hat is a truncation lower bound; no verdict");
    if (e.dim > 0)
      return {ObstructionKind::obstructed,
              "obstructed: no pseudo-Hermitian structure with positive Webster scalar curvature exists on "
              "this CR structure (h_" + std::to_string(q) + " = " + std::to_string(e.dim) + " in sector " +
                  table.sector_name + "=" + std::to_string(e.sector) + ")"};
  }
  if (!any) return {ObstructionKind::no_verdict, "table has no entry at q-hat"};
  return {ObstructionKind::not_obstructed, "all entries at q-hat vanish"};
}

}  // namespace crspin::vanishing
