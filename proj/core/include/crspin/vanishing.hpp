#pragma once

// Decision engine for the vanishing theorems on homogeneous model data.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "crspin/cohomology.hpp"
#include "crspin/models.hpp"

namespace crspin::vanishing {

struct QHat {
  boost::multiprecision::cpp_rational value;
  bool integral = false;
};

// m(m + l + 2) / (2(m + 2))
QHat qhat(int m, int ell);

struct RootFlags {
  bool has_square_root = false;  // E(1) admits a square root
};

bool spin_c_exists(int m, int p, RootFlags flags);

enum class Clause {
  vani_a1, vani_a2, vani_a3, vani_b, vani_c,
  vankr_1, vankr_2, vankr_3, vankr_4,
  obskr, regvan_a,
  // Q^q positive definite on homogeneous data; the rough terms of the SL formula
  // have nonnegative coefficients off the extremal grades.
  sl_positive
};

const char* to_string(Clause c);

enum class VerdictKind { forced_zero, not_forced, extremal_exempt };

const char* to_string(VerdictKind v);

struct Witness {
  std::string name;
  double value;
};

struct Verdict {
  int q = 0;
  VerdictKind kind = VerdictKind::not_forced;
  std::optional<Clause> clause;
  std::vector<Witness> witnesses;
  // Clauses whose hypotheses held but whose curvature term was not positive.
  std::vector<Clause> rejected;
};

struct VanishingReport {
  std::string model;
  int m = 0;
  int ell = 0;
  std::vector<Verdict> verdicts;  // q = 0..m
};

struct VanishingOptions {
  // Evaluate the circle-bundle clause; requires the regular and torsion_free flags.
  bool circle_clauses = true;
  double tol = 1e-12;
};

VanishingReport vanishing_verdicts(const models::PseudoHermitianModel& model, int ell,
                                   const VanishingOptions& options = {});

enum class ObstructionKind { obstructed, not_obstructed, no_verdict };

const char* to_string(ObstructionKind k);

struct ObstructionVerdict {
  ObstructionKind kind = ObstructionKind::no_verdict;
  std::string message;
};

// Throws when the entry at q-hat is only a truncation lower bound.
ObstructionVerdict obstruction_check(int m, int ell, const cohomology::CohomologyTable& table);

}  // namespace crspin::vanishing
