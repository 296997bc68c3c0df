#pragma once

// Twisted Kohn-Rossi complex on a spectral sector. (0,q)-forms use the
// orthonormal basis built from conj E*_a, identified with the grade-q spinors
// through the same subset labels. The metric on T10 is either the one induced
// by g_theta or the Levi form L(E_a, conj E_b) = delta_ab (twice as large).

#include <string>
#include <vector>

#include "crspin/models.hpp"
#include "crspin/numeric.hpp"
#include "crspin/section_space.hpp"

namespace crspin::cohomology {

enum class FormMetric { webster, levi };

double metric_scale(FormMetric metric);  // 2 for webster, 1 for levi

Mat dbar(const ops::SectionSpace& space, FormMetric metric);
Mat dbar_adjoint(const ops::SectionSpace& space, FormMetric metric);
// -sum_a iota_a nabla_E_a (Levi normalization).
Mat dbar_adjoint_local(const ops::SectionSpace& space);
Mat kohn_laplacian(const ops::SectionSpace& space, FormMetric metric = FormMetric::webster);
// d' : (0,q) -> (1,q), rows stacked over E*_a; box-bar = d'^* d'.
Mat del(const ops::SectionSpace& space, FormMetric metric);
Mat kohn_laplacian_bar(const ops::SectionSpace& space, FormMetric metric = FormMetric::levi);

// ||box - box-bar - scale*(m-q) N|| over interior columns of the grade-q block,
// scale = 1 for the Levi metric and 2 for the Webster metric.
double sector_identity_defect(const ops::SectionSpace& space, int q, FormMetric metric = FormMetric::levi);

// h^q of the line bundle of class s*c*[omega] on the flat torus of the lattice.
long long torus_line_bundle_cohomology(const models::TorusLattice& lattice, int c, int s, int q);

struct CohomologyEntry {
  int q = 0;
  int sector = 0;
  long long dim = 0;
  std::string method;        // "spectral" or "analytic"
  bool certified = false;    // false: truncation lower bound (extremal q)
  int spurious = 0;          // top-shell null vectors discarded
  std::string note;
};

struct CohomologyTable {
  std::string model;
  std::string sector_name;   // "s" or "k"
  std::vector<CohomologyEntry> entries;
  double max_identity_defect = 0.0;

  [[nodiscard]] const CohomologyEntry& at(int q, int sector) const;
};

bool operator==(const CohomologyEntry& a, const CohomologyEntry& b);

// Spectral table from ker box per grade and sector, with the sector identity checked.
CohomologyTable shift_table(const models::PseudoHermitianModel& model, int q_min, int q_max,
                            int s_min, int s_max, double tol = 1e-8);
// Analytic column for a torus bundle (maps M-sector s to base class -s|c|).
CohomologyTable analytic_table(const models::PseudoHermitianModel& model, int q_min, int q_max,
                               int s_min, int s_max);
// Kernel of D_theta on the spinor side, per grade.
CohomologyTable harmonic_spinor_table(const ops::SectionSpace& space, double tol = 1e-8);
// Kernel of the Kohn Laplacian on the same sector, per grade.
CohomologyTable kohn_table(const ops::SectionSpace& space, double tol = 1e-8);

}  // namespace crspin::cohomology
