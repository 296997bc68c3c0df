#pragma once

// Kohn-Dirac, Laplace-type and twistor operators assembled as dense matrices
// on a SectionSpace, plus spectra and kernel counts.

#include <optional>
#include <string>
#include <vector>

#include "crspin/numeric.hpp"
#include "crspin/section_space.hpp"

namespace crspin::ops {

struct OperatorMatrix {
  std::string name;
  Mat matrix;
  // How the operator moves the spinor grade q; nullopt when it mixes grades.
  std::optional<int> grade_shift;
};

// Largest entry of the operator outside its declared grade shift.
double grading_defect(const SectionSpace& space, const OperatorMatrix& op);

OperatorMatrix assemble_dplus(const SectionSpace& space);
OperatorMatrix assemble_dminus(const SectionSpace& space);
OperatorMatrix assemble_kohn_dirac(const SectionSpace& space);

// nabla_10^* nabla_10 and nabla_01^* nabla_01 as Gram products.
OperatorMatrix assemble_rough_10(const SectionSpace& space);
OperatorMatrix assemble_rough_01(const SectionSpace& space);
OperatorMatrix assemble_sub_laplacian(const SectionSpace& space);
// -sum_a (nabla_{e_a}^2 + nabla_{Je_a}^2): independent assembly of the same operator.
OperatorMatrix assemble_sub_laplacian_real_frame(const SectionSpace& space);

// Fiber operators lifted to the space.
OperatorMatrix assemble_theta(const SectionSpace& space);
OperatorMatrix assemble_rho_action(const SectionSpace& space);

// Direct Reeb derivative on the sector, and the horizontal formula for it.
OperatorMatrix assemble_nabla_T(const SectionSpace& space);
OperatorMatrix assemble_nabla_T_formula(const SectionSpace& space);
// N = i nabla_T.
OperatorMatrix assemble_N(const SectionSpace& space);

// Full transverse derivative, rows stacked as (E*_1..E*_m, conj E*_1..conj E*_m) x space.
Mat assemble_transverse_connection(const SectionSpace& space);
// Clifford contraction (frame x spinor) -> spinor.
Mat assemble_contraction(const SectionSpace& space);

double twistor_a(int q);
double twistor_b(int m, int q);
// Twistor operator on the grade-q block: (2m * dim) x |block q|.
OperatorMatrix assemble_twistor(const SectionSpace& space, int q);
// Reconstruction of nabla^tr from P and the Dirac parts, on the grade-q block.
Mat twistor_reconstruction(const SectionSpace& space, int q);

struct SpectrumEntry {
  double value;
  int multiplicity;
};

// Sorted eigenvalues of a Hermitian matrix, clustered within tol*(1+|lambda|).
// count > 0 keeps the lowest count clusters.
std::vector<SpectrumEntry> spectrum(const Mat& a, int count = 0, double cluster_tol = 1e-8);
// Spectrum of a^* a; accepts any matrix.
std::vector<SpectrumEntry> spectrum_gram(const Mat& a, int count = 0, double cluster_tol = 1e-8);

// Singular values below tol.
int kernel_dim(const Mat& a, double tol);

struct KernelCount {
  int q = 0;
  int raw = 0;             // near-null vectors of the truncated block
  int spurious = 0;        // of these, the ones living on the top truncation shell
  long long genuine = 0;   // (raw - spurious) * degeneracy
};

// Per-grade kernel of an operator whose Gram matrix preserves the grading.
std::vector<KernelCount> kernel_dim(const SectionSpace& space, const Mat& a, double tol,
                                    double shell_tol = 1e-8);

// ||diff restricted to interior columns||; equals ||diff|| for Fourier sectors.
double interior_norm(const SectionSpace& space, const Mat& diff);

}  // namespace crspin::ops
