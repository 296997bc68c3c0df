#pragma once

#include <vector>

#include "crspin/models.hpp"
#include "crspin/numeric.hpp"
#include "crspin/section_space.hpp"

namespace crspin::weitzenboeck {

// Coefficients of Q^q = c * (-(i/2) rho.) + d * scal/4.
struct CurvatureCoefficients {
  double c;
  double d;
};
CurvatureCoefficients curvature_coefficients(int m, int ell, int q);

struct CurvatureTerm {
  int q = 0;
  int mu = 0;
  int ell = 0;
  Mat as_matrix;                     // on the grade-q fiber block, C(m,q) square
  std::vector<double> eigenvalues;   // ascending
};

CurvatureTerm curvature_term(const models::PseudoHermitianModel& model, int ell, int q);

// -(i/2) rho. restricted to the grade-q fiber block.
Mat ricci_operator_block(const models::PseudoHermitianModel& model, int q);

struct QSplit {
  Mat r_star;  // -(i/2) rho. + scal/4
  Mat k;       // remainder, proportional to the trace-free part of rho
  double weight;  // 2(m-q)/m
};
QSplit q_split(const models::PseudoHermitianModel& model, int ell, int q);

// tr_theta of the 2-form entering K.
double trace_K(const models::PseudoHermitianModel& model, int ell);

// Lower bounds from the Cauchy-Schwarz argument, times scal/4.
double proof_bound_minus(int m, int ell, int q);  // (m-mu)(m+2-l)/(m(m+2))
double proof_bound_plus(int m, int ell, int q);   // (m+mu)(m+2+l)/(m(m+2))

// Right-hand side of the Schroedinger-Lichnerowicz formula on the full space.
Mat sl_rhs(const ops::SectionSpace& space);
double sl_residual(const ops::SectionSpace& space);

// Right-hand side for D_l^* D_l on the block mu = -l, and its defect.
Mat dl_rhs(const ops::SectionSpace& space, int ell);
double dl_residual(const ops::SectionSpace& space, int ell);

}  // namespace crspin::weitzenboeck
