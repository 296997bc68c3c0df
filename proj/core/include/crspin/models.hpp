#pragma once

// Homogeneous pseudo-Hermitian model geometries. All curvature data are
// constants in a global adapted frame (E_1..E_m, T).

#include <optional>
#include <string>
#include <vector>

#include "crspin/numeric.hpp"

namespace crspin::models {

enum class ModelKind { heisenberg, torus_bundle, sphere, custom };

std::string to_string(ModelKind k);

// modes: Fourier cutoff |n_i| <= modes per lattice direction (flat sectors).
// levels: ladder levels 0..levels per complex direction (magnetic sectors).
struct TruncationSpec {
  int modes = 2;
  int levels = 8;
};

void validate(const TruncationSpec& t);

// Flat Kaehler torus N = prod_a C/(w1 Z + w2 Z) with w1 = L, w2 = L tau, the
// same factor in each of the m complex directions. L is fixed by the flux.
struct TorusLattice {
  int m = 1;
  cplx tau{0.0, 1.0};
};

void validate(const TorusLattice& lat);

struct ModelFlags {
  std::optional<bool> torsion_free;
  std::optional<bool> regular;
  std::optional<bool> transverse_symmetry;
  bool pseudo_einstein = false;
};

// Data needed to build a section space: which Fourier sector of the Reeb
// direction is assembled and over which horizontal torus.
struct SpectralSector {
  // Eigenvalue of N = i nabla_T on the sector.
  int n_eigenvalue = 0;
  // Flux of the horizontal magnetic field per factor (lattice area = pi*|flux|).
  int flux = 1;
  TorusLattice lattice;
  TruncationSpec truncation;
  // User-facing label: Heisenberg sector k or bundle sector s.
  std::string label;
  int label_value = 0;
};

struct PseudoHermitianModel {
  ModelKind kind = ModelKind::custom;
  int m = 1;
  int ell = 0;
  Mat tau;    // m x m, tau(E_a) = sum_b tau_ab conj E_b
  Mat rho;    // m x m Hermitian, rho(E_a, conj E_b) = i rho_ab
  double scalW = 0.0;
  // [E_a, conj E_b] = levi_bracket_ab T + horizontal terms.
  Mat levi_bracket;
  // g(R(s_a, s_b) s_c, s_d) on the real orthonormal frame
  // s_a = E_a + conj E_a, s_{m+a} = i(E_a - conj E_a); flattened (2m)^4.
  std::vector<double> riemann;
  ModelFlags flags;
  std::optional<SpectralSector> spectral;

  [[nodiscard]] double riemann_at(int a, int b, int c, int d) const;
};

PseudoHermitianModel heisenberg_model(int m, int k, const TruncationSpec& truncation, int ell = 0);
PseudoHermitianModel cr_alpha_bundle(const TorusLattice& lattice, int c, int s,
                                     const TruncationSpec& truncation = {}, int ell = 0);
PseudoHermitianModel sphere_model(int m, double scalW = 1.0, int ell = 0);

// Same geometry, different Reeb sector (Heisenberg k or bundle s).
PseudoHermitianModel with_sector(const PseudoHermitianModel& model, int sector);

// Real 2m x 2m matrix of the (1,1)-form w(E_a, conj E_b) = i R_ab on the real frame.
Mat real_two_form(const Mat& r);
// Complex structure on the real frame: J s_a = s_{m+a}.
Mat real_complex_structure(int m);
// Real endomorphism of the horizontal bundle induced by tau.
Mat real_torsion(const Mat& tau);

double ricci_consistency(const PseudoHermitianModel& model);
double bianchi_residual(const PseudoHermitianModel& model);
double torsion_symmetry_residual(const PseudoHermitianModel& model);
bool pseudo_einstein_check(const PseudoHermitianModel& model, double tol = 1e-12);

}  // namespace crspin::models
