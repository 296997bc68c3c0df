#pragma once

// Truncated spaces of spinor fields on one Reeb sector of a spectral model.
// Basis index = mode * 2^m + spinor mask; horizontal modes are a tensor
// product over the m complex directions (direction 1 most significant).

#include <string>
#include <vector>

#include "crspin/models.hpp"
#include "crspin/numeric.hpp"

namespace crspin::ops {

enum class ModeBasis { fourier, ladder };

class SectionSpace {
 public:
  explicit SectionSpace(models::PseudoHermitianModel model);

  [[nodiscard]] const models::PseudoHermitianModel& model() const { return model_; }
  [[nodiscard]] int m() const { return model_.m; }
  [[nodiscard]] int ell() const { return model_.ell; }
  [[nodiscard]] ModeBasis basis() const { return basis_; }

  // [nabla_E, nabla_conjE] on the sector, and the eigenvalue of N = i nabla_T.
  [[nodiscard]] double kappa() const { return kappa_; }
  [[nodiscard]] double n_value() const { return -kappa_; }
  [[nodiscard]] cplx nabla_T_value() const { return -kI * n_value(); }

  // Each ladder state stands for this many guiding-center copies.
  [[nodiscard]] long long degeneracy() const { return degeneracy_; }

  [[nodiscard]] Eigen::Index factor_dim() const { return factor_dim_; }
  [[nodiscard]] Eigen::Index mode_dim() const { return mode_dim_; }
  [[nodiscard]] Eigen::Index fiber_dim() const { return fiber_dim_; }
  [[nodiscard]] Eigen::Index dim() const { return mode_dim_ * fiber_dim_; }

  [[nodiscard]] int grade(Eigen::Index i) const;
  [[nodiscard]] std::vector<Eigen::Index> block(int q) const;
  // dim x |block q| column selector.
  [[nodiscard]] Mat block_selector(int q) const;

  // Basis vectors with a component in the top ladder shell of any direction.
  [[nodiscard]] bool top_shell(Eigen::Index i) const;
  [[nodiscard]] std::vector<Eigen::Index> interior() const;
  [[nodiscard]] Mat interior_selector() const;
  [[nodiscard]] Mat top_shell_projector() const;

  // Covariant derivatives along E_a and conj E_a (a is 1-based) on the full space.
  [[nodiscard]] const Mat& nabla_E(int a) const;
  [[nodiscard]] const Mat& nabla_Ebar(int a) const;

  // Lift of a 2^m x 2^m fiber operator to the full space.
  [[nodiscard]] Mat lift_fiber(const Mat& f) const;

  [[nodiscard]] std::string mode_label(Eigen::Index mode) const;
  [[nodiscard]] std::string sector_label() const;

 private:
  models::PseudoHermitianModel model_;
  ModeBasis basis_ = ModeBasis::fourier;
  double kappa_ = 0.0;
  long long degeneracy_ = 1;
  Eigen::Index factor_dim_ = 1;
  Eigen::Index mode_dim_ = 1;
  Eigen::Index fiber_dim_ = 1;
  std::vector<Mat> nabla_e_;
  std::vector<Mat> nabla_ebar_;
  std::vector<bool> top_;
};

// Momenta (p_x, p_y) of the Fourier modes of one factor torus, ordered as
// (n1, n2) in [-N, N]^2 with n2 fastest.
std::vector<std::pair<double, double>> factor_momenta(const models::TorusLattice& lattice, int flux,
                                                      int cutoff);

}  // namespace crspin::ops
