#include "crspin/operators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "crspin/clifford.hpp"

namespace crspin::ops {

namespace {

using clifford::CliffordGenerator;
using clifford::GeneratorKind;

Mat lifted_generator(const SectionSpace& space, GeneratorKind kind, int a) {
  return space.lift_fiber(clifford::generator_matrix(CliffordGenerator{kind, a, space.m()}));
}

Mat identity(const SectionSpace& space) { return Mat::Identity(space.dim(), space.dim()); }

}  // namespace

double grading_defect(const SectionSpace& space, const OperatorMatrix& op) {
  if (!op.grade_shift) return 0.0;
  const Mat& a = op.matrix;
  if (a.rows() != space.dim() || a.cols() != space.dim())
    throw std::invalid_argument("grading_defect: operator is not square on the space");
  double worst = 0.0;
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      if (space.grade(i) != space.grade(j) + *op.grade_shift) worst = std::max(worst, std::abs(a(i, j)));
  return worst;
}

OperatorMatrix assemble_dplus(const SectionSpace& space) {
  Mat d = Mat::Zero(space.dim(), space.dim());
  for (int a = 1; a <= space.m(); ++a)
    d += 2.0 * sparse_product(lifted_generator(space, GeneratorKind::create, a), space.nabla_Ebar(a));
  return {"D+", std::move(d), 1};
}

OperatorMatrix assemble_dminus(const SectionSpace& space) {
  Mat d = Mat::Zero(space.dim(), space.dim());
  for (int a = 1; a <= space.m(); ++a)
    d += 2.0 * sparse_product(lifted_generator(space, GeneratorKind::annihilate, a), space.nabla_E(a));
  return {"D-", std::move(d), -1};
}

OperatorMatrix assemble_kohn_dirac(const SectionSpace& space) {
  return {"D_theta", assemble_dplus(space).matrix + assemble_dminus(space).matrix, std::nullopt};
}

OperatorMatrix assemble_rough_10(const SectionSpace& space) {
  // |E*_a|^2 = 2 for g_theta(E_a, conj E_a) = 1/2.
  Mat r = Mat::Zero(space.dim(), space.dim());
  for (int a = 1; a <= space.m(); ++a) r += 2.0 * sparse_product(space.nabla_E(a).adjoint(), space.nabla_E(a));
  return {"nabla10*nabla10", std::move(r), 0};
}

OperatorMatrix assemble_rough_01(const SectionSpace& space) {
  Mat r = Mat::Zero(space.dim(), space.dim());
  for (int a = 1; a <= space.m(); ++a) r += 2.0 * sparse_product(space.nabla_Ebar(a).adjoint(), space.nabla_Ebar(a));
  return {"nabla01*nabla01", std::move(r), 0};
}

OperatorMatrix assemble_sub_laplacian(const SectionSpace& space) {
  return {"Delta_tr", assemble_rough_10(space).matrix + assemble_rough_01(space).matrix, 0};
}

OperatorMatrix assemble_sub_laplacian_real_frame(const SectionSpace& space) {
  Mat r = Mat::Zero(space.dim(), space.dim());
  for (int a = 1; a <= space.m(); ++a) {
    const Mat ne = space.nabla_E(a) + space.nabla_Ebar(a);
    const Mat nje = kI * (space.nabla_E(a) - space.nabla_Ebar(a));
    r -= sparse_product(ne, ne) + sparse_product(nje, nje);
  }
  return {"Delta_tr(real frame)", std::move(r), 0};
}

OperatorMatrix assemble_theta(const SectionSpace& space) {
  return {"Theta", space.lift_fiber(clifford::theta_matrix(space.m())), 0};
}

OperatorMatrix assemble_rho_action(const SectionSpace& space) {
  return {"rho", space.lift_fiber(clifford::two_form_action(space.model().rho)), 0};
}

OperatorMatrix assemble_nabla_T(const SectionSpace& space) {
  return {"nabla_T", space.nabla_T_value() * identity(space), 0};
}

OperatorMatrix assemble_nabla_T_formula(const SectionSpace& space) {
  const int m = space.m();
  const double scal = space.model().scalW;
  const Mat inner = 2.0 * assemble_rough_10(space).matrix - 2.0 * assemble_rough_01(space).matrix +
                    kI * assemble_rho_action(space).matrix -
                    (space.ell() * scal / (2.0 * (m + 2))) * identity(space);
  return {"nabla_T(formula)", (kI / (4.0 * m)) * inner, 0};
}

OperatorMatrix assemble_N(const SectionSpace& space) {
  return {"N", kI * assemble_nabla_T(space).matrix, 0};
}

Mat assemble_transverse_connection(const SectionSpace& space) {
  const int m = space.m();
  const auto n = space.dim();
  Mat out(2 * m * n, n);
  for (int a = 1; a <= m; ++a) {
    out.middleRows((a - 1) * n, n) = space.nabla_E(a);
    out.middleRows((m + a - 1) * n, n) = space.nabla_Ebar(a);
  }
  return out;
}

Mat assemble_contraction(const SectionSpace& space) {
  const int m = space.m();
  const auto n = space.dim();
  Mat out(n, 2 * m * n);
  for (int a = 1; a <= m; ++a) {
    out.middleCols((a - 1) * n, n) = 2.0 * lifted_generator(space, GeneratorKind::annihilate, a);
    out.middleCols((m + a - 1) * n, n) = 2.0 * lifted_generator(space, GeneratorKind::create, a);
  }
  return out;
}

double twistor_a(int q) { return 1.0 / (2.0 * (q + 1)); }
double twistor_b(int m, int q) { return 1.0 / (2.0 * (m - q + 1)); }

namespace {

// Stacked (b_q E_a D-, a_q conj E_a D+) correction on the full space.
Mat twistor_correction(const SectionSpace& space, int q) {
  const int m = space.m();
  const auto n = space.dim();
  const Mat dp = assemble_dplus(space).matrix;
  const Mat dm = assemble_dminus(space).matrix;
  Mat out(2 * m * n, n);
  for (int a = 1; a <= m; ++a) {
    out.middleRows((a - 1) * n, n) =
        twistor_b(m, q) * sparse_product(lifted_generator(space, GeneratorKind::create, a), dm);
    out.middleRows((m + a - 1) * n, n) =
        twistor_a(q) * sparse_product(lifted_generator(space, GeneratorKind::annihilate, a), dp);
  }
  return out;
}

}  // namespace

OperatorMatrix assemble_twistor(const SectionSpace& space, int q) {
  if (q < 0 || q > space.m()) throw std::out_of_range("twistor: grade q outside 0..m");
  const Mat sel = space.block_selector(q);
  Mat p = sparse_product(assemble_transverse_connection(space) + twistor_correction(space, q), sel);
  return {"P(q=" + std::to_string(q) + ")", std::move(p), std::nullopt};
}

Mat twistor_reconstruction(const SectionSpace& space, int q) {
  const Mat sel = space.block_selector(q);
  return assemble_twistor(space, q).matrix - sparse_product(twistor_correction(space, q), sel);
}

std::vector<SpectrumEntry> spectrum(const Mat& a, int count, double cluster_tol) {
  if (a.rows() != a.cols()) throw std::invalid_argument("spectrum: matrix is not square");
  if (!is_hermitian(a, 1e-10))
    throw std::invalid_argument("spectrum: matrix is not Hermitian; use spectrum_gram");
  std::vector<SpectrumEntry> out;
  if (a.size() == 0) return out;
  const Eigen::SelfAdjointEigenSolver<Mat> es(a, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& ev = es.eigenvalues();
  double sum = ev(0);
  double prev = ev(0);
  int mult = 1;
  for (Eigen::Index i = 1; i <= ev.size(); ++i) {
    if (i < ev.size() && std::abs(ev(i) - prev) <= cluster_tol * (1.0 + std::abs(ev(i)))) {
      sum += ev(i);
      prev = ev(i);
      ++mult;
      continue;
    }
    out.push_back({sum / mult, mult});
    if (count > 0 && static_cast<int>(out.size()) == count) break;
    if (i < ev.size()) {
      sum = prev = ev(i);
      mult = 1;
    }
  }
  return out;
}

std::vector<SpectrumEntry> spectrum_gram(const Mat& a, int count, double cluster_tol) {
  const Mat g = sparse_product(a.adjoint(), a);
  return spectrum(Mat(0.5 * (g + g.adjoint())), count, cluster_tol);
}

int kernel_dim(const Mat& a, double tol) {
  if (!(tol > 0)) throw std::invalid_argument("kernel_dim: tol must be positive");
  if (a.cols() == 0) return 0;
  const Eigen::JacobiSVD<Mat> svd(a);
  const auto& sv = svd.singularValues();
  int small = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) < tol) ++small;
  // Columns beyond the row count are null directly.
  return small + static_cast<int>(std::max<Eigen::Index>(0, a.cols() - a.rows()));
}

std::vector<KernelCount> kernel_dim(const SectionSpace& space, const Mat& a, double tol,
                                    double shell_tol) {
  if (!(tol > 0)) throw std::invalid_argument("kernel_dim: tol must be positive");
  if (a.cols() != space.dim()) throw std::invalid_argument("kernel_dim: operator does not act on the space");
  Mat g = sparse_product(a.adjoint(), a);
  g = 0.5 * (g + g.adjoint());
  const double gn = g.norm();
  double off = 0.0;
  for (Eigen::Index j = 0; j < g.cols(); ++j)
    for (Eigen::Index i = 0; i < g.rows(); ++i)
      if (space.grade(i) != space.grade(j)) off = std::max(off, std::abs(g(i, j)));
  if (off > 1e-10 * (1.0 + gn)) throw std::invalid_argument("kernel_dim: Gram matrix mixes grades");

  std::vector<KernelCount> out;
  for (int q = 0; q <= space.m(); ++q) {
    const auto idx = space.block(q);
    const auto nb = static_cast<Eigen::Index>(idx.size());
    Mat gq(nb, nb);
    for (Eigen::Index i = 0; i < nb; ++i)
      for (Eigen::Index j = 0; j < nb; ++j) gq(i, j) = g(idx[i], idx[j]);
    const Eigen::SelfAdjointEigenSolver<Mat> es(gq);
    std::vector<Eigen::Index> null_cols;
    for (Eigen::Index i = 0; i < nb; ++i)
      if (std::sqrt(std::max(es.eigenvalues()(i), 0.0)) < tol) null_cols.push_back(i);
    KernelCount kc;
    kc.q = q;
    kc.raw = static_cast<int>(null_cols.size());
    std::vector<Eigen::Index> top_rows;
    for (Eigen::Index i = 0; i < nb; ++i)
      if (space.top_shell(idx[i])) top_rows.push_back(i);
    if (!null_cols.empty() && !top_rows.empty()) {
      Mat t(static_cast<Eigen::Index>(top_rows.size()), static_cast<Eigen::Index>(null_cols.size()));
      for (std::size_t r = 0; r < top_rows.size(); ++r)
        for (std::size_t c = 0; c < null_cols.size(); ++c)
          t(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
              es.eigenvectors()(top_rows[r], null_cols[c]);
      const Eigen::JacobiSVD<Mat> svd(t);
      for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
        if (svd.singularValues()(i) > shell_tol) ++kc.spurious;
    }
    kc.genuine = static_cast<long long>(kc.raw - kc.spurious) * space.degeneracy();
    out.push_back(kc);
  }
  return out;
}

double interior_norm(const SectionSpace& space, const Mat& diff) {
  if (diff.cols() != space.dim()) throw std::invalid_argument("interior_norm: size mismatch");
  if (space.basis() == ModeBasis::fourier) return norm(diff);
  return norm(sparse_product(diff, space.interior_selector()));
}

}  // namespace crspin::ops
