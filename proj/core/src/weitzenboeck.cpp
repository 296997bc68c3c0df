#include "crspin/weitzenboeck.hpp"

#include <stdexcept>

#include "crspin/clifford.hpp"
#include "crspin/operators.hpp"

namespace crspin::weitzenboeck {

namespace {

void check_q(int m, int q) {
  if (q < 0 || q > m) throw std::out_of_range("grade q outside 0..m");
}

Mat restrict_block(const Mat& fiber, int m, int q) {
  const auto idx = clifford::indices_of_grade(m, q);
  const auto n = static_cast<Eigen::Index>(idx.size());
  Mat out(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) out(i, j) = fiber(idx[i].mask(), idx[j].mask());
  return out;
}

Mat hermitian_part(const Mat& a) { return 0.5 * (a + a.adjoint()); }

}  // namespace

CurvatureCoefficients curvature_coefficients(int m, int ell, int q) {
  check_q(m, q);
  const double mu = m - 2 * q;
  return {ell / (m + 2.0) + mu / m, 1.0 + ell * mu / (m * (m + 2.0))};
}

Mat ricci_operator_block(const models::PseudoHermitianModel& model, int q) {
  check_q(model.m, q);
  return restrict_block(-0.5 * kI * clifford::two_form_action(model.rho), model.m, q);
}

CurvatureTerm curvature_term(const models::PseudoHermitianModel& model, int ell, int q) {
  const auto [c, d] = curvature_coefficients(model.m, ell, q);
  const Mat x = ricci_operator_block(model, q);
  CurvatureTerm t;
  t.q = q;
  t.mu = model.m - 2 * q;
  t.ell = ell;
  t.as_matrix = hermitian_part(c * x + d * (model.scalW / 4.0) * Mat::Identity(x.rows(), x.cols()));
  const Eigen::SelfAdjointEigenSolver<Mat> es(t.as_matrix, Eigen::EigenvaluesOnly);
  t.eigenvalues.assign(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  return t;
}

QSplit q_split(const models::PseudoHermitianModel& model, int ell, int q) {
  const int m = model.m;
  check_q(m, q);
  const double mu = m - 2 * q;
  const Mat x = ricci_operator_block(model, q);
  const Mat id = Mat::Identity(x.rows(), x.cols());
  QSplit out;
  out.weight = 2.0 * (m - q) / m;
  out.r_star = x + (model.scalW / 4.0) * id;
  // rho. = 2i x and dtheta. = -2i Theta = -2i mu on the block.
  const Mat rho_dot = 2.0 * kI * x;
  const Mat dth_dot = -2.0 * kI * mu * id;
  const cplx coef = -kI * (ell - m - 2.0) / (2.0 * (m + 2));
  out.k = coef * (rho_dot - (model.scalW / (4.0 * m)) * dth_dot);
  return out;
}

double trace_K(const models::PseudoHermitianModel& model, int ell) {
  const int m = model.m;
  const double coef = (ell - m - 2.0) / (2.0 * (m + 2));
  return coef * (model.rho.trace().real() - model.scalW / 4.0);
}

double proof_bound_minus(int m, int ell, int q) {
  check_q(m, q);
  const double mu = m - 2 * q;
  return (m - mu) * (m + 2.0 - ell) / (m * (m + 2.0));
}

double proof_bound_plus(int m, int ell, int q) {
  check_q(m, q);
  const double mu = m - 2 * q;
  return (m + mu) * (m + 2.0 + ell) / (m * (m + 2.0));
}

Mat sl_rhs(const ops::SectionSpace& space) {
  const int m = space.m();
  const int ell = space.ell();
  const double scal = space.model().scalW;
  const Mat theta = ops::assemble_theta(space).matrix;
  const Mat id = Mat::Identity(space.dim(), space.dim());
  const Mat r10 = ops::assemble_rough_10(space).matrix;
  const Mat r01 = ops::assemble_rough_01(space).matrix;
  const Mat rho = ops::assemble_rho_action(space).matrix;
  return sparse_product(id - theta / m, r10) + sparse_product(id + theta / m, r01) -
         0.5 * kI * sparse_product((ell / (m + 2.0)) * id + theta / m, rho) +
         (id + (ell / (m * (m + 2.0))) * theta) * (scal / 4.0);
}

double sl_residual(const ops::SectionSpace& space) {
  const Mat d = ops::assemble_kohn_dirac(space).matrix;
  return ops::interior_norm(space, sparse_product(d, d) - sl_rhs(space));
}

namespace {

int dl_grade(int m, int ell) {
  if (((m + ell) % 2 + 2) % 2 != 0) throw std::invalid_argument("weight l must have the parity of m");
  if (ell < -m || ell > m) throw std::invalid_argument("weight l outside -m..m");
  return (m + ell) / 2;
}

}  // namespace

Mat dl_rhs(const ops::SectionSpace& space, int ell) {
  const int m = space.m();
  const int q = dl_grade(m, ell);
  const double scal = space.model().scalW;
  const Mat sel = space.block_selector(q);
  const Mat full = ((m + ell) / static_cast<double>(m)) * ops::assemble_rough_10(space).matrix +
                   ((m - ell) / static_cast<double>(m)) * ops::assemble_rough_01(space).matrix +
                   (kI * static_cast<double>(ell) / (m * (m + 2.0))) * ops::assemble_rho_action(space).matrix +
                   (1.0 - ell * ell / (m * (m + 2.0))) * (scal / 4.0) *
                       Mat::Identity(space.dim(), space.dim());
  return sparse_product(sel.adjoint(), sparse_product(full, sel));
}

double dl_residual(const ops::SectionSpace& space, int ell) {
  const int q = dl_grade(space.m(), ell);
  const Mat sel = space.block_selector(q);
  const Mat d = sparse_product(ops::assemble_kohn_dirac(space).matrix, sel);
  const Mat diff = sparse_product(d.adjoint(), d) - dl_rhs(space, ell);
  const auto idx = space.block(q);
  std::vector<Eigen::Index> cols;
  for (std::size_t j = 0; j < idx.size(); ++j)
    if (!space.top_shell(idx[j])) cols.push_back(static_cast<Eigen::Index>(j));
  Mat sub(diff.rows(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) sub.col(static_cast<Eigen::Index>(j)) = diff.col(cols[j]);
  return norm(sub);
}

}  // namespace crspin::weitzenboeck
