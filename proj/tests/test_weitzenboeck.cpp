#include <gtest/gtest.h>

#include <algorithm>
#include <bit>

#include <Eigen/Eigenvalues>

#include "crspin/operators.hpp"
#include "crspin/weitzenboeck.hpp"

using namespace crspin;
using namespace crspin::weitzenboeck;

namespace {

// Closed form on a flat Landau sector: D^2 |n, mask> = 4|kappa| (sum n + q) for
// kappa > 0 and 4|kappa| (sum n + m - q) for kappa < 0.
double landau_level(const ops::SectionSpace& sp, Eigen::Index i) {
  const auto fib = sp.fiber_dim();
  const int q = std::popcount(static_cast<unsigned>(i % fib));
  Eigen::Index mode = i / fib;
  int total = 0;
  for (int a = 0; a < sp.m(); ++a, mode /= sp.factor_dim()) total += static_cast<int>(mode % sp.factor_dim());
  const double k = sp.kappa();
  return 4.0 * std::abs(k) * (total + (k > 0 ? q : sp.m() - q));
}

// Eigenvalues of -(i/2) rho. on grade q from the eigenvalues r of R:
// sum_a r_a (2 n_a - 1) over subsets of size q.
std::vector<double> ricci_oracle(const Mat& rho, int q) {
  const Eigen::SelfAdjointEigenSolver<Mat> es(rho, Eigen::EigenvaluesOnly);
  const int m = static_cast<int>(rho.rows());
  std::vector<double> out;
  for (int mask = 0; mask < (1 << m); ++mask) {
    if (std::popcount(static_cast<unsigned>(mask)) != q) continue;
    double v = 0.0;
    for (int a = 0; a < m; ++a) v += es.eigenvalues()(a) * (((mask >> a) & 1) ? 1.0 : -1.0);
    out.push_back(v);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST(Weitzenboeck, SchroedingerLichnerowiczAgainstLandauLevels) {
  const std::vector<models::PseudoHermitianModel> cases = {
      models::heisenberg_model(1, 2, {1, 10}), models::heisenberg_model(2, 1, {1, 6}),
      models::heisenberg_model(2, -2, {1, 5}), models::cr_alpha_bundle({2, {0.0, 1.0}}, 1, 1, {1, 5}),
      models::cr_alpha_bundle({1, {0.2, 0.8}}, 2, -1, {1, 9})};
  for (const auto& model : cases) {
    const ops::SectionSpace sp(model);
    const Mat d = ops::assemble_kohn_dirac(sp).matrix;
    const Mat d2 = d * d;
    const Mat rhs = sl_rhs(sp);
    Mat expect = Mat::Zero(sp.dim(), sp.dim());
    for (Eigen::Index i = 0; i < sp.dim(); ++i) expect(i, i) = landau_level(sp, i);
    EXPECT_LE(ops::interior_norm(sp, d2 - expect), 1e-10) << sp.sector_label();
    EXPECT_LE(ops::interior_norm(sp, rhs - expect), 1e-10) << sp.sector_label();
    EXPECT_LE(sl_residual(sp), 1e-10);
  }
}

TEST(Weitzenboeck, SlOnFlatFourierSector) {
  const ops::SectionSpace sp(models::heisenberg_model(1, 0, {3, 4}));
  EXPECT_LE(sl_residual(sp), 1e-10);
}

TEST(Weitzenboeck, DlResiduals) {
  for (int m = 1; m <= 2; ++m)
    for (int k : {0, 1, -2}) {
      const ops::SectionSpace sp(models::heisenberg_model(m, k, {1, 6}));
      for (int ell = -m; ell <= m; ell += 2) EXPECT_LE(dl_residual(sp, ell), 1e-10) << m << " " << k << " " << ell;
    }
  const ops::SectionSpace sp(models::heisenberg_model(2, 0, {1, 4}));
  EXPECT_THROW(dl_residual(sp, 1), std::invalid_argument);
  EXPECT_THROW(dl_residual(sp, 4), std::invalid_argument);
}

TEST(Weitzenboeck, D0IsRoughLaplacianOnFlatModels) {
  const ops::SectionSpace sp(models::heisenberg_model(2, 1, {1, 5}));
  const Mat sel = sp.block_selector(1);
  const Mat d = ops::assemble_kohn_dirac(sp).matrix * sel;
  const Mat lap = sel.adjoint() * ops::assemble_sub_laplacian(sp).matrix * sel;
  Mat diff = d.adjoint() * d - lap;
  const auto idx = sp.block(1);
  for (std::size_t j = 0; j < idx.size(); ++j)
    if (sp.top_shell(idx[j])) diff.col(static_cast<Eigen::Index>(j)).setZero();
  EXPECT_LE(norm(diff), 1e-10);
}

TEST(Weitzenboeck, CurvatureTermValues) {
  // mu = 0, l = 0: Q = scal/4
  const auto s2 = models::sphere_model(2, 3.0);
  const auto t = curvature_term(s2, 0, 1);
  EXPECT_LE(norm(t.as_matrix - 0.75 * Mat::Identity(2, 2)), 1e-12);
  EXPECT_GT(t.eigenvalues.front(), 0.0);
  const auto flat = curvature_term(models::heisenberg_model(2, 0, {}), 1, 1);
  EXPECT_EQ(norm(flat.as_matrix), 0.0);
}

TEST(Weitzenboeck, CurvatureTermMatchesRicciOracle) {
  // a non-scalar Hermitian rho to exercise the eigenbasis
  auto model = models::sphere_model(3);
  model.rho << 2.0, cplx(0.5, 0.3), 0.0, cplx(0.5, -0.3), 1.0, cplx(0.0, 0.2), 0.0, cplx(0.0, -0.2), 0.5;
  model.scalW = 1.3;
  for (int ell : {-2, 0, 3})
    for (int q = 0; q <= 3; ++q) {
      const auto [c, d] = curvature_coefficients(3, ell, q);
      const double mu = 3 - 2 * q;
      EXPECT_DOUBLE_EQ(c, ell / 5.0 + mu / 3.0);
      EXPECT_DOUBLE_EQ(d, 1.0 + ell * mu / 15.0);
      auto expect = ricci_oracle(model.rho, q);
      for (auto& v : expect) v = c * v + d * model.scalW / 4.0;
      std::sort(expect.begin(), expect.end());
      const auto got = curvature_term(model, ell, q).eigenvalues;
      ASSERT_EQ(got.size(), expect.size());
      for (std::size_t i = 0; i < got.size(); ++i) EXPECT_NEAR(got[i], expect[i], 1e-12);
    }
}

TEST(Weitzenboeck, SplitIdentity) {
  auto model = models::sphere_model(3, 2.0);
  model.rho(0, 0) += 0.3;  // off Einstein
  model.scalW = 4.0 * model.rho.trace().real();
  for (int ell = -5; ell <= 5; ++ell)
    for (int q = 0; q <= 3; ++q) {
      const auto split = q_split(model, ell, q);
      const auto term = curvature_term(model, ell, q);
      EXPECT_LE(norm(split.weight * split.r_star + split.k - term.as_matrix), 1e-12) << ell << " " << q;
      if (ell == 5) EXPECT_LE(norm(split.k), 1e-12);
    }
  for (int ell = -5; ell <= 5; ++ell) EXPECT_LE(std::abs(trace_K(model, ell)), 1e-12);
  const auto flat = models::heisenberg_model(2, 0, {});
  const auto fs = q_split(flat, 0, 1);
  EXPECT_EQ(norm(fs.r_star), 0.0);
  EXPECT_EQ(norm(fs.k), 0.0);
}

TEST(Weitzenboeck, ProofBoundsBelowCurvatureTerm) {
  const auto s = models::sphere_model(3, 2.0);
  for (int ell = -4; ell <= 4; ++ell)
    for (int q = 1; q <= 2; ++q) {
      const double lo = std::min(proof_bound_minus(3, ell, q), proof_bound_plus(3, ell, q)) * s.scalW / 4.0;
      EXPECT_GE(curvature_term(s, ell, q).eigenvalues.front(), lo - 1e-12);
    }
}
