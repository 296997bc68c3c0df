#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>

#include "crspin/clifford.hpp"
#include "crspin/cohomology.hpp"
#include "crspin/operators.hpp"
#include "oracles/oracles.hpp"

using namespace crspin;
using namespace crspin::ops;

namespace {

constexpr double kAlg = 1e-12;

struct Case {
  const char* name;
  models::PseudoHermitianModel model;
};

std::vector<Case> spaces() {
  const models::TorusLattice sq1{1, {0.0, 1.0}};
  const models::TorusLattice sq2{2, {0.0, 1.0}};
  const models::TorusLattice skew{1, {0.4, 1.3}};
  return {
      {"heis_m1_k0", models::heisenberg_model(1, 0, {3, 6})},
      {"heis_m1_k2", models::heisenberg_model(1, 2, {1, 10})},
      {"heis_m2_k1", models::heisenberg_model(2, 1, {1, 5})},
      {"heis_m2_km1", models::heisenberg_model(2, -1, {1, 5})},
      {"torus_m1_s1_skew", models::cr_alpha_bundle(skew, 1, 1, {2, 8})},
      {"torus_m2_s0", models::cr_alpha_bundle(sq2, 1, 0, {1, 5})},
      {"torus_m1_sm2", models::cr_alpha_bundle(sq1, 1, -2, {1, 8})},
  };
}

Mat restrict_cols(const Mat& a, const std::vector<Eigen::Index>& cols) {
  Mat out(a.rows(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) out.col(static_cast<Eigen::Index>(j)) = a.col(cols[j]);
  return out;
}

}  // namespace

class OperatorProperties : public ::testing::TestWithParam<std::size_t> {};

TEST_P(OperatorProperties, ComplexAdjointGrading) {
  const auto c = spaces()[GetParam()];
  SCOPED_TRACE(c.name);
  const SectionSpace sp(c.model);
  const auto dp = assemble_dplus(sp);
  const auto dm = assemble_dminus(sp);
  const auto d = assemble_kohn_dirac(sp);
  const Mat th = assemble_theta(sp).matrix;
  EXPECT_LE(norm(dp.matrix * dp.matrix), kAlg);
  EXPECT_LE(norm(dm.matrix * dm.matrix), kAlg);
  EXPECT_LE(norm(dm.matrix - dp.matrix.adjoint()), kAlg);
  EXPECT_LE(norm(d.matrix - d.matrix.adjoint()), kAlg);
  EXPECT_LE(norm(th * dp.matrix - dp.matrix * th + 2.0 * dp.matrix), kAlg);
  EXPECT_LE(norm(th * dm.matrix - dm.matrix * th - 2.0 * dm.matrix), kAlg);
  EXPECT_EQ(grading_defect(sp, dp), 0.0);
  EXPECT_EQ(grading_defect(sp, dm), 0.0);
  // D^2 preserves every block
  const Mat d2 = d.matrix * d.matrix;
  for (int q = 0; q <= sp.m(); ++q)
    for (int r = 0; r <= sp.m(); ++r)
      if (q != r) EXPECT_LE(norm(sp.block_selector(r).adjoint() * d2 * sp.block_selector(q)), kAlg);
}

TEST_P(OperatorProperties, LaplaciansAndReeb) {
  const auto c = spaces()[GetParam()];
  SCOPED_TRACE(c.name);
  const SectionSpace sp(c.model);
  const Mat lap = assemble_sub_laplacian(sp).matrix;
  EXPECT_LE(norm(lap - assemble_rough_10(sp).matrix - assemble_rough_01(sp).matrix), kAlg);
  EXPECT_LE(norm(lap - assemble_sub_laplacian_real_frame(sp).matrix), 1e-10);
  const Eigen::SelfAdjointEigenSolver<Mat> es(lap, Eigen::EigenvaluesOnly);
  EXPECT_GE(es.eigenvalues().minCoeff(), -kAlg);
  EXPECT_LE(interior_norm(sp, assemble_nabla_T(sp).matrix - assemble_nabla_T_formula(sp).matrix), 1e-10);
  const Mat n = assemble_N(sp).matrix;
  EXPECT_LE(norm(n - sp.n_value() * Mat::Identity(sp.dim(), sp.dim())), kAlg);
  EXPECT_EQ(sp.n_value(), c.model.spectral->n_eigenvalue);
}

TEST_P(OperatorProperties, TwistorDecomposition) {
  const auto c = spaces()[GetParam()];
  SCOPED_TRACE(c.name);
  const SectionSpace sp(c.model);
  const Mat contraction = assemble_contraction(sp);
  for (int q = 0; q <= sp.m(); ++q) {
    const auto p = assemble_twistor(sp, q);
    EXPECT_LE(norm(contraction * p.matrix), kAlg) << "q=" << q;
    const Mat nabla = assemble_transverse_connection(sp) * sp.block_selector(q);
    EXPECT_LE(norm(nabla - twistor_reconstruction(sp, q)), kAlg) << "q=" << q;
  }
}

INSTANTIATE_TEST_SUITE_P(Spaces, OperatorProperties, ::testing::Range(std::size_t{0}, spaces().size()));

TEST(Operators, ConstantModesAreClosed) {
  const SectionSpace sp(models::heisenberg_model(1, 0, {2, 4}));
  const Mat dp = assemble_dplus(sp).matrix;
  // the zero-momentum mode is the centre of the (2N+1)^2 grid
  const Eigen::Index centre = (sp.mode_dim() - 1) / 2;
  std::vector<Eigen::Index> cols;
  for (Eigen::Index s = 0; s < sp.fiber_dim(); ++s) cols.push_back(centre * sp.fiber_dim() + s);
  EXPECT_EQ(norm(restrict_cols(dp, cols)), 0.0);
}

TEST(Operators, ReebDerivativeVanishesOnFlatSector) {
  const SectionSpace sp(models::heisenberg_model(2, 0, {1, 4}));
  EXPECT_EQ(norm(assemble_nabla_T(sp).matrix), 0.0);
}

TEST(Operators, ConstantSpinorInTwistorKernel) {
  // torus bundle, s = 0, q = m/2
  const SectionSpace sp(models::cr_alpha_bundle({2, {0.0, 1.0}}, 1, 0, {1, 4}));
  const Mat p = assemble_twistor(sp, 1).matrix;
  const Eigen::Index centre = (sp.mode_dim() - 1) / 2;
  const auto block = sp.block(1);
  for (std::size_t j = 0; j < block.size(); ++j)
    if (block[j] / sp.fiber_dim() == centre) EXPECT_EQ(p.col(static_cast<Eigen::Index>(j)).norm(), 0.0);
}

TEST(Operators, FlatSpectrumMatchesFourierOracle) {
  for (const models::TorusLattice lat : {models::TorusLattice{1, {0.0, 1.0}}, models::TorusLattice{1, {0.35, 0.9}}}) {
    models::PseudoHermitianModel model = models::heisenberg_model(1, 0, {3, 4});
    model.spectral->lattice = lat;
    const SectionSpace sp(model);
    const Mat d = assemble_kohn_dirac(sp).matrix;
    const Eigen::SelfAdjointEigenSolver<Mat> es(Mat(d * d), Eigen::EigenvaluesOnly);
    const auto expect = oracle::flat_dirac_square_spectrum(lat, 1, 3);
    ASSERT_EQ(static_cast<std::size_t>(es.eigenvalues().size()), expect.size());
    for (std::size_t i = 0; i < expect.size(); ++i)
      EXPECT_NEAR(es.eigenvalues()(static_cast<Eigen::Index>(i)), expect[i], 1e-9 * (1.0 + expect[i]));
    EXPECT_GE(es.eigenvalues().minCoeff(), -1e-10);
  }
}

TEST(Operators, SpectrumClustering) {
  const auto s = spectrum(Mat::Zero(5, 5));
  ASSERT_EQ(s.size(), 1U);
  EXPECT_EQ(s[0].value, 0.0);
  EXPECT_EQ(s[0].multiplicity, 5);
  Mat a = Mat::Zero(2, 2);
  a(0, 1) = 1.0;
  EXPECT_THROW(spectrum(a), std::invalid_argument);
  EXPECT_EQ(spectrum_gram(a).size(), 2U);
  EXPECT_EQ(kernel_dim(Mat(Mat::Identity(4, 4)), 1e-8), 0);
}

TEST(Operators, KernelDimensions) {
  {
    const SectionSpace sp(models::heisenberg_model(1, 0, {4, 4}));
    EXPECT_EQ(kernel_dim(assemble_kohn_dirac(sp).matrix, 1e-8), 2);
  }
  {
    const SectionSpace sp(models::heisenberg_model(2, 0, {1, 4}));
    const auto kc = kernel_dim(sp, assemble_kohn_dirac(sp).matrix, 1e-8);
    for (const auto& k : kc) EXPECT_EQ(k.genuine, binomial(2, k.q));
  }
  {
    // s * c > 0: nothing below top degree
    const SectionSpace sp(models::cr_alpha_bundle({2, {0.0, 1.0}}, 1, 2, {1, 6}));
    const auto kc = kernel_dim(sp, assemble_kohn_dirac(sp).matrix, 1e-8);
    for (const auto& k : kc)
      if (k.q < 2) EXPECT_EQ(k.genuine, 0) << "q=" << k.q;
  }
}

TEST(Operators, TwistorConstants) {
  EXPECT_DOUBLE_EQ(twistor_a(0), 0.5);
  EXPECT_DOUBLE_EQ(twistor_a(2), 1.0 / 6.0);
  EXPECT_DOUBLE_EQ(twistor_b(3, 1), 1.0 / 6.0);
  EXPECT_DOUBLE_EQ(twistor_b(2, 2), 0.5);
}

TEST(SectionSpace, Structure) {
  const SectionSpace sp(models::heisenberg_model(2, 2, {1, 3}));
  EXPECT_EQ(sp.basis(), ModeBasis::ladder);
  EXPECT_EQ(sp.dim(), 16 * 4);
  EXPECT_EQ(sp.degeneracy(), 4);
  EXPECT_EQ(sp.kappa(), 2.0);
  EXPECT_EQ(static_cast<long long>(sp.block(1).size()), 16 * 2);
  // [nabla_E, nabla_conjE] = kappa on the interior
  const Mat comm = sp.nabla_E(1) * sp.nabla_Ebar(1) - sp.nabla_Ebar(1) * sp.nabla_E(1);
  EXPECT_LE(interior_norm(sp, comm - sp.kappa() * Mat::Identity(sp.dim(), sp.dim())), 1e-12);
  EXPECT_THROW(SectionSpace(models::sphere_model(2)), std::invalid_argument);
  EXPECT_THROW((void)sp.nabla_E(3), std::out_of_range);
  EXPECT_THROW(SectionSpace(models::heisenberg_model(3, 1, {1, 40})), std::invalid_argument);
}
