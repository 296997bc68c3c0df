#include <gtest/gtest.h>

#include <cmath>

#include "crspin/conformal.hpp"
#include "oracles/oracles.hpp"

using namespace crspin;
using namespace crspin::conformal;

namespace {

std::vector<ConformalScale> scales(int m) {
  const int n = 2 * m + 1;
  std::vector<double> w1(static_cast<std::size_t>(n), 0.4);
  std::vector<double> w2(static_cast<std::size_t>(n), 0.0);
  w2[0] = 1.0;
  w2[static_cast<std::size_t>(n - 1)] = 0.7;
  std::vector<double> w3(static_cast<std::size_t>(n), 0.0);
  w3[1] = -0.8;
  w3[static_cast<std::size_t>(n - 1)] = 1.1;
  return {ConformalScale::cosine(m, 0.3, 0),
          ConformalScale(m, {{0.2, w1, 0.3}, {0.15, w2, 0.1}}),
          ConformalScale(m, {{0.25, w3, -0.4}})};
}

// (law, q) pairs for which the operator is not identically zero.
bool nontrivial(CovarianceLaw law, int m, int q) {
  switch (law) {
    case CovarianceLaw::dminus: return q > 0;
    case CovarianceLaw::dplus: return q < m;
    case CovarianceLaw::twistor10: return q < m;
    case CovarianceLaw::twistor01: return q > 0;
    case CovarianceLaw::kohn_dirac: return true;
  }
  return false;
}

}  // namespace

TEST(Conformal, ScaleValidation) {
  EXPECT_THROW(ConformalScale(1, {{1.0, {1.0, 0.0}, 0.0}}), std::invalid_argument);
  EXPECT_THROW(ConformalScale(1, {{NAN, {1.0, 0.0, 0.0}, 0.0}}), std::invalid_argument);
  const auto f = ConformalScale::cosine(1, 0.3, 0);
  const Point x{0.2, 0.1, -0.5};
  EXPECT_DOUBLE_EQ(f.value(x), 0.3 * std::cos(0.2));
  EXPECT_DOUBLE_EQ(f.gradient(x)(0), -0.3 * std::sin(0.2));
}

TEST(Conformal, ZeroScaleHasZeroDefect) {
  for (int m = 1; m <= 2; ++m) {
    const auto pts = sample_points(m, 10, 4);
    EXPECT_EQ(conformal_check(m, 1, ConformalScale::zero(m), pts), 0.0);
  }
}

TEST(Conformal, ExampleDminusM1) {
  // f = 0.3 cos x, m = 1, l = -1, spinor in the mu = +1 block (q = 0)
  const auto f = ConformalScale::cosine(1, 0.3, 0);
  const auto pts = sample_points(1, 20, 9);
  const auto phi = random_spinor_field(1, 0, 5);
  EXPECT_LE(covariance_defect({1, -1, 0, CovarianceLaw::dplus}, f, phi, pts), 1e-9);
  EXPECT_LE(covariance_defect({1, -1, 0, CovarianceLaw::dminus}, f, phi, pts), 1e-9);
}

TEST(Conformal, ConnectionMatchesExplicitRule) {
  for (int m = 1; m <= 2; ++m)
    for (int ell = -3; ell <= 3; ++ell)
      for (const auto& f : scales(m)) {
        const auto pts = sample_points(m, 6, 21 + static_cast<std::uint64_t>(ell + 3));
        for (int q = 0; q <= m; ++q) {
          const auto phi = random_spinor_field(m, q, 100 + static_cast<std::uint64_t>(q));
          for (const auto& x : pts)
            for (int dir = 0; dir < 2 * m; ++dir) {
              const Vec lib = std::exp(f.value(x)) * rescaled_spinor_derivative(m, ell, f, phi, x, dir);
              const Vec ref = oracle::spinor_rule(m, ell, f, phi, x, dir);
              EXPECT_LE((lib - ref).norm(), 1e-12);
            }
        }
      }
}

TEST(Conformal, LawsHoldAtCovarianceExponents) {
  for (int m = 1; m <= 2; ++m)
    for (int ell = -3; ell <= 3; ++ell)
      for (const auto& f : scales(m)) {
        const auto pts = sample_points(m, 20, 3);
        EXPECT_LE(conformal_check(m, ell, f, pts), 1e-9) << "m=" << m << " l=" << ell;
      }
}

TEST(Conformal, KohnDiracNeedsMatchingWeight) {
  const auto f = scales(2)[1];
  const auto pts = sample_points(2, 8, 2);
  const auto phi = random_spinor_field(2, 1, 7);
  // mu = 0 block: the law holds for l = 0 only
  EXPECT_LE(covariance_defect({2, 0, 1, CovarianceLaw::kohn_dirac}, f, phi, pts), 1e-9);
  EXPECT_GT(covariance_defect({2, 0, 1, CovarianceLaw::kohn_dirac}, f, phi, pts, 1.0), 1e-6);
  EXPECT_THROW(covariance_defect({2, 2, 1, CovarianceLaw::kohn_dirac}, f, phi, pts), std::invalid_argument);
}

TEST(Conformal, ExponentScanIsSound) {
  for (int m = 1; m <= 2; ++m)
    for (int ell : {-2, 0, 1})
      for (const auto& f : scales(m))
        for (auto law : {CovarianceLaw::dminus, CovarianceLaw::dplus, CovarianceLaw::twistor10,
                         CovarianceLaw::twistor01})
          for (int q = 0; q <= m; ++q) {
            if (!nontrivial(law, m, q)) continue;
            const auto pts = sample_points(m, 20, 17);
            const auto phi = random_spinor_field(m, q, 31 + static_cast<std::uint64_t>(q));
            const auto scan = exponent_scan({m, ell, q, law}, f, phi, pts, 1e-9);
            EXPECT_TRUE(scan.sound) << to_string(law) << " m=" << m << " l=" << ell << " q=" << q;
          }
}

TEST(Conformal, ExponentValues) {
  EXPECT_DOUBLE_EQ(law_exponent(CovarianceLaw::dminus, 2, 1, 0), 3.0 + 1.5);
  EXPECT_DOUBLE_EQ(law_exponent(CovarianceLaw::dplus, 2, 1, 0), 3.0 - 1.5);
  EXPECT_DOUBLE_EQ(law_exponent(CovarianceLaw::kohn_dirac, 2, 0, 1), 3.0);
  EXPECT_DOUBLE_EQ(law_exponent(CovarianceLaw::twistor10, 2, 1, 0), (1.0 - 2.0) / 2.0 - 1.0);
  EXPECT_DOUBLE_EQ(law_exponent(CovarianceLaw::twistor01, 2, 1, 0), (2.0 - 1.0) / 2.0 - 1.0);
}

TEST(Conformal, RejectsMixedGrades) {
  const auto f = scales(1)[0];
  const auto pts = sample_points(1, 3, 1);
  auto phi = random_spinor_field(1, 0, 2);
  phi.components[1] = phi.components[0];
  EXPECT_THROW(covariance_defect({1, 0, 0, CovarianceLaw::dplus}, f, phi, pts), std::invalid_argument);
}

TEST(Conformal, Deterministic) {
  EXPECT_EQ(sample_points(2, 5, 42), sample_points(2, 5, 42));
  const auto a = random_spinor_field(2, 1, 3);
  const auto b = random_spinor_field(2, 1, 3);
  ASSERT_EQ(a.components.size(), b.components.size());
  for (std::size_t i = 0; i < a.components.size(); ++i) {
    ASSERT_EQ(a.components[i].size(), b.components[i].size());
    for (std::size_t j = 0; j < a.components[i].size(); ++j)
      EXPECT_EQ(a.components[i][j].amplitude, b.components[i][j].amplitude);
  }
}
