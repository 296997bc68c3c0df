#pragma once

// Pointwise checks of the transformation laws of D+, D-, D_theta and the
// twistor operators under theta -> exp(2f) theta on the Heisenberg frame.
// Coordinates on R^{2m+1}: x_a at 2a, y_a at 2a+1 (a 0-based), t at 2m.

#include <cstdint>
#include <span>
#include <vector>

#include "crspin/numeric.hpp"

namespace crspin::conformal {

using Point = std::vector<double>;

// amplitude * cos(wavevector . x + phase)
struct TrigTerm {
  double amplitude = 0.0;
  std::vector<double> wavevector;
  double phase = 0.0;
};

class ConformalScale {
 public:
  ConformalScale(int m, std::vector<TrigTerm> terms);
  static ConformalScale zero(int m) { return {m, {}}; }
  // amplitude * cos(coordinate)
  static ConformalScale cosine(int m, double amplitude, int coordinate);

  [[nodiscard]] int m() const { return m_; }
  [[nodiscard]] const std::vector<TrigTerm>& terms() const { return terms_; }
  [[nodiscard]] double value(std::span<const double> x) const;
  [[nodiscard]] Eigen::VectorXd gradient(std::span<const double> x) const;

 private:
  int m_;
  std::vector<TrigTerm> terms_;
};

// amplitude * exp(i (wavevector . x + phase))
struct FieldTerm {
  cplx amplitude;
  std::vector<double> wavevector;
  double phase = 0.0;
};

// One trigonometric polynomial per spinor mask.
struct SpinorField {
  int m = 1;
  std::vector<std::vector<FieldTerm>> components;
};

SpinorField random_spinor_field(int m, int q, std::uint64_t seed, int terms_per_component = 2);
std::vector<Point> sample_points(int m, int count, std::uint64_t seed, double radius = 1.0);

enum class CovarianceLaw { dminus, dplus, kohn_dirac, twistor10, twistor01 };

const char* to_string(CovarianceLaw law);

// Exponent for which the law holds: v-, v+, m+1, w-, w+.
double law_exponent(CovarianceLaw law, int m, int ell, int q);

struct CovarianceSetup {
  int m = 1;
  int ell = 0;
  int q = 0;
  CovarianceLaw law = CovarianceLaw::dminus;
};

// Largest pointwise defect over the sample points, with the law's exponent
// shifted by offset.
double covariance_defect(const CovarianceSetup& setup, const ConformalScale& f,
                         const SpinorField& phi, std::span<const Point> points, double offset = 0.0);

struct ExponentScan {
  std::vector<int> offsets;
  std::vector<double> defects;
  // Defect below tol at offset 0 and above tol at every other offset.
  bool sound = false;
};

ExponentScan exponent_scan(const CovarianceSetup& setup, const ConformalScale& f,
                           const SpinorField& phi, std::span<const Point> points, double tol,
                           int radius = 3);

// Worst defect over every law and admissible grade at the covariance exponents,
// using seeded test spinors.
double conformal_check(int m, int ell, const ConformalScale& f, std::span<const Point> points,
                       std::uint64_t seed = 7);

// Webster connection of the rescaled frame at a point: omega[X](gamma, alpha) is the
// coefficient of E~_gamma in nabla_X E~_alpha for X = E~_b (index b) or conj E~_b (m+b).
std::vector<Mat> rescaled_connection(int m, const ConformalScale& f, std::span<const double> x);

// Components of nabla~_X phi~ for X = E~_b (direction b) or conj E~_b (m+b), 0-based.
Vec rescaled_spinor_derivative(int m, int ell, const ConformalScale& f, const SpinorField& phi,
                               std::span<const double> x, int direction);

}  // namespace crspin::conformal
