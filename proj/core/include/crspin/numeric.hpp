#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

namespace crspin {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline constexpr cplx kI{0.0, 1.0};

// Pinned tolerances. Algebraic identities, two-assembly identities, spectral
// matches, conformal pointwise checks, and the top-shell amplitude threshold.
struct Tolerances {
  double algebraic = 1e-12;
  double assembly = 1e-10;
  double spectral = 1e-8;
  double conformal = 1e-9;
  double shell = 1e-8;
};

long long binomial(int n, int k);

Mat kron(const Mat& a, const Mat& b);

// a * b through sparse storage; exact (only exact zeros are dropped). Operator
// matrices have a handful of nonzeros per column, so this avoids dense O(n^3).
Mat sparse_product(const Mat& a, const Mat& b);

// Frobenius norm; an upper bound for the operator norm.
double norm(const Mat& a);

bool is_hermitian(const Mat& a, double tol);

}  // namespace crspin
