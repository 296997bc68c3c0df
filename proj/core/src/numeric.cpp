#include "crspin/numeric.hpp"

#include <stdexcept>

namespace crspin {

long long binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Mat sparse_product(const Mat& a, const Mat& b) {
  const Eigen::SparseMatrix<cplx> sa = a.sparseView();
  const Eigen::SparseMatrix<cplx> sb = b.sparseView();
  return Mat(sa * sb);
}

double norm(const Mat& a) { return a.size() == 0 ? 0.0 : a.norm(); }

bool is_hermitian(const Mat& a, double tol) {
  if (a.rows() != a.cols()) return false;
  return (a - a.adjoint()).norm() <= tol * (1.0 + a.norm());
}

}  // namespace crspin
