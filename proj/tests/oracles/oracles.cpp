#include "oracles.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>

namespace oracle {

namespace {

constexpr cplx kI{0.0, 1.0};

// Wedge (create) or minus contraction (annihilate) with e_c on Lambda C^m, c 0-based.
Mat exterior(int m, int c, bool create) {
  const int dim = 1 << m;
  Mat out = Mat::Zero(dim, dim);
  for (int mask = 0; mask < dim; ++mask) {
    const bool has = (mask >> c) & 1;
    const double sign = (std::popcount(static_cast<unsigned>(mask & ((1 << c) - 1))) % 2) ? -1.0 : 1.0;
    if (create && !has) out(mask | (1 << c), mask) = sign;
    if (!create && has) out(mask & ~(1 << c), mask) = -sign;
  }
  return out;
}

Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// Derivative along E_b (or conj E_b) of a function with coordinate gradient g.
cplx frame_derivative(int m, int b, bool conj, const Vec& g, const crspin::conformal::Point& x) {
  const cplx dx = g(2 * b) + x[static_cast<std::size_t>(2 * b + 1)] * g(2 * m);
  const cplx dy = g(2 * b + 1) - x[static_cast<std::size_t>(2 * b)] * g(2 * m);
  return 0.5 * (conj ? dx + kI * dy : dx - kI * dy);
}

}  // namespace

std::vector<double> flat_dirac_square_spectrum(const crspin::models::TorusLattice& lattice, int flux,
                                               int cutoff) {
  const double side = std::sqrt(std::numbers::pi * std::abs(flux) / lattice.tau.imag());
  // w1 = side, w2 = side * tau; reciprocal vectors by the 2d cross-product formula
  const double w1x = side;
  const double w1y = 0.0;
  const double w2x = side * lattice.tau.real();
  const double w2y = side * lattice.tau.imag();
  const double area = w1x * w2y - w1y * w2x;
  const double k = 2.0 * std::numbers::pi / area;
  std::vector<double> factor;
  for (int n1 = -cutoff; n1 <= cutoff; ++n1)
    for (int n2 = -cutoff; n2 <= cutoff; ++n2) {
      const double px = k * (n1 * w2y - n2 * w1y);
      const double py = k * (-n1 * w2x + n2 * w1x);
      factor.push_back(px * px + py * py);
    }
  std::vector<double> sums{0.0};
  for (int a = 0; a < lattice.m; ++a) {
    std::vector<double> next;
    for (double s : sums)
      for (double p : factor) next.push_back(s + p);
    sums = std::move(next);
  }
  std::vector<double> out;
  for (double s : sums)
    for (int r = 0; r < (1 << lattice.m); ++r) out.push_back(s);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<long long> ladder_kohn_kernel(int m, int kappa, int flux, int levels) {
  const int n = levels + 1;
  Mat a = Mat::Zero(n, n);
  for (int j = 1; j < n; ++j) a(j - 1, j) = std::sqrt(static_cast<double>(j));
  const Mat lower = -std::sqrt(std::abs(static_cast<double>(kappa))) * (kappa > 0 ? a : Mat(a.adjoint()));
  const int fib = 1 << m;
  Eigen::Index modes = 1;
  for (int i = 0; i < m; ++i) modes *= n;
  const Eigen::Index dim = modes * fib;

  Mat dbar = Mat::Zero(dim, dim);
  for (int c = 0; c < m; ++c) {
    Mat op = Mat::Identity(1, 1);
    for (int d = 0; d < m; ++d) op = kron(op, d == c ? lower : Mat(Mat::Identity(n, n)));
    dbar += kron(op, exterior(m, c, true));
  }
  Mat stacked(2 * dim, dim);
  stacked << dbar, dbar.adjoint();

  std::vector<long long> out;
  long long copies = 1;
  for (int i = 0; i < m; ++i) copies *= std::abs(static_cast<long long>(kappa) * flux);
  for (int q = 0; q <= m; ++q) {
    std::vector<Eigen::Index> cols;
    std::vector<Eigen::Index> top;
    for (Eigen::Index i = 0; i < dim; ++i) {
      if (std::popcount(static_cast<unsigned>(i % fib)) != q) continue;
      cols.push_back(i);
      Eigen::Index mode = i / fib;
      bool at_top = false;
      for (int d = 0; d < m; ++d, mode /= n) at_top = at_top || (mode % n == n - 1);
      if (at_top) top.push_back(static_cast<Eigen::Index>(cols.size() - 1));
    }
    // null space of [dbar; dbar^*] intersected with the interior: add the top-shell coordinates as rows
    Mat sys = Mat::Zero(2 * dim + static_cast<Eigen::Index>(top.size()), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t j = 0; j < cols.size(); ++j) sys.block(0, static_cast<Eigen::Index>(j), 2 * dim, 1) = stacked.col(cols[j]);
    for (std::size_t r = 0; r < top.size(); ++r) sys(2 * dim + static_cast<Eigen::Index>(r), top[r]) = 1.0;
    const Eigen::JacobiSVD<Mat> svd(sys);
    const auto& sv = svd.singularValues();
    long long null = 0;
    for (Eigen::Index i = 0; i < sys.cols(); ++i)
      if (i >= sv.size() || sv(i) < 1e-8) ++null;
    out.push_back(null * copies);
  }
  return out;
}

int lattice_lll_count(int flux, int n) {
  const double phi = 2.0 * std::numbers::pi * flux / (n * n);
  const int dim = n * n;
  auto idx = [n](int x, int y) { return ((x % n + n) % n) * n + ((y % n + n) % n); };
  Mat h = Mat::Zero(dim, dim);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      h(idx(x, y), idx(x, y)) = 4.0;
      // vertical links carry phi * x; the horizontal wrap link fixes the seam
      const cplx up = std::exp(kI * (phi * x));
      const cplx right = (x == n - 1) ? std::exp(-kI * (phi * n * y)) : cplx{1.0};
      h(idx(x, y + 1), idx(x, y)) -= up;
      h(idx(x, y), idx(x, y + 1)) -= std::conj(up);
      h(idx(x + 1, y), idx(x, y)) -= right;
      h(idx(x, y), idx(x + 1, y)) -= std::conj(right);
    }
  const Eigen::SelfAdjointEigenSolver<Mat> es(h, Eigen::EigenvaluesOnly);
  int count = 0;
  for (Eigen::Index i = 0; i < dim; ++i)
    if (es.eigenvalues()(i) < 2.0 * phi) ++count;
  return count;
}

Vec spinor_rule(int m, int ell, const crspin::conformal::ConformalScale& f,
                const crspin::conformal::SpinorField& phi, const crspin::conformal::Point& x, int direction) {
  const int fib = 1 << m;
  const auto nx = static_cast<Eigen::Index>(x.size());
  Vec val = Vec::Zero(fib);
  std::vector<Vec> grad(static_cast<std::size_t>(fib), Vec::Zero(nx));
  for (int k = 0; k < fib; ++k)
    for (const auto& t : phi.components[static_cast<std::size_t>(k)]) {
      double arg = t.phase;
      for (Eigen::Index i = 0; i < nx; ++i) arg += t.wavevector[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i)];
      const cplx v = t.amplitude * std::exp(kI * arg);
      val(k) += v;
      for (Eigen::Index i = 0; i < nx; ++i) grad[static_cast<std::size_t>(k)](i) += kI * t.wavevector[static_cast<std::size_t>(i)] * v;
    }
  const Vec fg = f.gradient(x).cast<cplx>();
  Mat theta = Mat::Zero(fib, fib);
  for (int k = 0; k < fib; ++k) theta(k, k) = m - 2.0 * std::popcount(static_cast<unsigned>(k));
  // grad01 f = sum 2 E_c(f) conj E_c, grad10 f = sum 2 conj E_c(f) E_c
  Mat g01 = Mat::Zero(fib, fib);
  Mat g10 = Mat::Zero(fib, fib);
  for (int c = 0; c < m; ++c) {
    g01 += 2.0 * frame_derivative(m, c, false, fg, x) * exterior(m, c, false);
    g10 += 2.0 * frame_derivative(m, c, true, fg, x) * exterior(m, c, true);
  }
  const bool conj = direction >= m;
  const int b = conj ? direction - m : direction;
  Vec dphi(fib);
  for (int k = 0; k < fib; ++k) dphi(k) = frame_derivative(m, b, conj, grad[static_cast<std::size_t>(k)], x);
  const cplx xf = frame_derivative(m, b, conj, fg, x);
  const Mat cx = exterior(m, b, !conj);
  if (conj) return dphi - cx * g10 * val - 0.5 * (ell + 2) * xf * val + 0.5 * xf * (theta * val);
  return dphi - cx * g01 * val + 0.5 * (ell - 2) * xf * val - 0.5 * xf * (theta * val);
}

}  // namespace oracle
