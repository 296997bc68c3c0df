#include "crspin/clifford.hpp"

#include <bit>
#include <stdexcept>
#include <string>

namespace crspin::clifford {

namespace {

void check_m(int m) {
  if (m < 1 || m > kMaxM) throw std::invalid_argument("CR dimension m out of range: " + std::to_string(m));
}

void check_generator(const CliffordGenerator& g, int m) {
  if (g.m != m)
    throw std::invalid_argument("generator built for m=" + std::to_string(g.m) +
                                " applied to spinor with m=" + std::to_string(m));
  if (g.alpha < 1 || g.alpha > m)
    throw std::out_of_range("generator index " + std::to_string(g.alpha) + " outside 1.." +
                            std::to_string(m));
}

template <class Scalar>
Scalar from_sign(int s) {
  return Scalar{static_cast<long long>(s)};
}
template <>
cplx from_sign<cplx>(int s) {
  return cplx(s, 0.0);
}

template <class Scalar>
Scalar imag_unit();
template <>
GaussRational imag_unit<GaussRational>() {
  return GaussRational::i();
}
template <>
cplx imag_unit<cplx>() {
  return kI;
}

template <class Scalar>
SpinorVector<Scalar> apply_ladder(GeneratorKind kind, int alpha, const SpinorVector<Scalar>& phi) {
  SpinorVector<Scalar> out(phi.m());
  for (std::uint32_t mask = 0; mask < phi.dim(); ++mask) {
    const Scalar& c = phi.at(mask);
    if (c == Scalar{}) continue;
    int sign = 0;
    std::uint32_t target = 0;
    if (ladder_on_basis(kind, alpha, mask, sign, target))
      out.at(target) = out.at(target) + from_sign<Scalar>(sign) * c;
  }
  return out;
}

}  // namespace

SpinorIndex::SpinorIndex(int m, std::uint32_t mask) : m_(m), mask_(mask) {
  check_m(m);
  if (mask >= (std::uint32_t{1} << m)) throw std::out_of_range("spinor mask outside 2^m");
}

SpinorIndex SpinorIndex::from_subset(int m, std::span<const int> subset) {
  std::uint32_t mask = 0;
  int prev = 0;
  for (int a : subset) {
    if (a <= prev || a > m) throw std::invalid_argument("subset must be strictly increasing within 1..m");
    mask |= std::uint32_t{1} << (a - 1);
    prev = a;
  }
  return {m, mask};
}

int SpinorIndex::q() const { return std::popcount(mask_); }

std::vector<int> SpinorIndex::subset() const {
  std::vector<int> out;
  for (int a = 1; a <= m_; ++a)
    if (mask_ & (std::uint32_t{1} << (a - 1))) out.push_back(a);
  return out;
}

std::vector<SpinorIndex> all_indices(int m) {
  check_m(m);
  std::vector<SpinorIndex> out;
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << m); ++mask) out.emplace_back(m, mask);
  return out;
}

std::vector<SpinorIndex> indices_of_grade(int m, int q) {
  if (q < 0 || q > m) throw std::out_of_range("grade q outside 0..m");
  std::vector<SpinorIndex> out;
  for (const auto& idx : all_indices(m))
    if (idx.q() == q) out.push_back(idx);
  return out;
}

template <class Scalar>
void SpinorVector<Scalar>::check(const SpinorVector& b) const {
  if (b.m_ != m_) throw std::invalid_argument("spinor dimension mismatch");
}

bool ladder_on_basis(GeneratorKind kind, int alpha, std::uint32_t mask, int& sign,
                     std::uint32_t& target) {
  const std::uint32_t bit = std::uint32_t{1} << (alpha - 1);
  // Koszul sign from the elements of the subset that precede alpha.
  const int before = std::popcount(mask & (bit - 1));
  const int koszul = (before % 2 == 0) ? 1 : -1;
  switch (kind) {
    case GeneratorKind::create:
      if (mask & bit) return false;
      sign = koszul;
      target = mask | bit;
      return true;
    case GeneratorKind::annihilate:
      if (!(mask & bit)) return false;
      sign = -koszul;
      target = mask & ~bit;
      return true;
    default:
      throw std::logic_error("ladder_on_basis expects create or annihilate");
  }
}

template <class Scalar>
SpinorVector<Scalar> apply_generator(const CliffordGenerator& g, const SpinorVector<Scalar>& phi) {
  check_generator(g, phi.m());
  switch (g.kind) {
    case GeneratorKind::create:
    case GeneratorKind::annihilate:
      return apply_ladder(g.kind, g.alpha, phi);
    case GeneratorKind::real:
      return apply_ladder(GeneratorKind::create, g.alpha, phi) +
             apply_ladder(GeneratorKind::annihilate, g.alpha, phi);
    case GeneratorKind::realJ:
      return imag_unit<Scalar>() * (apply_ladder(GeneratorKind::create, g.alpha, phi) -
                                     apply_ladder(GeneratorKind::annihilate, g.alpha, phi));
  }
  throw std::logic_error("unknown generator kind");
}

template <class Scalar>
SpinorVector<Scalar> theta_apply(const SpinorVector<Scalar>& phi) {
  // dtheta(e_a, J e_a) = 2, so (i/2) dtheta acts as i * sum_a e_a . Je_a.
  const int m = phi.m();
  SpinorVector<Scalar> out(m);
  for (int a = 1; a <= m; ++a) {
    auto je = apply_generator(CliffordGenerator{GeneratorKind::realJ, a, m}, phi);
    out = out + apply_generator(CliffordGenerator{GeneratorKind::real, a, m}, je);
  }
  return imag_unit<Scalar>() * out;
}

template <class Scalar>
SpinorVector<Scalar> project_mu(const SpinorVector<Scalar>& phi, int q) {
  if (q < 0 || q > phi.m()) throw std::out_of_range("grade q outside 0..m");
  SpinorVector<Scalar> out(phi.m());
  for (std::uint32_t mask = 0; mask < phi.dim(); ++mask)
    if (std::popcount(mask) == q) out.at(mask) = phi.at(mask);
  return out;
}

template class SpinorVector<GaussRational>;
template class SpinorVector<cplx>;
template ExactSpinor apply_generator(const CliffordGenerator&, const ExactSpinor&);
template NumericSpinor apply_generator(const CliffordGenerator&, const NumericSpinor&);
template ExactSpinor theta_apply(const ExactSpinor&);
template NumericSpinor theta_apply(const NumericSpinor&);
template ExactSpinor project_mu(const ExactSpinor&, int);
template NumericSpinor project_mu(const NumericSpinor&, int);

Mat generator_matrix(const CliffordGenerator& g) {
  check_m(g.m);
  const auto n = static_cast<Eigen::Index>(std::size_t{1} << g.m);
  Mat out = Mat::Zero(n, n);
  for (std::uint32_t mask = 0; mask < static_cast<std::uint32_t>(n); ++mask) {
    auto col = apply_generator(g, NumericSpinor::basis(SpinorIndex(g.m, mask)));
    for (std::uint32_t r = 0; r < static_cast<std::uint32_t>(n); ++r) out(r, mask) = col.at(r);
  }
  return out;
}

Mat theta_matrix(int m) {
  check_m(m);
  const auto n = static_cast<Eigen::Index>(std::size_t{1} << m);
  Mat out = Mat::Zero(n, n);
  for (std::uint32_t mask = 0; mask < static_cast<std::uint32_t>(n); ++mask) {
    auto col = theta_apply(NumericSpinor::basis(SpinorIndex(m, mask)));
    for (std::uint32_t r = 0; r < static_cast<std::uint32_t>(n); ++r) out(r, mask) = col.at(r);
  }
  return out;
}

Mat grade_projector(int m, int q) {
  check_m(m);
  const auto n = static_cast<Eigen::Index>(std::size_t{1} << m);
  Mat p = Mat::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    if (std::popcount(static_cast<std::uint32_t>(i)) == q) p(i, i) = 1.0;
  return p;
}

Mat two_form_action(const Mat& r) {
  const int m = static_cast<int>(r.rows());
  check_m(m);
  if (r.cols() != m) throw std::invalid_argument("two-form matrix must be m x m");
  // Real frame s_a = E_a + conj E_a, s_{m+a} = i(E_a - conj E_a), written in the
  // complex basis (E_1..E_m, conj E_1..conj E_m).
  const int n = 2 * m;
  Mat c = Mat::Zero(n, n);
  for (int a = 0; a < m; ++a) {
    c(a, a) = 1.0;
    c(a, m + a) = 1.0;
    c(m + a, a) = kI;
    c(m + a, m + a) = -kI;
  }
  Mat w = Mat::Zero(n, n);  // w(f_A, f_B)
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      w(a, m + b) = kI * r(a, b);
      w(m + b, a) = -kI * r(a, b);
    }
  const Mat ws = c * w * c.transpose();
  std::vector<Mat> s;
  for (int a = 1; a <= m; ++a) s.push_back(generator_matrix({GeneratorKind::real, a, m}));
  for (int a = 1; a <= m; ++a) s.push_back(generator_matrix({GeneratorKind::realJ, a, m}));
  const auto dim = s.front().rows();
  Mat out = Mat::Zero(dim, dim);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) out += ws(i, j) * s[i] * s[j];
  return out;
}

}  // namespace crspin::clifford
