#include "crspin/section_space.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace crspin::ops {

namespace {

Mat embed_factor(const Mat& a, int alpha, int m, Eigen::Index d) {
  Eigen::Index left = 1;
  for (int i = 1; i < alpha; ++i) left *= d;
  Eigen::Index right = 1;
  for (int i = alpha + 1; i <= m; ++i) right *= d;
  return kron(Mat::Identity(left, left), kron(a, Mat::Identity(right, right)));
}

Eigen::Index ipow(Eigen::Index b, int e) {
  Eigen::Index r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

}  // namespace

std::vector<std::pair<double, double>> factor_momenta(const models::TorusLattice& lattice, int flux,
                                                      int cutoff) {
  models::validate(lattice);
  if (flux == 0) throw std::invalid_argument("flux must be nonzero");
  const double len = std::sqrt(std::numbers::pi * std::abs(flux) / lattice.tau.imag());
  Eigen::Matrix2d w;
  w << len, 0.0, len * lattice.tau.real(), len * lattice.tau.imag();
  const Eigen::Matrix2d b = w.inverse();  // columns b1, b2 with w_i . b_j = delta_ij
  std::vector<std::pair<double, double>> out;
  for (int n1 = -cutoff; n1 <= cutoff; ++n1)
    for (int n2 = -cutoff; n2 <= cutoff; ++n2) {
      const Eigen::Vector2d p = 2.0 * std::numbers::pi * (n1 * b.col(0) + n2 * b.col(1));
      out.emplace_back(p.x(), p.y());
    }
  return out;
}

SectionSpace::SectionSpace(models::PseudoHermitianModel model) : model_(std::move(model)) {
  if (!model_.spectral)
    throw std::invalid_argument(models::to_string(model_.kind) + " model has no section space");
  const auto& sec = *model_.spectral;
  models::validate(sec.truncation);
  const int m = model_.m;
  kappa_ = -static_cast<double>(sec.n_eigenvalue);
  fiber_dim_ = Eigen::Index{1} << m;

  Mat e1;
  Mat eb1;
  if (sec.n_eigenvalue == 0) {
    basis_ = ModeBasis::fourier;
    const auto mom = factor_momenta(sec.lattice, sec.flux, sec.truncation.modes);
    factor_dim_ = static_cast<Eigen::Index>(mom.size());
    e1 = Mat::Zero(factor_dim_, factor_dim_);
    eb1 = Mat::Zero(factor_dim_, factor_dim_);
    for (Eigen::Index i = 0; i < factor_dim_; ++i) {
      const auto [px, py] = mom[static_cast<std::size_t>(i)];
      e1(i, i) = cplx(py, px) / 2.0;
      eb1(i, i) = cplx(-py, px) / 2.0;
    }
    degeneracy_ = 1;
  } else {
    basis_ = ModeBasis::ladder;
    const int levels = sec.truncation.levels;
    factor_dim_ = levels + 1;
    Mat a = Mat::Zero(factor_dim_, factor_dim_);
    for (Eigen::Index n = 1; n < factor_dim_; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    const Mat ad = a.adjoint();
    const double amp = std::sqrt(std::abs(kappa_));
    if (kappa_ > 0) {
      e1 = amp * ad;
      eb1 = -amp * a;
    } else {
      e1 = amp * a;
      eb1 = -amp * ad;
    }
    const long long per = std::llabs(static_cast<long long>(sec.n_eigenvalue) * sec.flux);
    degeneracy_ = 1;
    for (int i = 0; i < m; ++i) degeneracy_ *= per;
  }
  mode_dim_ = ipow(factor_dim_, m);
  if (dim() > 20000) throw std::invalid_argument("section space too large for dense assembly");

  const Mat fiber_id = Mat::Identity(fiber_dim_, fiber_dim_);
  for (int a = 1; a <= m; ++a) {
    nabla_e_.push_back(kron(embed_factor(e1, a, m, factor_dim_), fiber_id));
    nabla_ebar_.push_back(kron(embed_factor(eb1, a, m, factor_dim_), fiber_id));
  }

  top_.assign(static_cast<std::size_t>(dim()), false);
  if (basis_ == ModeBasis::ladder) {
    for (Eigen::Index i = 0; i < dim(); ++i) {
      Eigen::Index mode = i / fiber_dim_;
      for (int a = 0; a < m; ++a) {
        if (mode % factor_dim_ == factor_dim_ - 1) top_[static_cast<std::size_t>(i)] = true;
        mode /= factor_dim_;
      }
    }
  }
}

int SectionSpace::grade(Eigen::Index i) const {
  return std::popcount(static_cast<std::uint32_t>(i % fiber_dim_));
}

std::vector<Eigen::Index> SectionSpace::block(int q) const {
  if (q < 0 || q > m()) throw std::out_of_range("grade q outside 0..m");
  std::vector<Eigen::Index> out;
  for (Eigen::Index i = 0; i < dim(); ++i)
    if (grade(i) == q) out.push_back(i);
  return out;
}

Mat SectionSpace::block_selector(int q) const {
  const auto idx = block(q);
  Mat s = Mat::Zero(dim(), static_cast<Eigen::Index>(idx.size()));
  for (std::size_t j = 0; j < idx.size(); ++j) s(idx[j], static_cast<Eigen::Index>(j)) = 1.0;
  return s;
}

bool SectionSpace::top_shell(Eigen::Index i) const { return top_.at(static_cast<std::size_t>(i)); }

std::vector<Eigen::Index> SectionSpace::interior() const {
  std::vector<Eigen::Index> out;
  for (Eigen::Index i = 0; i < dim(); ++i)
    if (!top_shell(i)) out.push_back(i);
  return out;
}

Mat SectionSpace::interior_selector() const {
  const auto idx = interior();
  Mat s = Mat::Zero(dim(), static_cast<Eigen::Index>(idx.size()));
  for (std::size_t j = 0; j < idx.size(); ++j) s(idx[j], static_cast<Eigen::Index>(j)) = 1.0;
  return s;
}

Mat SectionSpace::top_shell_projector() const {
  Mat p = Mat::Zero(dim(), dim());
  for (Eigen::Index i = 0; i < dim(); ++i)
    if (top_shell(i)) p(i, i) = 1.0;
  return p;
}

const Mat& SectionSpace::nabla_E(int a) const {
  if (a < 1 || a > m()) throw std::out_of_range("direction index outside 1..m");
  return nabla_e_[static_cast<std::size_t>(a - 1)];
}

const Mat& SectionSpace::nabla_Ebar(int a) const {
  if (a < 1 || a > m()) throw std::out_of_range("direction index outside 1..m");
  return nabla_ebar_[static_cast<std::size_t>(a - 1)];
}

Mat SectionSpace::lift_fiber(const Mat& f) const {
  if (f.rows() != fiber_dim_ || f.cols() != fiber_dim_)
    throw std::invalid_argument("fiber operator has wrong size");
  return kron(Mat::Identity(mode_dim_, mode_dim_), f);
}

std::string SectionSpace::mode_label(Eigen::Index mode) const {
  if (mode < 0 || mode >= mode_dim_) throw std::out_of_range("mode index");
  std::vector<Eigen::Index> digits(static_cast<std::size_t>(m()));
  for (int a = m() - 1; a >= 0; --a) {
    digits[static_cast<std::size_t>(a)] = mode % factor_dim_;
    mode /= factor_dim_;
  }
  std::string out = "(";
  for (std::size_t a = 0; a < digits.size(); ++a) {
    if (a > 0) out += ";";
    if (basis_ == ModeBasis::ladder) {
      out += std::to_string(digits[a]);
    } else {
      const auto n = static_cast<Eigen::Index>(2 * model_.spectral->truncation.modes + 1);
      const auto cut = model_.spectral->truncation.modes;
      out += std::to_string(digits[a] / n - cut) + "," + std::to_string(digits[a] % n - cut);
    }
  }
  return out + ")";
}

std::string SectionSpace::sector_label() const {
  const auto& sec = *model_.spectral;
  return sec.label + "=" + std::to_string(sec.label_value);
}

}  // namespace crspin::ops
