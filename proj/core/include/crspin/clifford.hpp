#pragma once

// Fiber algebra: the 2^m-dimensional Clifford module realized on the exterior
// algebra of C^m. E_a acts by wedging with e_a, conj(E_a) by minus contraction.

#include <compare>
#include <cstdint>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "crspin/numeric.hpp"

namespace crspin::clifford {

inline constexpr int kMaxM = 16;

// Exact complex rational.
struct GaussRational {
  using Q = boost::multiprecision::cpp_rational;
  Q re{0};
  Q im{0};

  GaussRational() = default;
  GaussRational(long long r) : re(r) {}  // NOLINT(google-explicit-constructor)
  GaussRational(Q r, Q i) : re(r), im(i) {}

  static GaussRational i() { return {Q{0}, Q{1}}; }

  friend GaussRational operator+(const GaussRational& a, const GaussRational& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend GaussRational operator-(const GaussRational& a, const GaussRational& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend GaussRational operator-(const GaussRational& a) { return {-a.re, -a.im}; }
  friend GaussRational operator*(const GaussRational& a, const GaussRational& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  GaussRational& operator+=(const GaussRational& b) { return *this = *this + b; }
  friend bool operator==(const GaussRational&, const GaussRational&) = default;

  [[nodiscard]] GaussRational conj() const { return {re, -im}; }
  [[nodiscard]] bool is_zero() const { return re == 0 && im == 0; }
  [[nodiscard]] cplx to_complex() const {
    return {re.convert_to<double>(), im.convert_to<double>()};
  }
};

class SpinorIndex {
 public:
  SpinorIndex(int m, std::uint32_t mask);
  static SpinorIndex from_subset(int m, std::span<const int> subset);

  [[nodiscard]] int m() const { return m_; }
  [[nodiscard]] std::uint32_t mask() const { return mask_; }
  [[nodiscard]] int q() const;
  [[nodiscard]] std::vector<int> subset() const;  // strictly increasing, 1-based

  friend auto operator<=>(const SpinorIndex&, const SpinorIndex&) = default;

 private:
  int m_;
  std::uint32_t mask_;
};

// All indices, ordered by mask.
std::vector<SpinorIndex> all_indices(int m);
std::vector<SpinorIndex> indices_of_grade(int m, int q);

enum class GeneratorKind { create, annihilate, real, realJ };

struct CliffordGenerator {
  GeneratorKind kind;
  int alpha;  // 1-based
  int m;
};

template <class Scalar>
class SpinorVector {
 public:
  explicit SpinorVector(int m) : m_(m), coeffs_(std::size_t{1} << m, Scalar{}) {}
  static SpinorVector basis(const SpinorIndex& idx) {
    SpinorVector v(idx.m());
    v.coeffs_[idx.mask()] = Scalar{1};
    return v;
  }

  [[nodiscard]] int m() const { return m_; }
  [[nodiscard]] std::size_t dim() const { return coeffs_.size(); }
  Scalar& operator[](const SpinorIndex& idx) { return coeffs_.at(idx.mask()); }
  const Scalar& operator[](const SpinorIndex& idx) const { return coeffs_.at(idx.mask()); }
  Scalar& at(std::uint32_t mask) { return coeffs_.at(mask); }
  const Scalar& at(std::uint32_t mask) const { return coeffs_.at(mask); }

  friend SpinorVector operator+(SpinorVector a, const SpinorVector& b) {
    a.check(b);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) a.coeffs_[i] = a.coeffs_[i] + b.coeffs_[i];
    return a;
  }
  friend SpinorVector operator-(SpinorVector a, const SpinorVector& b) {
    a.check(b);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) a.coeffs_[i] = a.coeffs_[i] - b.coeffs_[i];
    return a;
  }
  friend SpinorVector operator*(const Scalar& s, SpinorVector a) {
    for (auto& c : a.coeffs_) c = s * c;
    return a;
  }
  friend bool operator==(const SpinorVector&, const SpinorVector&) = default;

  [[nodiscard]] bool is_zero() const {
    for (const auto& c : coeffs_)
      if (!(c == Scalar{})) return false;
    return true;
  }

 private:
  void check(const SpinorVector& b) const;
  int m_;
  std::vector<Scalar> coeffs_;
};

using ExactSpinor = SpinorVector<GaussRational>;
using NumericSpinor = SpinorVector<cplx>;

// Action of a generator on a single basis vector: coefficient and target mask.
// Returns false when the image is zero. Real generators have two terms, so this
// is defined for create/annihilate only.
bool ladder_on_basis(GeneratorKind kind, int alpha, std::uint32_t mask, int& sign,
                     std::uint32_t& target);

template <class Scalar>
SpinorVector<Scalar> apply_generator(const CliffordGenerator& g, const SpinorVector<Scalar>& phi);

// Theta = (i/2) dtheta acting by Clifford multiplication.
template <class Scalar>
SpinorVector<Scalar> theta_apply(const SpinorVector<Scalar>& phi);

template <class Scalar>
SpinorVector<Scalar> project_mu(const SpinorVector<Scalar>& phi, int q);

// Dense matrices on the 2^m fiber, columns indexed by mask.
Mat generator_matrix(const CliffordGenerator& g);
Mat theta_matrix(int m);
Mat grade_projector(int m, int q);

// Clifford action of the real (1,1)-form w with w(E_a, conj E_b) = i R_ab,
// R Hermitian, computed through an orthonormal real frame.
Mat two_form_action(const Mat& r);

}  // namespace crspin::clifford
