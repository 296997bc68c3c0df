#include "crspin/conformal.hpp"

#include <bit>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include "crspin/clifford.hpp"
#include "crspin/operators.hpp"

namespace crspin::conformal {

namespace {

using clifford::CliffordGenerator;
using clifford::GeneratorKind;

void check_vector(int m, std::span<const double> v, const char* what) {
  if (static_cast<int>(v.size()) != 2 * m + 1)
    throw std::invalid_argument(std::string(what) + " must have 2m+1 components");
  for (double c : v)
    if (!std::isfinite(c)) throw std::invalid_argument(std::string(what) + " has a non-finite entry");
}

// Derivative along E_b or conj E_b given a coordinate gradient.
// e_b = d/dx_b + y_b d/dt, Je_b = d/dy_b - x_b d/dt.
cplx along(int b, bool conj, const Eigen::VectorXcd& grad, std::span<const double> x) {
  const auto t = grad.size() - 1;
  const cplx e = grad(2 * b) + x[2 * b + 1] * grad(t);
  const cplx je = grad(2 * b + 1) - x[2 * b] * grad(t);
  return conj ? 0.5 * (e + kI * je) : 0.5 * (e - kI * je);
}

struct Jet {
  cplx value;
  Eigen::VectorXcd grad;
};

// Frame data of theta~ = exp(2f) theta at a point.
struct LocalGeometry {
  int m = 1;
  int ell = 0;
  double ef = 1.0;                 // exp(f)
  std::vector<cplx> ef_E, ef_Eb;   // E_b(f), conj E_b(f)
  std::vector<Mat> omega;          // per frame direction, m x m
  std::vector<Mat> spin;           // per frame direction, 2^m x 2^m
  std::vector<Mat> create, annihilate;
};

// Vector in the frame (E, conj E, T): coefficients a, b, t.
struct FrameVector {
  Eigen::VectorXcd a, b;
  cplx t{0.0, 0.0};
};

FrameVector bracket_of_rescaled(int m, int i, int j, const std::vector<cplx>& fe,
                                const std::vector<cplx>& feb, double ef) {
  // [e^{-f}U, e^{-f}W] = e^{-2f}([U,W] - U(f) W + W(f) U)
  FrameVector r{Eigen::VectorXcd::Zero(m), Eigen::VectorXcd::Zero(m), cplx{}};
  if (i < m && j >= m && i == j - m) r.t = -kI;
  if (i >= m && j < m && i - m == j) r.t = kI;
  auto deriv = [&](int k) { return k < m ? fe[static_cast<std::size_t>(k)] : feb[static_cast<std::size_t>(k - m)]; };
  auto add = [&](int k, cplx c) {
    if (k < m)
      r.a(k) += c;
    else
      r.b(k - m) += c;
  };
  add(j, -deriv(i));
  add(i, deriv(j));
  const double s = 1.0 / (ef * ef);
  r.a *= s;
  r.b *= s;
  r.t *= s;
  return r;
}

// Rewrite in the rescaled frame (E~, conj E~, T~): E = e^f E~, T = e^{2f} T~ - V.
FrameVector to_rescaled(const FrameVector& v, const std::vector<cplx>& fe, const std::vector<cplx>& feb,
                        double ef) {
  const auto m = v.a.size();
  FrameVector r{Eigen::VectorXcd(m), Eigen::VectorXcd(m), ef * ef * v.t};
  for (Eigen::Index g = 0; g < m; ++g) {
    const cplx vg = -2.0 * kI * feb[static_cast<std::size_t>(g)];
    const cplx wg = 2.0 * kI * fe[static_cast<std::size_t>(g)];
    r.a(g) = ef * (v.a(g) - v.t * vg);
    r.b(g) = ef * (v.b(g) - v.t * wg);
  }
  return r;
}

std::vector<Mat> connection_from_brackets(int m, const std::vector<cplx>& fe, const std::vector<cplx>& feb,
                                          double ef) {
  std::vector<Mat> omega(static_cast<std::size_t>(2 * m), Mat::Zero(m, m));
  for (int b = 0; b < m; ++b)
    for (int al = 0; al < m; ++al)
      for (int g = 0; g < m; ++g) {
        // omega_al^g(conj E~_b) = E~_g-part of [conj E~_b, E~_al]
        const auto br1 = to_rescaled(bracket_of_rescaled(m, m + b, al, fe, feb, ef), fe, feb, ef);
        omega[static_cast<std::size_t>(m + b)](g, al) = br1.a(g);
        // omega_al^g(E~_b) = -(conj E~_al-part of [E~_b, conj E~_g])
        const auto br2 = to_rescaled(bracket_of_rescaled(m, b, m + g, fe, feb, ef), fe, feb, ef);
        omega[static_cast<std::size_t>(b)](g, al) = -br2.b(al);
      }
  return omega;
}

LocalGeometry local_geometry(int m, int ell, const ConformalScale& f, std::span<const double> x) {
  LocalGeometry geo;
  geo.m = m;
  geo.ell = ell;
  geo.ef = std::exp(f.value(x));
  const Eigen::VectorXcd grad = f.gradient(x).cast<cplx>();
  for (int b = 0; b < m; ++b) {
    geo.ef_E.push_back(along(b, false, grad, x));
    geo.ef_Eb.push_back(along(b, true, grad, x));
  }
  geo.omega = connection_from_brackets(m, geo.ef_E, geo.ef_Eb, geo.ef);

  const int n = 2 * m;
  Mat c = Mat::Zero(n, n);  // s = C f~
  for (int a = 0; a < m; ++a) {
    c(a, a) = 1.0;
    c(a, m + a) = 1.0;
    c(m + a, a) = kI;
    c(m + a, m + a) = -kI;
  }
  Mat gram = Mat::Zero(n, n);
  for (int a = 0; a < m; ++a) {
    gram(a, m + a) = 0.5;
    gram(m + a, a) = 0.5;
  }
  std::vector<Mat> s;
  for (int a = 1; a <= m; ++a) s.push_back(clifford::generator_matrix({GeneratorKind::real, a, m}));
  for (int a = 1; a <= m; ++a) s.push_back(clifford::generator_matrix({GeneratorKind::realJ, a, m}));
  for (int a = 1; a <= m; ++a) {
    geo.create.push_back(clifford::generator_matrix({GeneratorKind::create, a, m}));
    geo.annihilate.push_back(clifford::generator_matrix({GeneratorKind::annihilate, a, m}));
  }
  const auto fib = Eigen::Index{1} << m;
  for (int xi = 0; xi < n; ++xi) {
    const int xbar = xi < m ? xi + m : xi - m;
    Mat big = Mat::Zero(n, n);  // nabla_X f~_A = sum_B big(B, A) f~_B
    big.topLeftCorner(m, m) = geo.omega[static_cast<std::size_t>(xi)];
    big.bottomRightCorner(m, m) = geo.omega[static_cast<std::size_t>(xbar)].conjugate();
    const Mat gam = c * big.transpose() * gram * c.transpose();  // g(nabla_X s_j, s_k)
    Mat sp = Mat::Zero(fib, fib);
    for (int j = 0; j < n; ++j)
      for (int k = j + 1; k < n; ++k) sp += 0.5 * gam(j, k) * s[static_cast<std::size_t>(j)] * s[static_cast<std::size_t>(k)];
    const cplx a_conn = (ell / (m + 2.0)) * geo.omega[static_cast<std::size_t>(xi)].trace();
    sp += 0.5 * a_conn * Mat::Identity(fib, fib);
    geo.spin.push_back(std::move(sp));
  }
  return geo;
}

// Components of exp(-v f) phi with coordinate gradients.
std::vector<Jet> field_jets(const SpinorField& phi, const ConformalScale& f, double v,
                            std::span<const double> x) {
  const double fv = f.value(x);
  const Eigen::VectorXd fg = f.gradient(x);
  const double w = std::exp(-v * fv);
  std::vector<Jet> out;
  for (const auto& comp : phi.components) {
    Jet j{cplx{}, Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(x.size()))};
    for (const auto& term : comp) {
      double arg = term.phase;
      for (std::size_t i = 0; i < x.size(); ++i) arg += term.wavevector[i] * x[i];
      const cplx val = term.amplitude * std::exp(kI * arg);
      j.value += val;
      for (std::size_t i = 0; i < x.size(); ++i)
        j.grad(static_cast<Eigen::Index>(i)) += kI * term.wavevector[i] * val;
    }
    Jet r{w * j.value, w * (j.grad - v * j.value * fg.cast<cplx>())};
    out.push_back(std::move(r));
  }
  return out;
}

Vec values(const std::vector<Jet>& jets) {
  Vec v(static_cast<Eigen::Index>(jets.size()));
  for (std::size_t i = 0; i < jets.size(); ++i) v(static_cast<Eigen::Index>(i)) = jets[i].value;
  return v;
}

// nabla_X psi for X = E~_b (xi = b) or conj E~_b (xi = m + b).
Vec covariant(const LocalGeometry& geo, const std::vector<Jet>& psi, int xi, std::span<const double> x) {
  const int m = geo.m;
  const bool conj = xi >= m;
  const int b = conj ? xi - m : xi;
  Vec out(static_cast<Eigen::Index>(psi.size()));
  for (std::size_t i = 0; i < psi.size(); ++i)
    out(static_cast<Eigen::Index>(i)) = along(b, conj, psi[i].grad, x) / geo.ef;
  return out + geo.spin[static_cast<std::size_t>(xi)] * values(psi);
}

Vec dminus(const LocalGeometry& geo, const std::vector<Jet>& psi, std::span<const double> x) {
  Vec out = Vec::Zero(static_cast<Eigen::Index>(psi.size()));
  for (int a = 0; a < geo.m; ++a)
    out += 2.0 * geo.annihilate[static_cast<std::size_t>(a)] * covariant(geo, psi, a, x);
  return out;
}

Vec dplus(const LocalGeometry& geo, const std::vector<Jet>& psi, std::span<const double> x) {
  Vec out = Vec::Zero(static_cast<Eigen::Index>(psi.size()));
  for (int a = 0; a < geo.m; ++a)
    out += 2.0 * geo.create[static_cast<std::size_t>(a)] * covariant(geo, psi, geo.m + a, x);
  return out;
}

// Evaluates the operator of the law on exp(-v f) phi with the geometry of f.
// For twistor laws the m frame components are concatenated, with X = E_b or
// conj E_b of the original structure.
Vec evaluate(CovarianceLaw law, int q, const LocalGeometry& geo, const std::vector<Jet>& psi,
             std::span<const double> x) {
  const int m = geo.m;
  switch (law) {
    case CovarianceLaw::dminus: return dminus(geo, psi, x);
    case CovarianceLaw::dplus: return dplus(geo, psi, x);
    case CovarianceLaw::kohn_dirac: return dminus(geo, psi, x) + dplus(geo, psi, x);
    case CovarianceLaw::twistor10:
    case CovarianceLaw::twistor01: {
      const bool ten = law == CovarianceLaw::twistor10;
      const Vec d = ten ? dminus(geo, psi, x) : dplus(geo, psi, x);
      const double coef = ten ? ops::twistor_b(m, q) : ops::twistor_a(q);
      const auto fib = static_cast<Eigen::Index>(psi.size());
      Vec out(m * fib);
      for (int b = 0; b < m; ++b) {
        const Mat& gen = ten ? geo.create[static_cast<std::size_t>(b)] : geo.annihilate[static_cast<std::size_t>(b)];
        // E_b = e^f E~_b both as derivation and in Clifford multiplication.
        out.segment(b * fib, fib) =
            geo.ef * (covariant(geo, psi, ten ? b : m + b, x) + coef * gen * d);
      }
      return out;
    }
  }
  throw std::logic_error("unknown covariance law");
}

// Exponent of exp(-(.) f) on the right-hand side for a left exponent v.
double rhs_exponent(CovarianceLaw law, double v) {
  switch (law) {
    case CovarianceLaw::twistor10:
    case CovarianceLaw::twistor01: return v;
    default: return v + 1.0;
  }
}

}  // namespace

ConformalScale::ConformalScale(int m, std::vector<TrigTerm> terms) : m_(m), terms_(std::move(terms)) {
  if (m < 1 || m > clifford::kMaxM) throw std::invalid_argument("conformal scale: m out of range");
  for (const auto& t : terms_) {
    check_vector(m, t.wavevector, "conformal scale wavevector");
    if (!std::isfinite(t.amplitude) || !std::isfinite(t.phase))
      throw std::invalid_argument("conformal scale: non-finite trigonometric coefficient");
  }
}

ConformalScale ConformalScale::cosine(int m, double amplitude, int coordinate) {
  if (coordinate < 0 || coordinate > 2 * m) throw std::out_of_range("conformal scale: coordinate index");
  std::vector<double> k(static_cast<std::size_t>(2 * m + 1), 0.0);
  k[static_cast<std::size_t>(coordinate)] = 1.0;
  return {m, {TrigTerm{amplitude, k, 0.0}}};
}

double ConformalScale::value(std::span<const double> x) const {
  check_vector(m_, x, "sample point");
  double v = 0.0;
  for (const auto& t : terms_) {
    double arg = t.phase;
    for (std::size_t i = 0; i < x.size(); ++i) arg += t.wavevector[i] * x[i];
    v += t.amplitude * std::cos(arg);
  }
  return v;
}

Eigen::VectorXd ConformalScale::gradient(std::span<const double> x) const {
  check_vector(m_, x, "sample point");
  Eigen::VectorXd g = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(x.size()));
  for (const auto& t : terms_) {
    double arg = t.phase;
    for (std::size_t i = 0; i < x.size(); ++i) arg += t.wavevector[i] * x[i];
    const double s = -t.amplitude * std::sin(arg);
    for (std::size_t i = 0; i < x.size(); ++i) g(static_cast<Eigen::Index>(i)) += s * t.wavevector[i];
  }
  return g;
}

SpinorField random_spinor_field(int m, int q, std::uint64_t seed, int terms_per_component) {
  if (q < 0 || q > m) throw std::out_of_range("grade q outside 0..m");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  SpinorField phi;
  phi.m = m;
  phi.components.resize(std::size_t{1} << m);
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << m); ++mask) {
    if (std::popcount(mask) != q) continue;
    for (int t = 0; t < terms_per_component; ++t) {
      FieldTerm term{cplx(u(rng), u(rng)), {}, u(rng)};
      for (int i = 0; i <= 2 * m; ++i) term.wavevector.push_back(u(rng));
      phi.components[mask].push_back(std::move(term));
    }
  }
  return phi;
}

std::vector<Point> sample_points(int m, int count, std::uint64_t seed, double radius) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-radius, radius);
  std::vector<Point> out(static_cast<std::size_t>(count));
  for (auto& p : out)
    for (int i = 0; i <= 2 * m; ++i) p.push_back(u(rng));
  return out;
}

const char* to_string(CovarianceLaw law) {
  switch (law) {
    case CovarianceLaw::dminus: return "D-";
    case CovarianceLaw::dplus: return "D+";
    case CovarianceLaw::kohn_dirac: return "D_theta";
    case CovarianceLaw::twistor10: return "P10";
    case CovarianceLaw::twistor01: return "P01";
  }
  return "?";
}

double law_exponent(CovarianceLaw law, int m, int ell, int q) {
  if (q < 0 || q > m) throw std::out_of_range("grade q outside 0..m");
  const double mu = m - 2 * q;
  switch (law) {
    case CovarianceLaw::dminus: return m + 1 + (mu + ell) / 2.0;
    case CovarianceLaw::dplus: return m + 1 - (mu + ell) / 2.0;
    case CovarianceLaw::kohn_dirac:
      if (mu != -ell) throw std::invalid_argument("D_theta is covariant only on the block mu = -l");
      return m + 1.0;
    case CovarianceLaw::twistor10: return (ell - mu) / 2.0 - 1.0;
    case CovarianceLaw::twistor01: return (mu - ell) / 2.0 - 1.0;
  }
  throw std::logic_error("unknown covariance law");
}

double covariance_defect(const CovarianceSetup& setup, const ConformalScale& f, const SpinorField& phi,
                         std::span<const Point> points, double offset) {
  const int m = setup.m;
  if (f.m() != m || phi.m != m) throw std::invalid_argument("covariance_defect: mismatched m");
  if (phi.components.size() != (std::size_t{1} << m))
    throw std::invalid_argument("spinor field must have 2^m components");
  for (std::uint32_t mask = 0; mask < phi.components.size(); ++mask)
    if (std::popcount(mask) != setup.q && !phi.components[mask].empty())
      throw std::invalid_argument("spinor field has components outside grade q");
  for (const auto& comp : phi.components)
    for (const auto& t : comp) check_vector(m, t.wavevector, "spinor field wavevector");

  const double v = law_exponent(setup.law, m, setup.ell, setup.q) + offset;
  const auto flat = ConformalScale::zero(m);
  double worst = 0.0;
  for (const auto& x : points) {
    const auto geo = local_geometry(m, setup.ell, f, x);
    const auto geo0 = local_geometry(m, setup.ell, flat, x);
    const Vec lhs = evaluate(setup.law, setup.q, geo, field_jets(phi, f, v, x), x);
    const Vec rhs = std::exp(-rhs_exponent(setup.law, v) * f.value(x)) *
                    evaluate(setup.law, setup.q, geo0, field_jets(phi, flat, 0.0, x), x);
    worst = std::max(worst, (lhs - rhs).norm());
  }
  return worst;
}

ExponentScan exponent_scan(const CovarianceSetup& setup, const ConformalScale& f, const SpinorField& phi,
                           std::span<const Point> points, double tol, int radius) {
  ExponentScan scan;
  scan.sound = true;
  for (int off = -radius; off <= radius; ++off) {
    const double d = covariance_defect(setup, f, phi, points, off);
    scan.offsets.push_back(off);
    scan.defects.push_back(d);
    if (off == 0 ? !(d <= tol) : !(d > tol)) scan.sound = false;
  }
  return scan;
}

double conformal_check(int m, int ell, const ConformalScale& f, std::span<const Point> points,
                       std::uint64_t seed) {
  double worst = 0.0;
  for (int q = 0; q <= m; ++q) {
    const auto phi = random_spinor_field(m, q, seed + static_cast<std::uint64_t>(q));
    for (auto law : {CovarianceLaw::dminus, CovarianceLaw::dplus, CovarianceLaw::twistor10,
                     CovarianceLaw::twistor01})
      worst = std::max(worst, covariance_defect({m, ell, q, law}, f, phi, points));
    if (m - 2 * q == -ell)
      worst = std::max(worst, covariance_defect({m, ell, q, CovarianceLaw::kohn_dirac}, f, phi, points));
  }
  return worst;
}

std::vector<Mat> rescaled_connection(int m, const ConformalScale& f, std::span<const double> x) {
  return local_geometry(m, 0, f, x).omega;
}

Vec rescaled_spinor_derivative(int m, int ell, const ConformalScale& f, const SpinorField& phi,
                               std::span<const double> x, int direction) {
  if (direction < 0 || direction >= 2 * m) throw std::out_of_range("frame direction outside 0..2m-1");
  if (phi.m != m || phi.components.size() != (std::size_t{1} << m))
    throw std::invalid_argument("spinor field does not match m");
  const auto geo = local_geometry(m, ell, f, x);
  return covariant(geo, field_jets(phi, ConformalScale::zero(m), 0.0, x), direction, x);
}

}  // namespace crspin::conformal
