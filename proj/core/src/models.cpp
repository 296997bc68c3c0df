#include "crspin/models.hpp"

#include <cmath>
#include <stdexcept>

#include "crspin/clifford.hpp"

namespace crspin::models {

namespace {

// s = C f with f = (E_1..E_m, conj E_1..conj E_m).
Mat frame_change(int m) {
  Mat c = Mat::Zero(2 * m, 2 * m);
  for (int a = 0; a < m; ++a) {
    c(a, a) = 1.0;
    c(a, m + a) = 1.0;
    c(m + a, a) = kI;
    c(m + a, m + a) = -kI;
  }
  return c;
}

std::size_t riemann_index(int n, int a, int b, int c, int d) {
  return ((static_cast<std::size_t>(a) * n + b) * n + c) * n + d;
}

PseudoHermitianModel flat_base(int m, int ell) {
  PseudoHermitianModel model;
  model.m = m;
  model.ell = ell;
  model.tau = Mat::Zero(m, m);
  model.rho = Mat::Zero(m, m);
  model.scalW = 0.0;
  model.levi_bracket = -kI * Mat::Identity(m, m);
  const auto n = static_cast<std::size_t>(2 * m);
  model.riemann.assign(n * n * n * n, 0.0);
  model.flags.torsion_free = true;
  model.flags.regular = true;
  model.flags.transverse_symmetry = true;
  model.flags.pseudo_einstein = true;  // rho = 0 = scal/(4m) dtheta
  return model;
}

}  // namespace

std::string to_string(ModelKind k) {
  switch (k) {
    case ModelKind::heisenberg: return "heisenberg";
    case ModelKind::torus_bundle: return "torus_bundle";
    case ModelKind::sphere: return "sphere";
    case ModelKind::custom: return "custom";
  }
  return "unknown";
}

void validate(const TruncationSpec& t) {
  if (t.modes < 0) throw std::invalid_argument("truncation modes must be >= 0");
  if (t.levels < 1) throw std::invalid_argument("truncation levels must be >= 1");
}

void validate(const TorusLattice& lat) {
  if (lat.m < 1 || lat.m > clifford::kMaxM) throw std::invalid_argument("lattice dimension m out of range");
  if (!(lat.tau.imag() > 0.0) || !std::isfinite(lat.tau.real()))
    throw std::invalid_argument("lattice modulus tau must lie in the upper half plane");
}

double PseudoHermitianModel::riemann_at(int a, int b, int c, int d) const {
  const int n = 2 * m;
  if (riemann.empty()) return 0.0;
  return riemann.at(riemann_index(n, a, b, c, d));
}

PseudoHermitianModel heisenberg_model(int m, int k, const TruncationSpec& truncation, int ell) {
  if (m < 1 || m > clifford::kMaxM) throw std::invalid_argument("heisenberg model needs m >= 1");
  validate(truncation);
  auto model = flat_base(m, ell);
  model.kind = ModelKind::heisenberg;
  SpectralSector sec;
  sec.n_eigenvalue = -k;  // nabla_T = i k on e^{ikt}
  sec.flux = 1;
  sec.lattice = TorusLattice{m, cplx(0.0, 1.0)};
  sec.truncation = truncation;
  sec.label = "k";
  sec.label_value = k;
  model.spectral = sec;
  return model;
}

PseudoHermitianModel cr_alpha_bundle(const TorusLattice& lattice, int c, int s,
                                     const TruncationSpec& truncation, int ell) {
  if (c == 0) throw std::invalid_argument("flux c = 0 gives no contact structure");
  validate(lattice);
  validate(truncation);
  auto model = flat_base(lattice.m, ell);
  model.kind = ModelKind::torus_bundle;
  SpectralSector sec;
  sec.n_eigenvalue = s;
  sec.flux = c;
  sec.lattice = lattice;
  sec.truncation = truncation;
  sec.label = "s";
  sec.label_value = s;
  model.spectral = sec;
  return model;
}

PseudoHermitianModel sphere_model(int m, double scalW, int ell) {
  if (m < 2) throw std::invalid_argument("sphere model needs m >= 2");
  if (m > clifford::kMaxM) throw std::invalid_argument("sphere model: m too large");
  if (!(scalW > 0.0)) throw std::invalid_argument("sphere model needs scalW > 0");
  PseudoHermitianModel model;
  model.kind = ModelKind::sphere;
  model.m = m;
  model.ell = ell;
  model.tau = Mat::Zero(m, m);
  model.rho = (scalW / (4.0 * m)) * Mat::Identity(m, m);
  model.scalW = scalW;
  model.levi_bracket = -kI * Mat::Identity(m, m);
  model.flags.torsion_free = true;
  model.flags.regular = true;
  model.flags.transverse_symmetry = true;
  model.flags.pseudo_einstein = true;

  // Constant holomorphic sectional curvature 4*kappa.
  const double kappa = scalW / (4.0 * m * (m + 1));
  const int n = 2 * m;
  const Mat jm = real_complex_structure(m);
  auto g = [](int i, int j) { return i == j ? 1.0 : 0.0; };
  auto gj = [&](int i, int j) {  // g(J s_i, s_j)
    return jm(j, i).real();
  };
  model.riemann.assign(static_cast<std::size_t>(n) * n * n * n, 0.0);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          // g(R(X,Y)Z, W) for X=s_a, Y=s_b, Z=s_c, W=s_d
          const double v = g(b, c) * g(a, d) - g(a, c) * g(b, d) + gj(b, c) * gj(a, d) -
                           gj(a, c) * gj(b, d) + 2.0 * gj(b, a) * gj(c, d);
          model.riemann[riemann_index(n, a, b, c, d)] = kappa * v;
        }
  return model;
}

PseudoHermitianModel with_sector(const PseudoHermitianModel& model, int sector) {
  if (!model.spectral) throw std::invalid_argument(to_string(model.kind) + " model has no section space");
  auto out = model;
  auto& sec = *out.spectral;
  sec.label_value = sector;
  sec.n_eigenvalue = (sec.label == "k") ? -sector : sector;
  return out;
}

Mat real_two_form(const Mat& r) {
  const int m = static_cast<int>(r.rows());
  const Mat c = frame_change(m);
  Mat w = Mat::Zero(2 * m, 2 * m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      w(a, m + b) = kI * r(a, b);
      w(m + b, a) = -kI * r(a, b);
    }
  return c * w * c.transpose();
}

Mat real_complex_structure(int m) {
  Mat j = Mat::Zero(2 * m, 2 * m);
  for (int a = 0; a < m; ++a) {
    j(m + a, a) = 1.0;
    j(a, m + a) = -1.0;
  }
  return j;
}

Mat real_torsion(const Mat& tau) {
  const int m = static_cast<int>(tau.rows());
  Mat tc = Mat::Zero(2 * m, 2 * m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      tc(m + b, a) = tau(a, b);
      tc(b, m + a) = std::conj(tau(a, b));
    }
  const Mat c = frame_change(m);
  const Mat cinv = c.inverse();
  return cinv.transpose() * tc * c.transpose();
}

double ricci_consistency(const PseudoHermitianModel& model) {
  const int m = model.m;
  const int n = 2 * m;
  const Mat jm = real_complex_structure(m);
  const Mat ws = real_two_form(model.rho);
  const Mat t = real_torsion(model.tau);
  // Ric(s_i, s_j) = rho(s_i, J s_j) + 2(m-1) g(tau s_i, J s_j)
  const Mat ric = ws * jm + 2.0 * (m - 1) * t.transpose() * jm;
  double res = std::abs(model.scalW - ric.trace().real());
  if (!model.riemann.empty()) {
    Mat ric_r = Mat::Zero(n, n);
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int a = 0; a < n; ++a) ric_r(b, c) += model.riemann_at(a, b, c, a);
    res += (ric_r - ric).norm();
  }
  return res;
}

double bianchi_residual(const PseudoHermitianModel& model) {
  const int n = 2 * model.m;
  const Mat dth = real_two_form(Mat::Identity(model.m, model.m));
  const Mat t = real_torsion(model.tau);
  double worst = 0.0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          const double lhs = model.riemann_at(a, b, c, d) + model.riemann_at(b, c, a, d) +
                             model.riemann_at(c, a, b, d);
          const cplx rhs = dth(a, b) * t(d, c) + dth(b, c) * t(d, a) + dth(c, a) * t(d, b);
          worst = std::max(worst, std::abs(lhs - rhs));
        }
  return worst;
}

double torsion_symmetry_residual(const PseudoHermitianModel& model) {
  const Mat t = real_torsion(model.tau);
  const Mat jm = real_complex_structure(model.m);
  double res = (model.tau - model.tau.transpose()).norm();
  res += (t - t.transpose()).norm();     // g(tau X, Y) symmetric
  res += (t * jm + jm * t).norm();       // tau J = -J tau
  res += std::abs(t.trace());
  res += std::abs((t * jm).trace());
  return res;
}

bool pseudo_einstein_check(const PseudoHermitianModel& model, double tol) {
  const Mat target = (model.scalW / (4.0 * model.m)) * Mat::Identity(model.m, model.m);
  return (model.rho - target).norm() <= tol * (1.0 + std::abs(model.scalW));
}

}  // namespace crspin::models
