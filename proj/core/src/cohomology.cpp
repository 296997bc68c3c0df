#include "crspin/cohomology.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

#include "crspin/clifford.hpp"
#include "crspin/operators.hpp"

namespace crspin::cohomology {

namespace {

using clifford::CliffordGenerator;
using clifford::GeneratorKind;

Mat lifted(const ops::SectionSpace& space, GeneratorKind kind, int a) {
  return space.lift_fiber(clifford::generator_matrix(CliffordGenerator{kind, a, space.m()}));
}

void check_q(int m, int q) {
  if (q < 0 || q > m) throw std::out_of_range("grade q outside 0..m");
}

bool extremal(int m, int q) { return q == 0 || q == m; }

CohomologyTable table_from_kernel(const ops::SectionSpace& space, const Mat& op, double tol,
                                  const std::string& note) {
  CohomologyTable t;
  t.model = models::to_string(space.model().kind);
  t.sector_name = space.model().spectral->label;
  const int sector = space.model().spectral->label_value;
  for (const auto& kc : ops::kernel_dim(space, op, tol)) {
    CohomologyEntry e;
    e.q = kc.q;
    e.sector = sector;
    e.dim = kc.genuine;
    e.method = "spectral";
    e.certified = !extremal(space.m(), kc.q);
    e.spurious = kc.spurious;
    e.note = e.certified ? note : note + "; truncation lower bound";
    t.entries.push_back(e);
  }
  return t;
}

}  // namespace

double metric_scale(FormMetric metric) { return metric == FormMetric::webster ? 2.0 : 1.0; }

Mat dbar(const ops::SectionSpace& space, FormMetric metric) {
  Mat d = Mat::Zero(space.dim(), space.dim());
  for (int a = 1; a <= space.m(); ++a) d += sparse_product(lifted(space, GeneratorKind::create, a), space.nabla_Ebar(a));
  return std::sqrt(metric_scale(metric)) * d;
}

Mat dbar_adjoint(const ops::SectionSpace& space, FormMetric metric) {
  return dbar(space, metric).adjoint();
}

Mat dbar_adjoint_local(const ops::SectionSpace& space) {
  // contraction iota_a is minus the annihilation generator
  Mat d = Mat::Zero(space.dim(), space.dim());
  for (int a = 1; a <= space.m(); ++a)
    d -= sparse_product(-lifted(space, GeneratorKind::annihilate, a), space.nabla_E(a));
  return d;
}

Mat kohn_laplacian(const ops::SectionSpace& space, FormMetric metric) {
  const Mat d = dbar(space, metric);
  const Mat da = d.adjoint();
  return sparse_product(da, d) + sparse_product(d, da);
}

Mat del(const ops::SectionSpace& space, FormMetric metric) {
  const int m = space.m();
  const auto n = space.dim();
  Mat out(m * n, n);
  const double s = std::sqrt(metric_scale(metric));
  for (int a = 1; a <= m; ++a) out.middleRows((a - 1) * n, n) = s * space.nabla_E(a);
  return out;
}

Mat kohn_laplacian_bar(const ops::SectionSpace& space, FormMetric metric) {
  const Mat d = del(space, metric);
  return sparse_product(d.adjoint(), d);
}

double sector_identity_defect(const ops::SectionSpace& space, int q, FormMetric metric) {
  check_q(space.m(), q);
  const Mat diff = kohn_laplacian(space, metric) - kohn_laplacian_bar(space, metric) -
                   metric_scale(metric) * (space.m() - q) * ops::assemble_N(space).matrix;
  const auto idx = space.block(q);
  std::vector<Eigen::Index> keep;
  for (auto i : idx)
    if (!space.top_shell(i)) keep.push_back(i);
  Mat sub(diff.rows(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t j = 0; j < keep.size(); ++j) sub.col(static_cast<Eigen::Index>(j)) = diff.col(keep[j]);
  return norm(sub);
}

long long torus_line_bundle_cohomology(const models::TorusLattice& lattice, int c, int s, int q) {
  models::validate(lattice);
  if (c == 0) throw std::invalid_argument("flux c = 0 gives no contact structure");
  const int m = lattice.m;
  check_q(m, q);
  const long long d = static_cast<long long>(s) * c;
  if (d == 0) return binomial(m, q);
  long long p = 1;
  for (int i = 0; i < m; ++i) p *= std::llabs(d);
  if (d > 0) return q == 0 ? p : 0;
  return q == m ? p : 0;
}

const CohomologyEntry& CohomologyTable::at(int q, int sector) const {
  for (const auto& e : entries)
    if (e.q == q && e.sector == sector) return e;
  throw std::out_of_range("cohomology table has no entry for q=" + std::to_string(q) + ", " +
                          sector_name + "=" + std::to_string(sector));
}

bool operator==(const CohomologyEntry& a, const CohomologyEntry& b) {
  return a.q == b.q && a.sector == b.sector && a.dim == b.dim && a.certified == b.certified;
}

CohomologyTable shift_table(const models::PseudoHermitianModel& model, int q_min, int q_max, int s_min,
                            int s_max, double tol) {
  if (!model.spectral) throw std::invalid_argument(models::to_string(model.kind) + " model has no section space");
  check_q(model.m, q_min);
  check_q(model.m, q_max);
  if (q_min > q_max || s_min > s_max) throw std::invalid_argument("empty range in shift_table");
  CohomologyTable t;
  t.model = models::to_string(model.kind);
  t.sector_name = model.spectral->label;
  for (int s = s_min; s <= s_max; ++s) {
    const ops::SectionSpace space(models::with_sector(model, s));
    const Mat box = kohn_laplacian(space, FormMetric::levi);
    const auto part = table_from_kernel(space, box, tol, "ker box");
    for (const auto& e : part.entries) {
      if (e.q < q_min || e.q > q_max) continue;
      t.entries.push_back(e);
      t.max_identity_defect = std::max(t.max_identity_defect, sector_identity_defect(space, e.q));
    }
  }
  return t;
}

CohomologyTable analytic_table(const models::PseudoHermitianModel& model, int q_min, int q_max, int s_min,
                               int s_max) {
  if (!model.spectral) throw std::invalid_argument(models::to_string(model.kind) + " model has no section space");
  check_q(model.m, q_min);
  check_q(model.m, q_max);
  const auto& sec = *model.spectral;
  CohomologyTable t;
  t.model = models::to_string(model.kind);
  t.sector_name = sec.label;
  for (int s = s_min; s <= s_max; ++s) {
    const int n = models::with_sector(model, s).spectral->n_eigenvalue;
    for (int q = q_min; q <= q_max; ++q) {
      CohomologyEntry e;
      e.q = q;
      e.sector = s;
      // The sector with N = n pairs with the base bundle of class -n|c|[omega].
      e.dim = torus_line_bundle_cohomology(sec.lattice, std::abs(sec.flux), -n, q);
      e.method = "analytic";
      e.certified = !extremal(model.m, q);
      e.note = "base line bundle cohomology";
      t.entries.push_back(e);
    }
  }
  return t;
}

CohomologyTable harmonic_spinor_table(const ops::SectionSpace& space, double tol) {
  return table_from_kernel(space, ops::assemble_kohn_dirac(space).matrix, tol, "ker D_theta");
}

CohomologyTable kohn_table(const ops::SectionSpace& space, double tol) {
  return table_from_kernel(space, kohn_laplacian(space, FormMetric::webster), tol, "ker box");
}

}  // namespace crspin::cohomology
