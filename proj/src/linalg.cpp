#include "ncg/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ncg/errors.hpp"

namespace ncg::linalg {

void ToleranceConfig::validate() const {
  if (!(eig_tol > 0) || !(rank_tol > 0) || !(lattice_tol > 0))
    throw DomainError("tolerances must be strictly positive");
  if (rank_tol < eig_tol) throw DomainError("rank_tol must be at least eig_tol");
}

const ToleranceConfig& default_tolerances() {
  static const ToleranceConfig tol{};
  return tol;
}

void require_finite(const CMatrix& m, const char* what) {
  if (!m.allFinite()) throw DomainError(std::string(what) + ": matrix has non-finite entries");
}

void require_same_shape(const CMatrix& a, const CMatrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DomainError(std::string(what) + ": dimension mismatch (" + std::to_string(a.rows()) + "x" +
                      std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                      std::to_string(b.cols()) + ")");
}

double op_norm(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<CMatrix> svd(m);
  return svd.singularValues()(0);
}

double hermitian_defect(const CMatrix& m) { return op_norm(m - m.adjoint()); }

EigenSystem hermitian_eig(const CMatrix& a, const ToleranceConfig& tol) {
  if (a.rows() != a.cols()) throw DomainError("hermitian_eig: matrix is not square");
  require_finite(a, "hermitian_eig");
  const double scale = std::max(1.0, op_norm(a));
  const double defect = hermitian_defect(a);
  if (defect > tol.rank_tol * scale)
    throw DomainError("hermitian_eig: matrix is not Hermitian (defect " + std::to_string(defect) + ")");
  const CMatrix h = (a + a.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(h);
  if (solver.info() != Eigen::Success) throw DomainError("hermitian_eig: solver did not converge");
  EigenSystem out{solver.eigenvalues(), solver.eigenvectors()};
  for (Eigen::Index c = 0; c < out.vectors.cols(); ++c) {
    for (Eigen::Index r = 0; r < out.vectors.rows(); ++r) {
      const Complex z = out.vectors(r, c);
      if (std::abs(z) > std::sqrt(tol.eig_tol)) {
        out.vectors.col(c) *= std::conj(z) / std::abs(z);
        out.vectors(r, c) = std::abs(out.vectors(r, c));
        break;
      }
    }
  }
  return out;
}

CMatrix orthonormalize(const CMatrix& columns, const ToleranceConfig& tol) {
  std::vector<CVector> kept;
  for (Eigen::Index c = 0; c < columns.cols(); ++c) {
    CVector v = columns.col(c);
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& u : kept) v -= u * u.dot(v);
    const double norm = v.norm();
    if (norm < tol.rank_tol) continue;
    kept.push_back(v / norm);
  }
  CMatrix out(columns.rows(), static_cast<Eigen::Index>(kept.size()));
  for (std::size_t i = 0; i < kept.size(); ++i) out.col(static_cast<Eigen::Index>(i)) = kept[i];
  return out;
}

CMatrix null_space(const CMatrix& m, const ToleranceConfig& tol) {
  const Eigen::Index n = m.cols();
  if (m.rows() == 0) return CMatrix::Identity(n, n);
  Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > tol.rank_tol) ++rank;
  return svd.matrixV().rightCols(n - rank);
}

Projector::Projector(const CMatrix& m, double tol) : tol_(tol) {
  if (m.rows() != m.cols()) throw DomainError("projector must be square");
  require_finite(m, "projector");
  if (tol < 0) throw DomainError("projector tolerance must be nonnegative");
  if (m.size() > 0) {
    if (hermitian_defect(m) > tol) throw DomainError("projector is not self-adjoint");
    if (op_norm(m * m - m) > tol) throw DomainError("projector is not idempotent");
  }
  m_ = (m + m.adjoint()) / 2.0;
}

Projector Projector::from_basis(const CMatrix& columns, int dim, const ToleranceConfig& tol) {
  if (columns.cols() > 0 && columns.rows() != dim) throw DomainError("basis has the wrong dimension");
  const CMatrix q = orthonormalize(columns, tol);
  if (q.cols() == 0) return zero(dim);
  return Projector(q * q.adjoint(), tol.lattice_tol);
}

Projector Projector::zero(int dim) { return Projector(CMatrix::Zero(dim, dim)); }
Projector Projector::identity(int dim) { return Projector(CMatrix::Identity(dim, dim)); }

int Projector::rank() const { return static_cast<int>(std::lround(m_.trace().real())); }

CMatrix Projector::range(const ToleranceConfig& tol) const {
  const auto es = hermitian_eig(m_, tol);
  std::vector<Eigen::Index> cols;
  for (Eigen::Index i = 0; i < es.values.size(); ++i)
    if (es.values(i) > 0.5) cols.push_back(i);
  CMatrix out(m_.rows(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t k = 0; k < cols.size(); ++k) out.col(static_cast<Eigen::Index>(k)) = es.vectors.col(cols[k]);
  return out;
}

bool Projector::leq(const Projector& other, double tol) const {
  require_same_shape(m_, other.m_, "projector order");
  return op_norm(other.m_ * m_ - m_) <= tol;
}

bool Projector::approx_equal(const Projector& other, double tol) const {
  require_same_shape(m_, other.m_, "projector comparison");
  return op_norm(m_ - other.m_) <= tol;
}

Projector proj_ortho(const Projector& p) {
  return Projector(CMatrix::Identity(p.dim(), p.dim()) - p.matrix(), p.tol());
}

Projector proj_meet(const Projector& p, const Projector& q, const ToleranceConfig& tol) {
  require_same_shape(p.matrix(), q.matrix(), "proj_meet");
  const auto es = hermitian_eig(p.matrix() + q.matrix(), tol);
  std::vector<Eigen::Index> cols;
  for (Eigen::Index i = 0; i < es.values.size(); ++i)
    if (std::abs(es.values(i) - 2.0) <= tol.rank_tol) cols.push_back(i);
  CMatrix basis(p.dim(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t k = 0; k < cols.size(); ++k) basis.col(static_cast<Eigen::Index>(k)) = es.vectors.col(cols[k]);
  return Projector::from_basis(basis, p.dim(), tol);
}

Projector proj_join(const Projector& p, const Projector& q, const ToleranceConfig& tol) {
  require_same_shape(p.matrix(), q.matrix(), "proj_join");
  const auto es = hermitian_eig(p.matrix() + q.matrix(), tol);
  std::vector<Eigen::Index> cols;
  for (Eigen::Index i = 0; i < es.values.size(); ++i)
    if (es.values(i) > tol.rank_tol) cols.push_back(i);
  CMatrix basis(p.dim(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t k = 0; k < cols.size(); ++k) basis.col(static_cast<Eigen::Index>(k)) = es.vectors.col(cols[k]);
  return Projector::from_basis(basis, p.dim(), tol);
}

Projector sasaki_product(const Projector& p, const Projector& q, const ToleranceConfig& tol) {
  require_same_shape(p.matrix(), q.matrix(), "sasaki_product");
  return proj_meet(p, proj_join(proj_ortho(p), q, tol), tol);
}

CVector haar_vector(int dim, Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  CVector v(dim);
  for (int i = 0; i < dim; ++i) v(i) = Complex(g(rng), g(rng));
  return v / v.norm();
}

CMatrix random_matrix(int rows, int cols, Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  CMatrix m(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) m(r, c) = Complex(g(rng), g(rng));
  return m;
}

CMatrix random_hermitian(int dim, Rng& rng) {
  const CMatrix g = random_matrix(dim, dim, rng);
  return (g + g.adjoint()) / 2.0;
}

CMatrix random_unitary(int dim, Rng& rng) {
  Eigen::HouseholderQR<CMatrix> qr(random_matrix(dim, dim, rng));
  CMatrix q = qr.householderQ();
  const CMatrix r = qr.matrixQR();
  for (int i = 0; i < dim; ++i) {
    const Complex d = r(i, i);
    if (std::abs(d) > 0) q.col(i) *= d / std::abs(d);
  }
  return q;
}

CMatrix random_density(int dim, Rng& rng, int rank) {
  if (rank <= 0 || rank > dim) rank = dim;
  const CMatrix g = random_matrix(dim, rank, rng);
  CMatrix rho = g * g.adjoint();
  return rho / rho.trace().real();
}

Projector random_projector(int dim, int rank, Rng& rng) {
  if (rank < 0 || rank > dim) throw DomainError("random_projector: rank out of range");
  if (rank == 0) return Projector::zero(dim);
  return Projector::from_basis(random_matrix(dim, rank, rng), dim);
}

}  // namespace ncg::linalg
