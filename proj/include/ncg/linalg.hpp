#pragma once

// Dense complex linear algebra on Eigen: Hermitian eigendecomposition with a
// reproducible phase convention, subspace arithmetic and the projector lattice.

#include <complex>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace ncg::linalg {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;
using Rng = std::mt19937_64;

struct ToleranceConfig {
  double eig_tol = 1e-10;
  double rank_tol = 1e-8;
  double lattice_tol = 1e-8;

  /// Throws DomainError unless all are positive and rank_tol >= eig_tol.
  void validate() const;
};

const ToleranceConfig& default_tolerances();

/// Throws DomainError on NaN/Inf entries.
void require_finite(const CMatrix& m, const char* what);
/// Throws DomainError unless the shapes agree.
void require_same_shape(const CMatrix& a, const CMatrix& b, const char* what);

double op_norm(const CMatrix& m);
double hermitian_defect(const CMatrix& m);

struct EigenSystem {
  RVector values;   // ascending
  CMatrix vectors;  // columns, unitary
};

/// Eigenvalues ascending; each eigenvector is scaled so its first component
/// above eig_tol is real positive. Throws DomainError when ‖A − A*‖ exceeds
/// tol·max(1, ‖A‖).
EigenSystem hermitian_eig(const CMatrix& a, const ToleranceConfig& tol = default_tolerances());

/// Modified Gram-Schmidt with one re-orthogonalisation pass. Columns whose
/// residual falls below rank_tol are dropped; the result may have zero columns.
CMatrix orthonormalize(const CMatrix& columns, const ToleranceConfig& tol = default_tolerances());

/// Orthonormal basis of the kernel of `m`, from the singular values below rank_tol.
CMatrix null_space(const CMatrix& m, const ToleranceConfig& tol = default_tolerances());

/// Orthogonal projector validated on construction.
class Projector {
 public:
  /// Throws DomainError when `m` is not square, not finite, or not a
  /// projector within `tol`. The stored matrix is symmetrised.
  explicit Projector(const CMatrix& m, double tol = default_tolerances().lattice_tol);

  /// Projector onto the span of the columns (orthonormalised first).
  static Projector from_basis(const CMatrix& columns, int dim,
                              const ToleranceConfig& tol = default_tolerances());
  static Projector zero(int dim);
  static Projector identity(int dim);

  const CMatrix& matrix() const noexcept { return m_; }
  int dim() const noexcept { return static_cast<int>(m_.rows()); }
  double tol() const noexcept { return tol_; }
  int rank() const;
  /// Orthonormal basis of the range.
  CMatrix range(const ToleranceConfig& tol = default_tolerances()) const;
  /// range(P) ⊆ range(Q), tested as ‖QP − P‖ ≤ tol.
  bool leq(const Projector& other, double tol = default_tolerances().lattice_tol) const;
  bool approx_equal(const Projector& other, double tol = default_tolerances().lattice_tol) const;

 private:
  CMatrix m_;
  double tol_ = 0.0;
};

Projector proj_ortho(const Projector& p);
/// Projector onto range(P) ∩ range(Q): eigenspace of P + Q at eigenvalue 2.
Projector proj_meet(const Projector& p, const Projector& q, const ToleranceConfig& tol = default_tolerances());
/// Projector onto range(P) + range(Q).
Projector proj_join(const Projector& p, const Projector& q, const ToleranceConfig& tol = default_tolerances());
/// P ∧ (P⊥ ∨ Q).
Projector sasaki_product(const Projector& p, const Projector& q,
                         const ToleranceConfig& tol = default_tolerances());

// Random sampling helpers; every caller passes its own seeded engine.
CVector haar_vector(int dim, Rng& rng);
CMatrix random_matrix(int rows, int cols, Rng& rng);
CMatrix random_hermitian(int dim, Rng& rng);
CMatrix random_unitary(int dim, Rng& rng);
/// Density matrix of a random mixed state with the given rank (full when 0).
CMatrix random_density(int dim, Rng& rng, int rank = 0);
Projector random_projector(int dim, int rank, Rng& rng);

}  // namespace ncg::linalg
