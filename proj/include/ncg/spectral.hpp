#pragma once

// σ(a) against Σ(a) = image of â over the pure states of the algebra
// generated by a, star-cyclic decomposition, the functional-calculus unitary
// and invariant subspaces with an eigenvector oracle.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ncg/algebra.hpp"

namespace ncg::spectral {

using linalg::CMatrix;
using linalg::Complex;
using linalg::CVector;
using linalg::Projector;
using linalg::ToleranceConfig;
using linalg::default_tolerances;

/// Eigenvalues with algebraic multiplicity, ordered by (re, im).
std::vector<Complex> spectrum(const CMatrix& a);

/// Numerical range of one block image, from a support-line sweep.
struct RangeBlock {
  int block = 0;
  int irrep_dim = 0;
  int multiplicity = 0;
  std::vector<double> support;     // h(θ_k) = λ_max(Re(e^{−iθ_k} π_i(a)))
  std::vector<Complex> boundary;   // ⟨π_i(a)v, v⟩ for the top eigenvector v at θ_k
  double width = 0.0;              // max_k h(θ_k) + h(θ_k + π)
};

struct SigmaOptions {
  int angles = 720;
  std::size_t samples = 2000;  // Haar pure states over all blocks
  std::uint64_t seed = 0;
};

struct SpectralReport {
  std::vector<Complex> sigma;
  std::vector<RangeBlock> blocks;
  std::vector<Complex> samples;
  std::vector<int> sample_blocks;
  double containment = 0.0;  // max over σ of the distance to Σ
  double hausdorff = 0.0;    // Hausdorff distance between σ and Σ (boundary + samples)
  bool sigma_singleton = false;
  bool Sigma_singleton = false;
  bool sigma_equals_Sigma = false;
  int angles = 0;

  /// Distance from z to Σ, measured against the support lines of each block.
  double distance_to_Sigma(Complex z) const;
};

/// Throws DecompositionError from the block decomposition; DomainError when
/// `a` is not square.
SpectralReport sigma_big(const CMatrix& a, const SigmaOptions& options = {},
                         const ToleranceConfig& tol = default_tolerances());

struct CyclicPiece {
  Projector subspace;
  CVector vector;
};

struct CyclicDecomposition {
  std::vector<CyclicPiece> pieces;
  double orthogonality_defect = 0.0;  // max ‖P_i P_j‖, i ≠ j
  double completeness_defect = 0.0;   // ‖Σ P_i − I‖
  double cyclicity_defect = 0.0;      // max over pieces of ‖P_i − proj(A·h_i)‖
};

CyclicDecomposition cyclic_decompose(const CMatrix& a, const ToleranceConfig& tol = default_tolerances());

struct FcUnitary {
  CMatrix unitary;  // columns: U applied to the orthonormal GNS basis
  algebra::GnsRepresentation gns;
  double isometry_defect = 0.0;      // ‖U*U − I‖
  double intertwining_defect = 0.0;  // max over the basis of ‖x − U π(x) U*‖
};

/// U[x] = xh for the GNS space of α(x) = ⟨xh, h⟩ over A = C*(a). Throws
/// DomainError when h is not star-cyclic, naming the dimension of A·h.
FcUnitary fc_unitary(const CMatrix& a, const CVector& h, const ToleranceConfig& tol = default_tolerances());
/// ‖x − U π(x) U*‖ for one element x of A.
double intertwining_defect(const FcUnitary& fc, const algebra::FdAlgebra& algebra, const CMatrix& x);

enum class InvsubMode { Paper, Oracle, Both };

const char* to_string(InvsubMode mode);
/// Throws DomainError for anything but "paper", "oracle" or "both".
InvsubMode parse_invsub_mode(const std::string& text);

struct InvariantSubspaceResult {
  Projector projector = Projector::zero(0);
  double invariance_defect = 0.0;
  int rank = 0;
  int ambient = 0;
  std::string case_tag;    // scalar-case, sigma-split-case, out-of-dichotomy, oracle
  std::string provenance;  // paper-construction or eigenvector-oracle
  bool nontrivial = false;
  std::optional<std::string> discrepancy;  // witness: Σ singleton but a not scalar
  std::string note;
};

/// ‖(I − P)aP‖.
double invariance_defect(const CMatrix& a, const Projector& p);

struct InvsubOptions {
  SigmaOptions sigma{};
  double split_tol = -1.0;  // defaults to 1e-6·‖a‖
};

/// Throws DomainError when a is not square or n < 2.
std::vector<InvariantSubspaceResult> invariant_subspace(const CMatrix& a, InvsubMode mode,
                                                        const InvsubOptions& options = {},
                                                        const ToleranceConfig& tol = default_tolerances());

}  // namespace ncg::spectral
