#pragma once

// Finite-dimensional unital *-algebras of matrices: closure, block
// decomposition, states, pure states, GNS and the hat map a ↦ â.

#include <cstdint>
#include <optional>
#include <vector>

#include "ncg/linalg.hpp"

namespace ncg::algebra {

using linalg::CMatrix;
using linalg::Complex;
using linalg::CVector;
using linalg::Projector;
using linalg::Rng;
using linalg::ToleranceConfig;
using linalg::default_tolerances;

/// Span of matrices with a Hilbert-Schmidt orthonormal basis, closed under
/// products and adjoints and containing the identity.
class FdAlgebra {
 public:
  FdAlgebra() = default;

  int ambient_dim() const noexcept { return n_; }
  int dim() const noexcept { return static_cast<int>(basis_.size()); }
  const std::vector<CMatrix>& basis() const noexcept { return basis_; }
  const std::vector<CMatrix>& generators() const noexcept { return generators_; }

  /// HS coordinates ⟨B_k, a⟩ = tr(B_k* a).
  CVector coordinates(const CMatrix& a) const;
  CMatrix element(const CVector& coordinates) const;
  /// HS-orthogonal projection onto the span (a conditional expectation).
  CMatrix project(const CMatrix& a) const;
  /// ‖a − project(a)‖_F.
  double residual(const CMatrix& a) const;
  bool contains(const CMatrix& a, const ToleranceConfig& tol = default_tolerances()) const;
  bool is_commutative(const ToleranceConfig& tol = default_tolerances()) const;

 private:
  friend FdAlgebra generate_algebra(const std::vector<CMatrix>&, const ToleranceConfig&);
  int n_ = 0;
  std::vector<CMatrix> basis_;
  std::vector<CMatrix> generators_;
};

/// Smallest unital *-subalgebra containing the generators. Throws
/// DomainError for an empty list, non-square or mismatched matrices.
FdAlgebra generate_algebra(const std::vector<CMatrix>& generators,
                           const ToleranceConfig& tol = default_tolerances());

/// Algebra of all diagonal n x n matrices.
FdAlgebra diagonal_algebra(int n);
/// Full matrix algebra M_n.
FdAlgebra full_algebra(int n);
/// M_{d_1} ⊕ ... ⊕ M_{d_k} embedded block-diagonally.
FdAlgebra direct_sum_algebra(const std::vector<int>& block_sizes);

struct Block {
  Projector central;  // z_i
  int irrep_dim = 0;  // d_i
  int multiplicity = 0;  // m_i
  // n x (d_i m_i); column s*d_i + j is the j-th irrep basis vector of copy s,
  // so W* a W = I_{m_i} ⊗ π_i(a)
  CMatrix isometry;
};

struct BlockDecomposition {
  std::vector<Block> blocks;
  int center_dim = 0;
};

/// Wedderburn decomposition. Tries canonical diagonal probes first, then up
/// to `retries` random probes from `seed`. Throws DecompositionError when
/// eigenvalue clustering stays ambiguous.
BlockDecomposition block_decompose(const FdAlgebra& algebra,
                                   const ToleranceConfig& tol = default_tolerances(),
                                   std::uint64_t seed = 0x5eedULL, int retries = 8);

/// π_i(a): the d_i x d_i image of `a` in block i.
CMatrix block_image(const Block& block, const CMatrix& a);
/// Σ_i W_i (I ⊗ π_i(a)) W_i*.
CMatrix reassemble(const BlockDecomposition& blocks, const CMatrix& a);

/// An algebra together with its decomposition.
struct AlgebraInstance {
  FdAlgebra algebra;
  BlockDecomposition blocks;

  int block_count() const noexcept { return static_cast<int>(blocks.blocks.size()); }
};

AlgebraInstance make_instance(const FdAlgebra& algebra, const ToleranceConfig& tol = default_tolerances());

// ---------------------------------------------------------------------------
// States

/// Density matrix on the ambient space, used as a ↦ tr(ρa) on A.
class State {
 public:
  /// Throws DomainError unless ρ is Hermitian, PSD and of trace one within tol.
  explicit State(const CMatrix& rho, const ToleranceConfig& tol = default_tolerances());
  static State vector_state(const CVector& xi);

  const CMatrix& rho() const noexcept { return rho_; }
  Complex operator()(const CMatrix& a) const;

 private:
  CMatrix rho_;
};

/// Pure state in block coordinates: unit vector in the irrep space of a block.
struct PureState {
  int block = 0;
  CVector vector;

  /// Throws DomainError when the block index or vector length is wrong or
  /// the vector is not a unit vector within tol.
  void validate(const AlgebraInstance& instance, const ToleranceConfig& tol = default_tolerances()) const;
};

/// Ambient unit vector realising the pure state (first multiplicity copy).
CVector ambient_vector(const AlgebraInstance& instance, const PureState& state);
State as_state(const AlgebraInstance& instance, const PureState& state);

/// Per block, the d_i x d_i density σ_i with α(a) = Σ_i tr(σ_i π_i(a)).
std::vector<CMatrix> reduced_densities(const AlgebraInstance& instance, const State& state);
/// Pure on A iff one block carries all the weight with a rank-one σ_i.
bool is_pure(const AlgebraInstance& instance, const State& state,
             const ToleranceConfig& tol = default_tolerances());
/// The pure state a pure `state` restricts to; nullopt if it is not pure.
std::optional<PureState> to_pure(const AlgebraInstance& instance, const State& state,
                                 const ToleranceConfig& tol = default_tolerances());

PureState random_pure_state(const AlgebraInstance& instance, Rng& rng);
/// A random state whose restriction to A is pure with probability `pure_rate`.
State random_state(const AlgebraInstance& instance, Rng& rng, double pure_rate = 0.5);

// ---------------------------------------------------------------------------
// GNS

struct GnsRepresentation {
  int dim = 0;
  std::vector<CMatrix> pi;  // π(B_k) for the algebra basis
  CVector omega;            // class of I
  CMatrix coefficients;     // algebra coordinates of the orthonormal GNS basis (columns)
};

/// Throws DomainError when the state is invalid for A's ambient space.
GnsRepresentation gns(const FdAlgebra& algebra, const State& state,
                      const ToleranceConfig& tol = default_tolerances());
/// π(a) for any a ∈ A.
CMatrix gns_image(const FdAlgebra& algebra, const State& state, const GnsRepresentation& rep,
                  const CMatrix& a);
int commutant_dimension(const std::vector<CMatrix>& matrices,
                        const ToleranceConfig& tol = default_tolerances());
bool is_irreducible(const GnsRepresentation& rep, const ToleranceConfig& tol = default_tolerances());

bool gns_equivalent(const PureState& a, const PureState& b);
/// Every equivalence class of R(A) is a singleton (all d_i = 1).
bool r_is_discrete(const AlgebraInstance& instance);

/// Smallest projection p ∈ A with α(p) = 1.
Projector support_projection(const AlgebraInstance& instance, const State& state,
                             const ToleranceConfig& tol = default_tolerances());
/// True iff some projection p ∈ A has α(p) = 1 and β(p) = 0.
bool orthogonal_states(const AlgebraInstance& instance, const State& a, const State& b,
                       const ToleranceConfig& tol = default_tolerances());

// ---------------------------------------------------------------------------
// Hat map

/// â(α) = α(a). Throws DomainError when a ∉ A.
Complex hat(const AlgebraInstance& instance, const CMatrix& a, const State& state,
            const ToleranceConfig& tol = default_tolerances());
/// â(α) = ⟨π_i(a)ξ, ξ⟩.
Complex hat(const AlgebraInstance& instance, const CMatrix& a, const PureState& state,
            const ToleranceConfig& tol = default_tolerances());

/// |α(ab) − α(a)α(b)|.
double multiplicativity_defect(const AlgebraInstance& instance, const PureState& state,
                               const CMatrix& a, const CMatrix& b);

struct HatDiagnostics {
  bool commutative = false;
  double multiplicativity_defect = 0.0;
  bool separation = true;
  std::size_t samples = 0;
  std::optional<PureState> witness;  // state attaining the defect
};

HatDiagnostics hat_map_diagnostics(const AlgebraInstance& instance, std::size_t samples, Rng& rng,
                                   const ToleranceConfig& tol = default_tolerances());

/// A random element of A (projection of a Gaussian matrix).
CMatrix random_element(const FdAlgebra& algebra, Rng& rng, bool hermitian = false);

}  // namespace ncg::algebra
