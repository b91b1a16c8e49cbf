#pragma once

// The quantum-set structure on the pure states of a finite-dimensional
// algebra: subsets closed under the singleton join rule, their lattice
// operations, and functions built from characteristic functions with the
// Sasaki product.

#include <string>
#include <utility>
#include <vector>

#include "ncg/algebra.hpp"

namespace ncg::qspace {

using algebra::AlgebraInstance;
using algebra::PureState;
using linalg::CMatrix;
using linalg::Complex;
using linalg::CVector;
using linalg::Projector;
using linalg::Rng;
using linalg::ToleranceConfig;
using linalg::default_tolerances;

/// How {α} ∨ {β} is read for equivalent pure states.
///   Superposition: vector states of span{x, y} in the common block.
///   Literal: pure functionals c₁α + c₂β with |c₁|² + |c₂|² = 1.
enum class JoinMode { Superposition, Literal };

const char* to_string(JoinMode mode);
/// Throws DomainError for anything but "superposition" or "literal".
JoinMode parse_join_mode(const std::string& text);

/// A subset of P(A). Superposition-mode subsets hold one projector per block
/// (the members are the vector states of its range); literal-mode subsets
/// hold explicit unit vectors per block.
struct QSubset {
  JoinMode mode = JoinMode::Superposition;
  std::vector<Projector> components;
  std::vector<std::vector<CVector>> points;

  bool contains(const PureState& state, const ToleranceConfig& tol = default_tolerances()) const;
  bool empty() const;
};

QSubset empty_subset(const AlgebraInstance& instance, JoinMode mode = JoinMode::Superposition);
/// All of P(A) (superposition mode).
QSubset full_subset(const AlgebraInstance& instance);
/// Vector states of the given per-block subspaces. Throws DomainError when
/// the count or the sizes do not match the blocks.
QSubset subset_from_projectors(const AlgebraInstance& instance, std::vector<Projector> components);
/// U_p = {α : α(p) = 1} for a projection p ∈ A.
QSubset range_subset(const AlgebraInstance& instance, const Projector& p,
                     const ToleranceConfig& tol = default_tolerances());

QSubset singleton_join(const AlgebraInstance& instance, const PureState& a, const PureState& b,
                       JoinMode mode = JoinMode::Superposition,
                       const ToleranceConfig& tol = default_tolerances());
/// Least subset containing the seeds and closed under singleton_join.
/// Throws DomainError for an empty seed list.
QSubset qsubset_closure(const AlgebraInstance& instance, const std::vector<PureState>& seeds,
                        JoinMode mode = JoinMode::Superposition,
                        const ToleranceConfig& tol = default_tolerances());
/// Applies singleton_join to every pair of members of a literal subset, or
/// to spanning vectors of each component; returns the result.
QSubset reclose(const AlgebraInstance& instance, const QSubset& u,
                const ToleranceConfig& tol = default_tolerances());

/// Per-block intersection, span and orthocomplement. Throw UnsupportedMode
/// for literal-mode operands.
QSubset q_meet(const QSubset& u, const QSubset& v, const ToleranceConfig& tol = default_tolerances());
QSubset q_join(const QSubset& u, const QSubset& v, const ToleranceConfig& tol = default_tolerances());
QSubset q_perp(const QSubset& u);
/// U ∗ V, the per-block Sasaki product.
QSubset q_sasaki(const QSubset& u, const QSubset& v, const ToleranceConfig& tol = default_tolerances());
bool q_leq(const QSubset& u, const QSubset& v, const ToleranceConfig& tol = default_tolerances());
bool q_equal(const QSubset& u, const QSubset& v, const ToleranceConfig& tol = default_tolerances());

/// Σ c_k χ_{U_k}.
struct QFunction {
  std::vector<std::pair<Complex, QSubset>> terms;

  Complex operator()(const PureState& state, const ToleranceConfig& tol = default_tolerances()) const;
};

QFunction chi(const QSubset& u, Complex coefficient = 1.0);
QFunction conj(const QFunction& f);
QFunction operator+(const QFunction& f, const QFunction& g);
/// Bilinear extension of χ_U ∗ χ_V = χ_{U∗V}. Throws UnsupportedMode for
/// literal-mode terms.
QFunction qfunction_star(const QFunction& f, const QFunction& g,
                         const ToleranceConfig& tol = default_tolerances());

struct NormEstimate {
  double value = 0.0;
  std::string method;  // "exact" or "sampled"
};

/// sup over P(A) of |f|. Exact (enumerating realisable membership patterns
/// per block) for superposition-mode functions with at most `exact_terms`
/// terms, otherwise the maximum over `samples` Haar pure states per block.
NormEstimate sup_norm(const AlgebraInstance& instance, const QFunction& f, std::size_t samples, Rng& rng,
                      std::size_t exact_terms = 16, const ToleranceConfig& tol = default_tolerances());

/// Spectral projections of a Hermitian element of A, with eigenvalues
/// ascending; nearby eigenvalues are merged within rank_tol.
std::vector<std::pair<double, Projector>> spectral_projections(const CMatrix& a,
                                                               const ToleranceConfig& tol = default_tolerances());
/// Σ λ_k χ_{U_{p_k}} for the spectral decomposition a = Σ λ_k p_k.
QFunction spectral_function(const AlgebraInstance& instance, const CMatrix& a,
                            const ToleranceConfig& tol = default_tolerances());

}  // namespace ncg::qspace
