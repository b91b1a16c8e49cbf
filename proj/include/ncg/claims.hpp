#pragma once

// Numerical checks of the duality claims on finite instances. Every check
// returns report rows; a row is either required to hold (commutative
// instances and genuine finite-dimensional facts) or a finding.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ncg/algebra.hpp"
#include "ncg/qspace.hpp"

namespace ncg::claims {

using algebra::AlgebraInstance;
using algebra::State;
using linalg::CMatrix;
using linalg::Complex;
using linalg::Projector;
using linalg::ToleranceConfig;
using qspace::JoinMode;
using qspace::QFunction;

enum class Verdict { Holds, Fails, Inconclusive };
enum class Expectation { Holds, Finding };

const char* to_string(Verdict v);
const char* to_string(Expectation e);

struct ClaimRow {
  std::string claim;
  std::string instance;
  std::string mode;
  std::vector<std::pair<std::string, double>> defects;
  Verdict verdict = Verdict::Inconclusive;
  Expectation expected = Expectation::Finding;
  std::string method;
  std::string witness;
  std::uint64_t seed = 0;

  /// A required row that did not hold.
  bool violates_expectation() const { return expected == Expectation::Holds && verdict != Verdict::Holds; }
  double defect(const std::string& name) const;
};

struct ClaimContext {
  std::string instance = "instance";
  std::uint64_t seed = 0;
  std::size_t samples = 1000;
  JoinMode mode = JoinMode::Superposition;
  ToleranceConfig tol{};
  double claim_tol = 1e-10;
};

/// Whether singleton joins of equivalent pure states in the preimage of the
/// disc |z − center| ≤ radius under â stay in the preimage.
ClaimRow hat_preimage_qness(const ClaimContext& ctx, const AlgebraInstance& instance, const CMatrix& a,
                            Complex center, double radius);

/// |‖f ∗ f̄‖ − ‖f‖²|.
ClaimRow cstar_identity_defect(const ClaimContext& ctx, const AlgebraInstance& instance, const QFunction& f);

/// Pure ⟺ multiplicative, with the proof-step defects for a and b:
/// |α(a²) − α(a)²|, |α(ab) − α(a)α(b)|, |α(p∧q) − α(p)α(q)| and the
/// characteristic defect for p, q the top spectral projections of a, b.
ClaimRow prop9_defect(const ClaimContext& ctx, const AlgebraInstance& instance, const State& state,
                      const CMatrix& a, const CMatrix& b);

/// max over sampled pure α of min(|p̂(α)|, |1 − p̂(α)|).
ClaimRow hat_is_characteristic_defect(const ClaimContext& ctx, const AlgebraInstance& instance,
                                      const Projector& p);

/// Injectivity, separation and homomorphism defect of a ↦ â; for
/// commutative algebras also isometry and bijectivity onto functions on
/// the finite pure-state set.
std::vector<ClaimRow> thm3_diagnostics(const ClaimContext& ctx, const AlgebraInstance& instance);

/// R(A) discrete ⟺ A commutative.
std::vector<ClaimRow> prop1_rows(const ClaimContext& ctx, const AlgebraInstance& instance);

/// Multiplicativity of pure states and surjectivity of the hat map.
std::vector<ClaimRow> prop2_rows(const ClaimContext& ctx, const AlgebraInstance& instance);

/// f = χ_{U_P} + i·χ_{U_Q} for the top spectral projections P, Q of the
/// Hermitian parts of the first two non-scalar generators.
QFunction default_probe_function(const AlgebraInstance& instance, const ToleranceConfig& tol = {});

/// Top spectral projection of the Hermitian part of `a`.
Projector top_projection(const CMatrix& a, const ToleranceConfig& tol = {});

}  // namespace ncg::claims
