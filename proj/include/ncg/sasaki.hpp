#pragma once

// Sasaki projections on a finite OML, the semigroup they generate, its
// involution and complementation, closed projections, and the transferred
// product on subsets of a quantum set together with the χ-product.

#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ncg/errors.hpp"
#include "ncg/oml.hpp"

namespace ncg::sasaki {

using oml::Element;
using oml::FiniteOml;
using oml::Mask;
using oml::SetOml;

/// Which map φ_p is taken as the Sasaki projection.
///   Classical: q ↦ p ∧ (p⊥ ∨ q)
///   Literal:   q ↦ p ∧ q  (kept for comparison runs)
enum class Formula { Classical, Literal };

const char* to_string(Formula f);

/// A map L → L stored as its action table.
struct MonotoneMap {
  std::vector<Element> action;

  Element operator()(Element q) const { return action.at(static_cast<std::size_t>(q)); }
  bool operator==(const MonotoneMap&) const = default;
};

bool is_monotone(const FiniteOml& lattice, const MonotoneMap& map);
MonotoneMap identity_map(const FiniteOml& lattice);
/// (f ∘ g)(q) = f(g(q)).
MonotoneMap compose(const MonotoneMap& f, const MonotoneMap& g);
MonotoneMap sasaki_map(const FiniteOml& lattice, Element p, Formula formula = Formula::Classical);

struct MapHash {
  std::size_t operator()(const std::vector<Element>& v) const noexcept;
};

/// The semigroup generated by {φ_p : p ∈ L}. Elements are numbered in
/// breadth-first discovery order; `words[i]` is a shortest generator word
/// (p_1, ..., p_k) with elements[i] = φ_{p_1} ∘ ... ∘ φ_{p_k}.
struct BaerSemigroup {
  Formula formula = Formula::Classical;
  std::vector<MonotoneMap> elements;
  std::vector<std::vector<Element>> words;
  std::vector<int> generator_of;  // element index of φ_p, per lattice element p
  std::vector<int> star;          // from reversed words; -1 when unresolved
  std::vector<int> perp;          // from reversed, complemented words; -1 when unresolved
  int identity = -1;
  bool complete = false;

  std::size_t size() const noexcept { return elements.size(); }
  /// Index of the element with this action, or -1.
  int find(const MonotoneMap& map) const;
  /// Index of elements[i] ∘ elements[j], or -1 when it was not discovered.
  int compose(int i, int j) const;
  /// Full n x n composition table (row i, column j holds compose(i, j)).
  std::vector<std::vector<int>> composition_table() const;
  /// Evaluates a generator word to an action table.
  MonotoneMap evaluate_word(const FiniteOml& lattice, const std::vector<Element>& word) const;

  std::unordered_map<std::vector<Element>, int, MapHash> index;
};

class SemigroupBudgetExceeded : public BudgetExceeded {
 public:
  SemigroupBudgetExceeded(BaerSemigroup partial, std::size_t frontier);
  const BaerSemigroup& partial() const noexcept { return partial_; }

 private:
  BaerSemigroup partial_;
};

inline constexpr std::size_t kDefaultSemigroupBudget = 10000;

/// Breadth-first closure of the Sasaki set under composition. Throws
/// SemigroupBudgetExceeded (carrying the partial result) past `cap` elements.
BaerSemigroup enumerate_semigroup(const FiniteOml& lattice,
                                  std::size_t cap = kDefaultSemigroupBudget,
                                  Formula formula = Formula::Classical);

/// Structural checks on an enumerated semigroup. Counts are numbers of
/// failing elements or pairs. `clean()` ignores perp_not_antihomomorphic:
/// extending φ_p⊥ = φ_{p⊥} by (φψ)⊥ = ψ⊥φ⊥ is not well defined on words
/// (already φ_0 φ_1 = φ_0 on B_1), so that count is reported, not required.
struct SemigroupAudit {
  std::size_t non_monotone = 0;
  std::size_t star_unresolved = 0;
  std::size_t star_not_involutive = 0;
  std::size_t star_not_antihomomorphic = 0;
  std::size_t perp_not_antihomomorphic = 0;
  std::size_t adjoint_law_failures = 0;
  std::size_t generators_not_self_adjoint = 0;
  std::size_t non_idempotent_generators = 0;
  bool contains_identity = false;

  bool clean() const noexcept;
};

SemigroupAudit audit_semigroup(const FiniteOml& lattice, const BaerSemigroup& semigroup);

/// {φ : φ² = φ = φ*, (φ⊥)⊥ = φ}, ordered by φ ≤ ψ ⟺ φ = φψ = ψφ with
/// orthocomplement φ ↦ φ⊥, compared against p ↦ φ_p.
struct ClosedProjections {
  std::vector<int> elements;        // semigroup indices, ascending
  FiniteOml lattice;                // order and complement on `elements`
  std::vector<Element> embedding;   // p ↦ position of φ_p in `elements`, -1 if absent
  bool equals_sasaki_set = false;
  bool isomorphic = false;
  std::vector<std::string> failures;
};

/// Throws DomainError on a partial semigroup.
ClosedProjections closed_projections(const FiniteOml& lattice, const BaerSemigroup& semigroup);

/// Side-by-side run of both Sasaki formulas on one lattice.
struct FormulaComparison {
  Formula formula;
  std::size_t semigroup_size = 0;
  bool sasaki_set_closed = false;  // S(L) equals the Sasaki set
  bool commutative = false;
  std::size_t adjoint_law_failures = 0;
  std::size_t closed_projection_count = 0;
  bool recovers_lattice = false;
};

std::vector<FormulaComparison> compare_formulas(const FiniteOml& lattice,
                                                std::size_t cap = kDefaultSemigroupBudget);

// ---------------------------------------------------------------------------
// Transfer to subsets of a quantum set

/// S(L(X)) together with U_φ = φ(X) for every element.
struct QSetSemigroup {
  SetOml set;
  FiniteOml lattice;
  BaerSemigroup semigroup;
  std::vector<Mask> subset;  // U_φ per semigroup element
};

QSetSemigroup make_qset_semigroup(const SetOml& set,
                                  std::size_t cap = kDefaultSemigroupBudget,
                                  Formula formula = Formula::Classical);

/// An element of S(X): the subset U_φ and the map that produced it.
struct QSemigroupElement {
  int map = -1;
  Mask subset = 0;

  bool operator==(const QSemigroupElement&) const = default;
};

QSemigroupElement qset_element(const QSetSemigroup& q, int map);
/// The closed projection φ_U for a member U of L(X).
QSemigroupElement qset_member(const QSetSemigroup& q, Mask member);

/// U * V = U_{φψ}. Throws DomainError when an operand does not belong to `q`.
QSemigroupElement qset_star(const QSetSemigroup& q, const QSemigroupElement& u,
                            const QSemigroupElement& v);
QSemigroupElement qset_involution(const QSetSemigroup& q, const QSemigroupElement& u);
QSemigroupElement qset_perp(const QSetSemigroup& q, const QSemigroupElement& u);

/// Whether φ ↦ U_φ is one-to-one; otherwise the first colliding pair.
struct InjectivityCheck {
  bool injective = true;
  std::optional<std::pair<int, int>> witness;
};

InjectivityCheck subset_map_injective(const QSetSemigroup& q);

using Complex = std::complex<double>;

/// Finite complex combination Σ c_k χ_{U_k} of characteristic functions of
/// S(X) elements, keyed by semigroup element index. Canonical form: keys
/// strictly ascending, coefficients nonzero.
struct SimpleFunction {
  std::vector<std::pair<int, Complex>> terms;
};

SimpleFunction chi(const QSemigroupElement& u, Complex coefficient = 1.0);
bool is_canonical(const SimpleFunction& f);
SimpleFunction canonicalize(const SimpleFunction& f);

/// Bilinear extension of χ_U * χ_V = χ_{U*V}. Non-canonical input is
/// normalised first and a note is appended to `notes` when given.
SimpleFunction chi_star(const QSetSemigroup& q, const SimpleFunction& f, const SimpleFunction& g,
                        std::vector<std::string>* notes = nullptr);

/// Value at ground point x.
Complex evaluate(const QSetSemigroup& q, const SimpleFunction& f, int x);
/// Pointwise values on the ground set.
std::vector<Complex> point_values(const QSetSemigroup& q, const SimpleFunction& f);
double sup_norm(const QSetSemigroup& q, const SimpleFunction& f);
/// Σ |c_k|.
double coefficient_norm(const SimpleFunction& f);

/// Searches for two representations with equal point functions whose
/// χ-products (against a common right factor) differ as point functions.
struct RepresentationProbe {
  bool well_defined = true;
  std::size_t pairs_checked = 0;
  // (map, map', right factor) with U_map = U_map' but U_{map*r} ≠ U_{map'*r}
  std::optional<std::tuple<int, int, int>> witness;
};

RepresentationProbe probe_representation_dependence(const QSetSemigroup& q);

// ---------------------------------------------------------------------------
// Saturation

enum class SaturationStatus { Saturated, NotSaturated, Inconclusive };

const char* to_string(SaturationStatus s);

struct SaturationResult {
  SaturationStatus status = SaturationStatus::Inconclusive;
  std::size_t pairs_checked = 0;
  // worst failing member pair (U, V) with both sides of the identity
  std::optional<std::pair<int, int>> witness;
  Mask lhs = 0;
  Mask rhs = 0;
  // restriction identity for characteristic functions over S(X); the
  // restricted factors are represented by closed projections of L(Y), so a
  // failure here can also come from U_φ not determining φ
  bool restriction_identity = false;
  std::size_t restriction_pairs_checked = 0;
};

/// Checks (U ∧ Y) *_Y (V ∧ Y) = (U *_X V) ∧ Y over `pairs` of member
/// indices (all pairs when empty), then the restriction identity
/// (f|_Y) *_Y (g|_Y) = (f *_X g)|_Y for characteristic functions of S(X).
SaturationResult saturation_check(const SetOml& set, int y,
                                  const std::vector<std::pair<int, int>>& pairs = {},
                                  std::size_t cap = kDefaultSemigroupBudget);

}  // namespace ncg::sasaki
