#pragma once

// Finite orthomodular lattices stored as explicit tables, and orthomodular
// families of subsets of a finite ground set ("quantum sets").

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ncg::oml {

using Element = int;
inline constexpr Element kNone = -1;

/// Axiom identifiers used in reports. The numbered `oml.*` ids follow the
/// four orthocomplementation conditions; `qset.*` ids follow the six
/// quantum-set conditions.
namespace axiom {
inline constexpr const char* kReflexive = "poset.reflexive";
inline constexpr const char* kAntisymmetric = "poset.antisymmetric";
inline constexpr const char* kTransitive = "poset.transitive";
inline constexpr const char* kBottom = "bounds.bottom";
inline constexpr const char* kTop = "bounds.top";
inline constexpr const char* kMeet = "lattice.meet";
inline constexpr const char* kJoin = "lattice.join";
inline constexpr const char* kOrderReversing = "oml.1.order_reversing";
inline constexpr const char* kInvolution = "oml.2.involution";
inline constexpr const char* kComplement = "oml.3.complement";
inline constexpr const char* kOrthomodular = "oml.4.orthomodular";
inline constexpr const char* kQsetBounds = "qset.1.bounds";
inline constexpr const char* kQsetSingleton = "qset.2.singleton";
inline constexpr const char* kQsetMeet = "qset.4.meet";
inline constexpr const char* kQsetJoin = "qset.5.join";
inline constexpr const char* kQsetClosure = "qset.6.closure";
}  // namespace axiom

struct Violation {
  std::string axiom;
  std::vector<int> witness;

  bool operator==(const Violation&) const = default;
};

using AxiomReport = std::vector<Violation>;

/// A finite bounded poset with an orthocomplementation table. Meets and joins
/// are precomputed from `leq`; a missing glb/lub is stored as kNone and shows
/// up as a lattice violation in verify_oml rather than at construction.
class FiniteOml {
 public:
  FiniteOml() = default;

  /// Throws StructuralError when `leq` is not n x n, `ortho` has the wrong
  /// length, or an ortho entry is out of range.
  FiniteOml(std::vector<std::vector<bool>> leq, std::vector<Element> ortho,
            std::vector<std::string> labels = {});

  int size() const noexcept { return n_; }
  bool leq(Element p, Element q) const { return leq_[index(p, q)] != 0; }
  Element ortho(Element p) const { return ortho_[check(p)]; }
  Element meet(Element p, Element q) const { return meet_[index(p, q)]; }
  Element join(Element p, Element q) const { return join_[index(p, q)]; }
  Element bottom() const noexcept { return bottom_; }
  Element top() const noexcept { return top_; }

  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::string& label(Element p) const { return labels_[check(p)]; }
  /// Index of the element with the given label, or kNone.
  Element find(const std::string& label) const;

  std::vector<std::vector<bool>> leq_table() const;
  const std::vector<Element>& ortho_table() const noexcept { return ortho_; }

  /// True when every pair has a meet and a join and both bounds exist.
  bool is_lattice() const noexcept { return lattice_; }

 private:
  std::size_t index(Element p, Element q) const;
  std::size_t check(Element p) const;

  int n_ = 0;
  std::vector<char> leq_;
  std::vector<Element> ortho_;
  std::vector<Element> meet_;
  std::vector<Element> join_;
  std::vector<std::string> labels_;
  Element bottom_ = kNone;
  Element top_ = kNone;
  bool lattice_ = false;
};

/// Empty iff the poset/lattice axioms and the four orthocomplementation
/// axioms hold. Each violation carries the witness element(s).
AxiomReport verify_oml(const FiniteOml& lattice);

/// p ∧ (p⊥ ∨ q).
Element skew_meet(const FiniteOml& lattice, Element p, Element q);

struct BooleanCheck {
  bool boolean = false;
  std::optional<std::pair<Element, Element>> witness;
};

/// Boolean iff the skew meet is commutative; otherwise returns the first
/// pair (p, q) in row-major order with p ∧̇ q ≠ q ∧̇ p.
BooleanCheck is_boolean(const FiniteOml& lattice);

/// Checks that `map` (indexed by elements of `from`) is a bijection onto
/// `to` preserving order both ways and commuting with orthocomplements.
/// Returns a description of the first failure, or nullopt.
std::optional<std::string> check_isomorphism(const FiniteOml& from, const FiniteOml& to,
                                             const std::vector<Element>& map);

// ---------------------------------------------------------------------------
// Lattice zoo

/// Power-set lattice of n atoms (2^n elements, set complement).
FiniteOml boolean_lattice(int atoms);
/// 0, 1 and k pairs {a_i, a_i⊥} of mutually incomparable atoms.
FiniteOml mo_lattice(int pairs);
/// Chain 0 < c_1 < ... < 1 of the given length with the order-reversing
/// involution; an orthomodular lattice only for length <= 2.
FiniteOml chain_lattice(int length);
/// Glues the bottoms and tops of the summands together.
FiniteOml horizontal_sum(const std::vector<FiniteOml>& summands);

// ---------------------------------------------------------------------------
// Set-based lattices

using Mask = std::uint64_t;
inline constexpr int kMaxGround = 64;

/// A family of subsets of a finite ground set (bitmasks, |X| <= 64) with an
/// orthocomplement table on the members. Order is inclusion; meet is the
/// member equal to the intersection (when present); join is the least
/// member containing the union (when present).
class SetOml {
 public:
  SetOml() = default;

  /// Throws StructuralError for an empty or oversize ground set, duplicate
  /// members, masks with bits outside the ground set, or bad ortho tables.
  SetOml(std::vector<std::string> ground, std::vector<Mask> members, std::vector<int> ortho);

  int ground_size() const noexcept { return static_cast<int>(ground_.size()); }
  const std::vector<std::string>& ground() const noexcept { return ground_; }
  int size() const noexcept { return static_cast<int>(members_.size()); }
  const std::vector<Mask>& members() const noexcept { return members_; }
  Mask member(int i) const { return members_.at(static_cast<std::size_t>(i)); }
  int ortho(int i) const { return ortho_.at(static_cast<std::size_t>(i)); }
  const std::vector<int>& ortho_table() const noexcept { return ortho_; }
  Mask full_mask() const noexcept;

  /// Index of the member equal to `mask`, or kNone.
  int index_of(Mask mask) const;
  int meet(int i, int j) const;
  int join(int i, int j) const;

  /// Members ordered by inclusion, as an explicit table lattice.
  FiniteOml as_lattice() const;

 private:
  std::vector<std::string> ground_;
  std::vector<Mask> members_;
  std::vector<int> ortho_;
};

/// Empty iff the family is an orthomodular lattice under inclusion and the
/// six quantum-set conditions hold. Witnesses for qset.2 are ground points;
/// all other witnesses are member indices.
AxiomReport verify_quantum_set(const SetOml& set);

/// Members below `y` with orthocomplement u ↦ y ∧ u⊥, re-indexed onto the
/// points of `y`. Throws DomainError when `y` is not a member index.
SetOml relative_lattice(const SetOml& set, int y);

struct QMapCheck {
  bool q_map = false;
  std::optional<Mask> witness;  // first member of the target with a non-member preimage
};

/// `f[x]` is the image of ground point x of `source` in the ground of `target`.
QMapCheck is_q_map(const std::vector<int>& f, const SetOml& source, const SetOml& target);

/// Compress the bits of `mask` selected by `within` into the low bits.
Mask compress_mask(Mask mask, Mask within);
/// Inverse of compress_mask.
Mask expand_mask(Mask compressed, Mask within);

/// (X, P(X)) for |X| = n.
SetOml powerset_oml(int points);
/// MO_k realised on 2k points with each atom a singleton.
SetOml mo_set_oml(int pairs);

}  // namespace ncg::oml
