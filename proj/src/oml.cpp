#include "ncg/oml.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <unordered_map>

#include "ncg/errors.hpp"

namespace ncg::oml {

FiniteOml::FiniteOml(std::vector<std::vector<bool>> leq, std::vector<Element> ortho,
                     std::vector<std::string> labels)
    : n_(static_cast<int>(leq.size())), ortho_(std::move(ortho)), labels_(std::move(labels)) {
  if (n_ == 0) throw StructuralError("lattice must have at least one element");
  const auto n = static_cast<std::size_t>(n_);
  for (const auto& row : leq) {
    if (row.size() != n) throw StructuralError("leq table is not square");
  }
  if (ortho_.size() != n) throw StructuralError("ortho table length differs from element count");
  for (Element p : ortho_) {
    if (p < 0 || p >= n_) throw StructuralError("ortho entry out of range");
  }
  if (labels_.empty()) {
    for (int i = 0; i < n_; ++i) labels_.push_back(std::to_string(i));
  } else if (labels_.size() != n) {
    throw StructuralError("label count differs from element count");
  }

  leq_.assign(n * n, 0);
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q) leq_[p * n + q] = leq[p][q] ? 1 : 0;

  for (int p = 0; p < n_; ++p) {
    bool is_bottom = true, is_top = true;
    for (int q = 0; q < n_; ++q) {
      is_bottom = is_bottom && this->leq(p, q);
      is_top = is_top && this->leq(q, p);
    }
    if (is_bottom && bottom_ == kNone) bottom_ = p;
    if (is_top && top_ == kNone) top_ = p;
  }

  meet_.assign(n * n, kNone);
  join_.assign(n * n, kNone);
  lattice_ = bottom_ != kNone && top_ != kNone;
  for (int p = 0; p < n_; ++p) {
    for (int q = 0; q < n_; ++q) {
      Element glb = kNone, lub = kNone;
      for (int m = 0; m < n_ && glb == kNone; ++m) {
        if (!this->leq(m, p) || !this->leq(m, q)) continue;
        bool greatest = true;
        for (int l = 0; l < n_ && greatest; ++l)
          if (this->leq(l, p) && this->leq(l, q) && !this->leq(l, m)) greatest = false;
        if (greatest) glb = m;
      }
      for (int j = 0; j < n_ && lub == kNone; ++j) {
        if (!this->leq(p, j) || !this->leq(q, j)) continue;
        bool least = true;
        for (int u = 0; u < n_ && least; ++u)
          if (this->leq(p, u) && this->leq(q, u) && !this->leq(j, u)) least = false;
        if (least) lub = j;
      }
      meet_[index(p, q)] = glb;
      join_[index(p, q)] = lub;
      lattice_ = lattice_ && glb != kNone && lub != kNone;
    }
  }
}

std::size_t FiniteOml::index(Element p, Element q) const {
  return check(p) * static_cast<std::size_t>(n_) + check(q);
}

std::size_t FiniteOml::check(Element p) const {
  if (p < 0 || p >= n_) throw DomainError("element index " + std::to_string(p) + " out of range");
  return static_cast<std::size_t>(p);
}

Element FiniteOml::find(const std::string& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  return it == labels_.end() ? kNone : static_cast<Element>(it - labels_.begin());
}

std::vector<std::vector<bool>> FiniteOml::leq_table() const {
  std::vector<std::vector<bool>> table(static_cast<std::size_t>(n_),
                                       std::vector<bool>(static_cast<std::size_t>(n_)));
  for (int p = 0; p < n_; ++p)
    for (int q = 0; q < n_; ++q) table[p][q] = leq(p, q);
  return table;
}

AxiomReport verify_oml(const FiniteOml& L) {
  AxiomReport report;
  const int n = L.size();
  bool poset_ok = true;

  for (int p = 0; p < n; ++p) {
    if (!L.leq(p, p)) {
      report.push_back({axiom::kReflexive, {p}});
      poset_ok = false;
    }
  }
  for (int p = 0; p < n; ++p) {
    for (int q = p + 1; q < n; ++q) {
      if (L.leq(p, q) && L.leq(q, p)) {
        report.push_back({axiom::kAntisymmetric, {p, q}});
        poset_ok = false;
      }
    }
  }
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      for (int r = 0; r < n; ++r)
        if (L.leq(p, q) && L.leq(q, r) && !L.leq(p, r)) {
          report.push_back({axiom::kTransitive, {p, q, r}});
          poset_ok = false;
        }

  if (L.bottom() == kNone) report.push_back({axiom::kBottom, {}});
  if (L.top() == kNone) report.push_back({axiom::kTop, {}});
  for (int p = 0; p < n; ++p) {
    for (int q = p + 1; q < n; ++q) {
      if (L.meet(p, q) == kNone) report.push_back({axiom::kMeet, {p, q}});
      if (L.join(p, q) == kNone) report.push_back({axiom::kJoin, {p, q}});
    }
  }

  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      if (L.leq(p, q) && !L.leq(L.ortho(q), L.ortho(p)))
        report.push_back({axiom::kOrderReversing, {p, q}});
  for (int p = 0; p < n; ++p)
    if (L.ortho(L.ortho(p)) != p) report.push_back({axiom::kInvolution, {p}});

  if (!poset_ok || L.bottom() == kNone || L.top() == kNone) return report;

  for (int p = 0; p < n; ++p) {
    const Element j = L.join(p, L.ortho(p));
    const Element m = L.meet(p, L.ortho(p));
    if (j != L.top() || m != L.bottom()) report.push_back({axiom::kComplement, {p}});
  }
  for (int p = 0; p < n; ++p) {
    for (int q = 0; q < n; ++q) {
      if (!L.leq(p, q)) continue;
      const Element inner = L.meet(L.ortho(p), q);
      if (inner == kNone) continue;
      if (L.join(p, inner) != q) report.push_back({axiom::kOrthomodular, {p, q}});
    }
  }
  return report;
}

Element skew_meet(const FiniteOml& L, Element p, Element q) {
  return L.meet(p, L.join(L.ortho(p), q));
}

BooleanCheck is_boolean(const FiniteOml& L) {
  for (int p = 0; p < L.size(); ++p)
    for (int q = p + 1; q < L.size(); ++q)
      if (skew_meet(L, p, q) != skew_meet(L, q, p)) return {false, std::make_pair(p, q)};
  return {true, std::nullopt};
}

std::optional<std::string> check_isomorphism(const FiniteOml& from, const FiniteOml& to,
                                             const std::vector<Element>& map) {
  const int n = from.size();
  if (to.size() != n || static_cast<int>(map.size()) != n) return "element counts differ";
  std::vector<char> hit(static_cast<std::size_t>(n), 0);
  for (int p = 0; p < n; ++p) {
    const Element image = map[static_cast<std::size_t>(p)];
    if (image < 0 || image >= n) return "image of " + from.label(p) + " out of range";
    if (hit[static_cast<std::size_t>(image)]++) return "map is not injective at " + from.label(p);
  }
  for (int p = 0; p < n; ++p) {
    for (int q = 0; q < n; ++q) {
      if (from.leq(p, q) != to.leq(map[p], map[q]))
        return "order not preserved at (" + from.label(p) + ", " + from.label(q) + ")";
    }
    if (map[from.ortho(p)] != to.ortho(map[p]))
      return "orthocomplement not preserved at " + from.label(p);
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------

SetOml::SetOml(std::vector<std::string> ground, std::vector<Mask> members, std::vector<int> ortho)
    : ground_(std::move(ground)), members_(std::move(members)), ortho_(std::move(ortho)) {
  if (ground_.empty()) throw StructuralError("ground set is empty");
  if (ground_.size() > static_cast<std::size_t>(kMaxGround))
    throw StructuralError("ground set larger than 64 points");
  if (ortho_.size() != members_.size())
    throw StructuralError("ortho table length differs from member count");
  const Mask full = full_mask();
  std::unordered_map<Mask, int> seen;
  for (std::size_t i = 0; i < members_.size(); ++i) {
    if ((members_[i] & ~full) != 0) throw StructuralError("member uses points outside the ground set");
    if (!seen.emplace(members_[i], static_cast<int>(i)).second)
      throw StructuralError("duplicate member");
  }
  for (int o : ortho_) {
    if (o < 0 || o >= static_cast<int>(members_.size()))
      throw StructuralError("ortho entry out of range");
  }
}

Mask SetOml::full_mask() const noexcept {
  return ground_.size() >= 64 ? ~Mask{0} : ((Mask{1} << ground_.size()) - 1);
}

int SetOml::index_of(Mask mask) const {
  auto it = std::find(members_.begin(), members_.end(), mask);
  return it == members_.end() ? kNone : static_cast<int>(it - members_.begin());
}

int SetOml::meet(int i, int j) const { return index_of(member(i) & member(j)); }

int SetOml::join(int i, int j) const {
  const Mask u = member(i) | member(j);
  int best = kNone;
  for (int k = 0; k < size(); ++k) {
    const Mask m = members_[static_cast<std::size_t>(k)];
    if ((u & ~m) == 0 && (best == kNone || std::popcount(m) < std::popcount(member(best)))) best = k;
  }
  if (best == kNone) return kNone;
  const Mask b = member(best);
  for (Mask m : members_)
    if ((u & ~m) == 0 && (b & ~m) != 0) return kNone;
  return best;
}

FiniteOml SetOml::as_lattice() const {
  const auto n = members_.size();
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n));
  std::vector<std::string> labels;
  labels.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) leq[i][j] = (members_[i] & ~members_[j]) == 0;
    std::ostringstream label;
    label << '{';
    bool first = true;
    for (std::size_t x = 0; x < ground_.size(); ++x) {
      if (members_[i] >> x & 1) {
        label << (first ? "" : ",") << ground_[x];
        first = false;
      }
    }
    label << '}';
    labels.push_back(label.str());
  }
  return FiniteOml(std::move(leq), ortho_, std::move(labels));
}

namespace {

Mask bit(int x) { return Mask{1} << x; }

std::vector<int> points_of(Mask m) {
  std::vector<int> pts;
  for (int x = 0; m != 0; ++x, m >>= 1)
    if (m & 1) pts.push_back(x);
  return pts;
}

}  // namespace

AxiomReport verify_quantum_set(const SetOml& S) {
  AxiomReport report;
  const int g = S.ground_size();
  if (S.index_of(0) == kNone || S.index_of(S.full_mask()) == kNone)
    report.push_back({axiom::kQsetBounds, {}});

  std::vector<int> singleton(static_cast<std::size_t>(g), kNone);
  for (int x = 0; x < g; ++x) {
    singleton[x] = S.index_of(bit(x));
    if (singleton[x] == kNone) report.push_back({axiom::kQsetSingleton, {x}});
  }

  for (auto& v : verify_oml(S.as_lattice())) report.push_back(std::move(v));

  const int m = S.size();
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      if (S.meet(i, j) == kNone) report.push_back({axiom::kQsetMeet, {i, j}});

  // singleton joins {x} ∨ {y} as masks; 0 marks an undefined join
  std::vector<Mask> pair_join(static_cast<std::size_t>(g * g), 0);
  for (int x = 0; x < g; ++x)
    for (int y = 0; y < g; ++y)
      if (singleton[x] != kNone && singleton[y] != kNone) {
        const int j = S.join(singleton[x], singleton[y]);
        if (j != kNone) pair_join[static_cast<std::size_t>(x * g + y)] = S.member(j);
      }

  for (int i = 0; i < m; ++i) {
    for (int j = i; j < m; ++j) {
      const Mask u = S.member(i), v = S.member(j);
      if (u == 0 || v == 0) continue;
      const int joined = S.join(i, j);
      if (joined == kNone) continue;
      Mask formula = 0;
      for (int x : points_of(u))
        for (int y : points_of(v)) formula |= pair_join[static_cast<std::size_t>(x * g + y)];
      if (formula != S.member(joined)) report.push_back({axiom::kQsetJoin, {i, j}});
    }
  }

  for (int i = 0; i < m; ++i) {
    const Mask u = S.member(i);
    const auto pts = points_of(u);
    const auto k = pts.size();
    if (k < 2) continue;
    auto family_ok = [&](const std::vector<int>& family) {
      int acc = singleton[family.front()];
      for (std::size_t f = 1; f < family.size() && acc != kNone; ++f) {
        const int s = singleton[family[f]];
        acc = s == kNone ? kNone : S.join(acc, s);
      }
      return acc != kNone && (S.member(acc) & ~u) == 0;
    };
    if (k <= 10) {
      for (std::uint32_t sel = 1; sel < (1u << k); ++sel) {
        if (std::popcount(sel) < 2) continue;
        std::vector<int> family;
        for (std::size_t b = 0; b < k; ++b)
          if (sel >> b & 1) family.push_back(pts[b]);
        if (!family_ok(family)) {
          std::vector<int> witness{i};
          witness.insert(witness.end(), family.begin(), family.end());
          report.push_back({axiom::kQsetClosure, witness});
          break;
        }
      }
    } else {
      for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = a + 1; b < k; ++b)
          if (!family_ok({pts[a], pts[b]})) report.push_back({axiom::kQsetClosure, {i, pts[a], pts[b]}});
    }
  }
  return report;
}

Mask compress_mask(Mask mask, Mask within) {
  Mask out = 0;
  int k = 0;
  for (int x = 0; x < 64; ++x) {
    if (!(within >> x & 1)) continue;
    if (mask >> x & 1) out |= Mask{1} << k;
    ++k;
  }
  return out;
}

Mask expand_mask(Mask compressed, Mask within) {
  Mask out = 0;
  int k = 0;
  for (int x = 0; x < 64; ++x) {
    if (!(within >> x & 1)) continue;
    if (compressed >> k & 1) out |= Mask{1} << x;
    ++k;
  }
  return out;
}

SetOml relative_lattice(const SetOml& S, int y) {
  if (y < 0 || y >= S.size()) throw DomainError("relative lattice: not a member index");
  const Mask Y = S.member(y);
  if (Y == 0) throw DomainError("relative lattice of the empty member has an empty ground set");

  std::vector<std::string> ground;
  for (int x : points_of(Y)) ground.push_back(S.ground()[static_cast<std::size_t>(x)]);

  std::vector<int> kept;
  std::vector<Mask> members;
  for (int i = 0; i < S.size(); ++i) {
    if ((S.member(i) & ~Y) == 0) {
      kept.push_back(i);
      members.push_back(compress_mask(S.member(i), Y));
    }
  }
  std::vector<int> ortho;
  for (int i : kept) {
    const Mask rel = compress_mask(Y & S.member(S.ortho(i)), Y);
    auto it = std::find(members.begin(), members.end(), rel);
    if (it == members.end()) throw DomainError("relative complement is not a member below y");
    ortho.push_back(static_cast<int>(it - members.begin()));
  }
  return SetOml(std::move(ground), std::move(members), std::move(ortho));
}

QMapCheck is_q_map(const std::vector<int>& f, const SetOml& source, const SetOml& target) {
  if (static_cast<int>(f.size()) != source.ground_size())
    throw StructuralError("point map is not total on the source ground set");
  for (int y : f)
    if (y < 0 || y >= target.ground_size()) throw StructuralError("point map leaves the target ground set");
  for (Mask u : target.members()) {
    Mask pre = 0;
    for (std::size_t x = 0; x < f.size(); ++x)
      if (u >> f[x] & 1) pre |= Mask{1} << x;
    if (source.index_of(pre) == kNone) return {false, u};
  }
  return {true, std::nullopt};
}

SetOml powerset_oml(int points) {
  if (points < 1 || points > 16) throw StructuralError("powerset_oml supports 1..16 points");
  std::vector<std::string> ground;
  for (int x = 0; x < points; ++x) ground.push_back("x" + std::to_string(x));
  const Mask full = (Mask{1} << points) - 1;
  std::vector<Mask> members;
  std::vector<int> ortho;
  for (Mask m = 0; m <= full; ++m) {
    members.push_back(m);
    ortho.push_back(static_cast<int>(full & ~m));
  }
  return SetOml(std::move(ground), std::move(members), std::move(ortho));
}

SetOml mo_set_oml(int pairs) {
  if (pairs < 1 || pairs > 32) throw StructuralError("mo_set_oml supports 1..32 pairs");
  std::vector<std::string> ground;
  for (int k = 0; k < pairs; ++k) {
    const std::string name = pairs <= 26 ? std::string(1, static_cast<char>('a' + k)) : "a" + std::to_string(k);
    ground.push_back(name);
    ground.push_back(name + "'");
  }
  const int g = 2 * pairs;
  std::vector<Mask> members{0};
  std::vector<int> ortho{g + 1};
  for (int x = 0; x < g; ++x) {
    members.push_back(bit(x));
    ortho.push_back(1 + (x ^ 1));
  }
  members.push_back(g == 64 ? ~Mask{0} : (Mask{1} << g) - 1);
  ortho.push_back(0);
  return SetOml(std::move(ground), std::move(members), std::move(ortho));
}

}  // namespace ncg::oml
