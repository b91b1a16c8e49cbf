#include "ncg/sasaki.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <map>
#include <sstream>

namespace ncg::sasaki {

const char* to_string(Formula f) {
  return f == Formula::Classical ? "classical" : "literal";
}

const char* to_string(SaturationStatus s) {
  switch (s) {
    case SaturationStatus::Saturated: return "saturated";
    case SaturationStatus::NotSaturated: return "not-saturated";
    case SaturationStatus::Inconclusive: return "inconclusive";
  }
  return "?";
}

bool is_monotone(const FiniteOml& L, const MonotoneMap& map) {
  for (int p = 0; p < L.size(); ++p)
    for (int q = 0; q < L.size(); ++q)
      if (L.leq(p, q) && !L.leq(map(p), map(q))) return false;
  return true;
}

MonotoneMap identity_map(const FiniteOml& L) {
  MonotoneMap id;
  id.action.resize(static_cast<std::size_t>(L.size()));
  for (int p = 0; p < L.size(); ++p) id.action[p] = p;
  return id;
}

MonotoneMap compose(const MonotoneMap& f, const MonotoneMap& g) {
  MonotoneMap out;
  out.action.reserve(g.action.size());
  for (Element q : g.action) out.action.push_back(f(q));
  return out;
}

MonotoneMap sasaki_map(const FiniteOml& L, Element p, Formula formula) {
  MonotoneMap out;
  out.action.resize(static_cast<std::size_t>(L.size()));
  for (int q = 0; q < L.size(); ++q) {
    out.action[q] = formula == Formula::Classical ? L.meet(p, L.join(L.ortho(p), q)) : L.meet(p, q);
  }
  return out;
}

std::size_t MapHash::operator()(const std::vector<Element>& v) const noexcept {
  std::size_t h = 0xcbf29ce484222325ull;
  for (Element e : v) {
    h ^= static_cast<std::size_t>(e) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return h;
}

int BaerSemigroup::find(const MonotoneMap& map) const {
  auto it = index.find(map.action);
  return it == index.end() ? -1 : it->second;
}

int BaerSemigroup::compose(int i, int j) const {
  return find(sasaki::compose(elements.at(static_cast<std::size_t>(i)),
                              elements.at(static_cast<std::size_t>(j))));
}

std::vector<std::vector<int>> BaerSemigroup::composition_table() const {
  const int n = static_cast<int>(size());
  std::vector<std::vector<int>> table(size(), std::vector<int>(size(), -1));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) table[i][j] = compose(i, j);
  return table;
}

MonotoneMap BaerSemigroup::evaluate_word(const FiniteOml& L, const std::vector<Element>& word) const {
  MonotoneMap acc = identity_map(L);
  for (Element p : word) acc = sasaki::compose(acc, sasaki_map(L, p, formula));
  return acc;
}

SemigroupBudgetExceeded::SemigroupBudgetExceeded(BaerSemigroup partial, std::size_t frontier)
    : BudgetExceeded("semigroup enumeration exceeded its budget of " +
                         std::to_string(partial.size()) + " elements",
                     partial.size(), frontier),
      partial_(std::move(partial)) {}

namespace {

void resolve_involutions(const FiniteOml& L, BaerSemigroup& S) {
  S.star.assign(S.size(), -1);
  S.perp.assign(S.size(), -1);
  for (std::size_t i = 0; i < S.size(); ++i) {
    std::vector<Element> reversed(S.words[i].rbegin(), S.words[i].rend());
    S.star[i] = S.find(S.evaluate_word(L, reversed));
    for (Element& p : reversed) p = L.ortho(p);
    S.perp[i] = S.find(S.evaluate_word(L, reversed));
  }
}

}  // namespace

BaerSemigroup enumerate_semigroup(const FiniteOml& L, std::size_t cap, Formula formula) {
  BaerSemigroup S;
  S.formula = formula;
  std::vector<MonotoneMap> generators;
  for (int p = 0; p < L.size(); ++p) generators.push_back(sasaki_map(L, p, formula));

  std::deque<int> queue;
  auto add = [&](MonotoneMap map, std::vector<Element> word) {
    auto [it, inserted] = S.index.emplace(map.action, static_cast<int>(S.size()));
    if (!inserted) return it->second;
    S.elements.push_back(std::move(map));
    S.words.push_back(std::move(word));
    queue.push_back(it->second);
    if (S.size() > cap) {
      // drop the overflow element so the partial result respects the budget
      S.index.erase(S.elements.back().action);
      S.elements.pop_back();
      S.words.pop_back();
      queue.pop_back();
      S.complete = false;
      S.generator_of.resize(static_cast<std::size_t>(L.size()), -1);
      resolve_involutions(L, S);
      S.identity = S.find(identity_map(L));
      throw SemigroupBudgetExceeded(std::move(S), queue.size() + 1);
    }
    return it->second;
  };

  S.generator_of.reserve(static_cast<std::size_t>(L.size()));
  for (int p = 0; p < L.size(); ++p) S.generator_of.push_back(add(generators[p], {p}));

  while (!queue.empty()) {
    const int i = queue.front();
    queue.pop_front();
    for (int p = 0; p < L.size(); ++p) {
      MonotoneMap next = compose(S.elements[i], generators[p]);
      if (S.index.count(next.action)) continue;
      auto word = S.words[i];
      word.push_back(p);
      add(std::move(next), std::move(word));
    }
  }
  S.complete = true;
  S.identity = S.find(identity_map(L));
  resolve_involutions(L, S);
  return S;
}

bool SemigroupAudit::clean() const noexcept {
  return non_monotone == 0 && star_unresolved == 0 && star_not_involutive == 0 &&
         star_not_antihomomorphic == 0 && adjoint_law_failures == 0 && generators_not_self_adjoint == 0 &&
         non_idempotent_generators == 0 && contains_identity;
}

namespace {

bool adjoint_pair(const FiniteOml& L, const MonotoneMap& phi, const MonotoneMap& psi) {
  for (int p = 0; p < L.size(); ++p) {
    const Element pp = L.ortho(p);
    if (!L.leq(phi(L.ortho(psi(pp))), p)) return false;
    if (!L.leq(psi(L.ortho(phi(pp))), p)) return false;
  }
  return true;
}

}  // namespace

SemigroupAudit audit_semigroup(const FiniteOml& L, const BaerSemigroup& S) {
  SemigroupAudit audit;
  const int n = static_cast<int>(S.size());
  audit.contains_identity = S.identity >= 0;
  for (int i = 0; i < n; ++i) {
    if (!is_monotone(L, S.elements[i])) ++audit.non_monotone;
    const int s = S.star[i];
    if (s < 0) {
      ++audit.star_unresolved;
      continue;
    }
    if (S.star[s] != i) ++audit.star_not_involutive;
    if (!adjoint_pair(L, S.elements[i], S.elements[s])) ++audit.adjoint_law_failures;
  }
  // pairwise laws; quadratic, so bounded for large semigroups
  const int limit = std::min(n, 1500);
  for (int i = 0; i < limit; ++i) {
    for (int j = 0; j < limit; ++j) {
      const int k = S.compose(i, j);
      if (k < 0) continue;
      if (S.star[i] >= 0 && S.star[j] >= 0 && S.star[k] != S.compose(S.star[j], S.star[i]))
        ++audit.star_not_antihomomorphic;
      if (S.perp[i] >= 0 && S.perp[j] >= 0 && S.perp[k] != S.compose(S.perp[j], S.perp[i]))
        ++audit.perp_not_antihomomorphic;
    }
  }
  for (int p = 0; p < L.size(); ++p) {
    const auto phi = sasaki_map(L, p, S.formula);
    if (!adjoint_pair(L, phi, phi)) ++audit.generators_not_self_adjoint;
    if (!(compose(phi, phi) == phi)) ++audit.non_idempotent_generators;
  }
  return audit;
}

ClosedProjections closed_projections(const FiniteOml& L, const BaerSemigroup& S) {
  if (!S.complete) throw DomainError("closed projections need a fully enumerated semigroup");
  ClosedProjections out;
  const int n = static_cast<int>(S.size());
  for (int i = 0; i < n; ++i) {
    if (S.compose(i, i) != i || S.star[i] != i) continue;
    if (S.perp[i] < 0 || S.perp[S.perp[i]] != i) continue;
    out.elements.push_back(i);
  }
  const auto m = out.elements.size();
  std::vector<int> position(S.size(), -1);
  for (std::size_t k = 0; k < m; ++k) position[out.elements[k]] = static_cast<int>(k);

  std::vector<std::vector<bool>> leq(m, std::vector<bool>(m));
  std::vector<Element> ortho(m);
  std::vector<std::string> labels(m);
  for (std::size_t a = 0; a < m; ++a) {
    const int phi = out.elements[a];
    for (std::size_t b = 0; b < m; ++b) {
      const int psi = out.elements[b];
      leq[a][b] = S.compose(phi, psi) == phi && S.compose(psi, phi) == phi;
    }
    const int perp = position[S.perp[phi]];
    if (perp < 0) {
      out.failures.push_back("perp of element " + std::to_string(phi) + " is not a closed projection");
      ortho[a] = static_cast<Element>(a);
    } else {
      ortho[a] = perp;
    }
    labels[a] = "#" + std::to_string(phi);
  }

  out.embedding.assign(static_cast<std::size_t>(L.size()), -1);
  std::vector<int> sasaki_set;
  for (int p = 0; p < L.size(); ++p) {
    const int g = S.generator_of[p];
    sasaki_set.push_back(g);
    out.embedding[p] = position[g];
    if (out.embedding[p] >= 0) labels[out.embedding[p]] = "phi_" + L.label(p);
  }
  std::sort(sasaki_set.begin(), sasaki_set.end());
  sasaki_set.erase(std::unique(sasaki_set.begin(), sasaki_set.end()), sasaki_set.end());
  out.equals_sasaki_set = sasaki_set == out.elements;
  if (!out.equals_sasaki_set) {
    out.failures.push_back("closed projections (" + std::to_string(m) +
                           ") differ from the Sasaki set (" + std::to_string(sasaki_set.size()) + ")");
  }

  if (m == 0) {
    out.failures.push_back("no closed projections");
    return out;
  }
  out.lattice = FiniteOml(std::move(leq), std::move(ortho), std::move(labels));
  bool embedded = std::none_of(out.embedding.begin(), out.embedding.end(), [](int e) { return e < 0; });
  if (!embedded) {
    out.failures.push_back("some Sasaki projection is not closed");
  } else if (auto why = oml::check_isomorphism(L, out.lattice, out.embedding)) {
    out.failures.push_back(*why);
  } else {
    out.isomorphic = true;
  }
  return out;
}

std::vector<FormulaComparison> compare_formulas(const FiniteOml& L, std::size_t cap) {
  std::vector<FormulaComparison> rows;
  for (Formula f : {Formula::Classical, Formula::Literal}) {
    FormulaComparison row{f};
    try {
      const auto S = enumerate_semigroup(L, cap, f);
      row.semigroup_size = S.size();
      std::vector<int> gens = S.generator_of;
      std::sort(gens.begin(), gens.end());
      gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
      row.sasaki_set_closed = gens.size() == S.size();
      row.commutative = true;
      const int n = static_cast<int>(S.size());
      for (int i = 0; i < n && row.commutative; ++i)
        for (int j = i + 1; j < n && row.commutative; ++j)
          if (S.compose(i, j) != S.compose(j, i)) row.commutative = false;
      row.adjoint_law_failures = audit_semigroup(L, S).adjoint_law_failures;
      const auto closed = closed_projections(L, S);
      row.closed_projection_count = closed.elements.size();
      row.recovers_lattice = closed.isomorphic;
    } catch (const SemigroupBudgetExceeded& e) {
      row.semigroup_size = e.partial().size();
    }
    rows.push_back(row);
  }
  return rows;
}

// ---------------------------------------------------------------------------

QSetSemigroup make_qset_semigroup(const SetOml& set, std::size_t cap, Formula formula) {
  QSetSemigroup q{set, set.as_lattice(), {}, {}};
  q.semigroup = enumerate_semigroup(q.lattice, cap, formula);
  const Element top = q.lattice.top();
  if (top == oml::kNone) throw DomainError("quantum set lattice has no top element");
  q.subset.reserve(q.semigroup.size());
  for (const auto& phi : q.semigroup.elements) q.subset.push_back(set.member(phi(top)));
  return q;
}

namespace {

void require_member(const QSetSemigroup& q, const QSemigroupElement& u) {
  if (u.map < 0 || u.map >= static_cast<int>(q.semigroup.size()))
    throw DomainError("element is not in the semigroup");
  if (q.subset[u.map] != u.subset) throw DomainError("element subset does not match its map");
}

}  // namespace

QSemigroupElement qset_element(const QSetSemigroup& q, int map) {
  if (map < 0 || map >= static_cast<int>(q.semigroup.size()))
    throw DomainError("element is not in the semigroup");
  return {map, q.subset[map]};
}

QSemigroupElement qset_member(const QSetSemigroup& q, Mask member) {
  const int p = q.set.index_of(member);
  if (p < 0) throw DomainError("subset is not a member of L(X)");
  return qset_element(q, q.semigroup.generator_of[p]);
}

QSemigroupElement qset_star(const QSetSemigroup& q, const QSemigroupElement& u,
                            const QSemigroupElement& v) {
  require_member(q, u);
  require_member(q, v);
  const int k = q.semigroup.compose(u.map, v.map);
  if (k < 0) throw DomainError("product escapes the enumerated semigroup");
  return {k, q.subset[k]};
}

QSemigroupElement qset_involution(const QSetSemigroup& q, const QSemigroupElement& u) {
  require_member(q, u);
  return qset_element(q, q.semigroup.star[u.map]);
}

QSemigroupElement qset_perp(const QSetSemigroup& q, const QSemigroupElement& u) {
  require_member(q, u);
  return qset_element(q, q.semigroup.perp[u.map]);
}

InjectivityCheck subset_map_injective(const QSetSemigroup& q) {
  std::map<Mask, int> first;
  for (int i = 0; i < static_cast<int>(q.subset.size()); ++i) {
    auto [it, inserted] = first.emplace(q.subset[i], i);
    if (!inserted) return {false, std::make_pair(it->second, i)};
  }
  return {};
}

SimpleFunction chi(const QSemigroupElement& u, Complex coefficient) {
  return SimpleFunction{{{u.map, coefficient}}};
}

bool is_canonical(const SimpleFunction& f) {
  for (std::size_t k = 0; k < f.terms.size(); ++k) {
    if (f.terms[k].second == Complex(0.0)) return false;
    if (k > 0 && f.terms[k - 1].first >= f.terms[k].first) return false;
  }
  return true;
}

SimpleFunction canonicalize(const SimpleFunction& f) {
  std::map<int, Complex> acc;
  for (const auto& [key, c] : f.terms) acc[key] += c;
  SimpleFunction out;
  for (const auto& [key, c] : acc)
    if (c != Complex(0.0)) out.terms.emplace_back(key, c);
  return out;
}

SimpleFunction chi_star(const QSetSemigroup& q, const SimpleFunction& f, const SimpleFunction& g,
                        std::vector<std::string>* notes) {
  auto prepare = [&](const SimpleFunction& h, const char* name) {
    if (is_canonical(h)) return h;
    if (notes) notes->push_back(std::string("chi_star: normalised non-canonical operand ") + name);
    return canonicalize(h);
  };
  const auto a = prepare(f, "f");
  const auto b = prepare(g, "g");
  SimpleFunction out;
  for (const auto& [i, c] : a.terms) {
    for (const auto& [j, d] : b.terms) {
      const auto k = qset_star(q, qset_element(q, i), qset_element(q, j));
      out.terms.emplace_back(k.map, c * d);
    }
  }
  return canonicalize(out);
}

Complex evaluate(const QSetSemigroup& q, const SimpleFunction& f, int x) {
  if (x < 0 || x >= q.set.ground_size()) throw DomainError("point outside the ground set");
  Complex v = 0.0;
  for (const auto& [key, c] : f.terms)
    if (q.subset.at(static_cast<std::size_t>(key)) >> x & 1) v += c;
  return v;
}

std::vector<Complex> point_values(const QSetSemigroup& q, const SimpleFunction& f) {
  std::vector<Complex> values;
  for (int x = 0; x < q.set.ground_size(); ++x) values.push_back(evaluate(q, f, x));
  return values;
}

double sup_norm(const QSetSemigroup& q, const SimpleFunction& f) {
  double best = 0.0;
  for (const Complex& v : point_values(q, f)) best = std::max(best, std::abs(v));
  return best;
}

double coefficient_norm(const SimpleFunction& f) {
  double total = 0.0;
  for (const auto& term : f.terms) total += std::abs(term.second);
  return total;
}

RepresentationProbe probe_representation_dependence(const QSetSemigroup& q) {
  RepresentationProbe probe;
  std::map<Mask, std::vector<int>> groups;
  for (int i = 0; i < static_cast<int>(q.subset.size()); ++i) groups[q.subset[i]].push_back(i);
  const int n = static_cast<int>(q.semigroup.size());
  for (const auto& [mask, maps] : groups) {
    for (std::size_t a = 0; a < maps.size(); ++a) {
      for (std::size_t b = a + 1; b < maps.size(); ++b) {
        for (int r = 0; r < n; ++r) {
          ++probe.pairs_checked;
          const int left = q.semigroup.compose(maps[a], r);
          const int right = q.semigroup.compose(maps[b], r);
          if (left < 0 || right < 0) continue;
          if (q.subset[left] != q.subset[right]) {
            probe.well_defined = false;
            probe.witness = std::make_tuple(maps[a], maps[b], r);
            return probe;
          }
        }
      }
    }
  }
  return probe;
}

SaturationResult saturation_check(const SetOml& X, int y, const std::vector<std::pair<int, int>>& pairs,
                                  std::size_t cap) {
  SaturationResult result;
  const SetOml Ysub = relative_lattice(X, y);
  const Mask Y = X.member(y);
  const FiniteOml LX = X.as_lattice();
  const FiniteOml LY = Ysub.as_lattice();

  // (U ∧ Y) *_Y (V ∧ Y) for members U, V of L(X), returned as a mask on X
  auto star_in_y = [&](Mask u, Mask v) -> Mask {
    const int uy = Ysub.index_of(oml::compress_mask(u & Y, Y));
    const int vy = Ysub.index_of(oml::compress_mask(v & Y, Y));
    if (uy < 0 || vy < 0) throw DomainError("meet with Y is not a member of L(Y)");
    return oml::expand_mask(Ysub.member(oml::skew_meet(LY, uy, vy)), Y);
  };

  std::vector<std::pair<int, int>> todo = pairs;
  if (todo.empty()) {
    for (int u = 0; u < X.size(); ++u)
      for (int v = 0; v < X.size(); ++v) todo.emplace_back(u, v);
  }
  int worst = -1;
  for (const auto& [u, v] : todo) {
    ++result.pairs_checked;
    const Mask rhs = X.member(oml::skew_meet(LX, u, v)) & Y;
    const Mask lhs = star_in_y(X.member(u), X.member(v));
    if (lhs == rhs) continue;
    const int gap = std::popcount(lhs ^ rhs);
    if (gap > worst) {
      worst = gap;
      result.witness = std::make_pair(u, v);
      result.lhs = lhs;
      result.rhs = rhs;
    }
  }

  bool budget_hit = false;
  try {
    const auto q = make_qset_semigroup(X, cap, Formula::Classical);
    const int limit = std::min<int>(static_cast<int>(q.semigroup.size()), 512);
    std::size_t mismatches = 0;
    for (int i = 0; i < limit; ++i) {
      for (int j = 0; j < limit; ++j) {
        const int k = q.semigroup.compose(i, j);
        if (k < 0) continue;
        ++result.restriction_pairs_checked;
        if (star_in_y(q.subset[i], q.subset[j]) != (q.subset[k] & Y)) ++mismatches;
      }
    }
    result.restriction_identity = mismatches == 0;
  } catch (const SemigroupBudgetExceeded&) {
    budget_hit = true;
  }

  if (result.witness) {
    result.status = SaturationStatus::NotSaturated;
  } else if (budget_hit) {
    result.status = SaturationStatus::Inconclusive;
  } else {
    result.status = SaturationStatus::Saturated;
  }
  return result;
}

}  // namespace ncg::sasaki
