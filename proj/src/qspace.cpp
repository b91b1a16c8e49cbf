#include "ncg/qspace.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "ncg/errors.hpp"

namespace ncg::qspace {

using linalg::op_norm;
using linalg::proj_join;
using linalg::proj_meet;
using linalg::proj_ortho;

const char* to_string(JoinMode mode) { return mode == JoinMode::Superposition ? "superposition" : "literal"; }

JoinMode parse_join_mode(const std::string& text) {
  if (text == "superposition") return JoinMode::Superposition;
  if (text == "literal") return JoinMode::Literal;
  throw DomainError("unknown join mode '" + text + "'");
}

namespace {

void require_subspaces(const QSubset& u) {
  if (u.mode != JoinMode::Superposition)
    throw UnsupportedMode("operation needs superposition-mode subsets with subspace components");
}

void require_compatible(const QSubset& u, const QSubset& v) {
  require_subspaces(u);
  require_subspaces(v);
  if (u.components.size() != v.components.size()) throw DomainError("subsets belong to different algebras");
}

bool same_ray(const CVector& x, const CVector& y, double tol) { return std::abs(x.dot(y)) >= 1.0 - tol; }

void add_point(std::vector<CVector>& pts, const CVector& v, double tol) {
  for (const auto& p : pts)
    if (same_ray(p, v, tol)) return;
  pts.push_back(v);
}

Projector line(const CVector& v) { return Projector(v * v.adjoint()); }

}  // namespace

bool QSubset::contains(const PureState& state, const ToleranceConfig& tol) const {
  if (mode == JoinMode::Superposition) {
    if (state.block < 0 || state.block >= static_cast<int>(components.size())) return false;
    const auto& p = components[state.block].matrix();
    return (p * state.vector - state.vector).norm() <= tol.lattice_tol;
  }
  if (state.block < 0 || state.block >= static_cast<int>(points.size())) return false;
  return std::any_of(points[state.block].begin(), points[state.block].end(),
                     [&](const CVector& p) { return same_ray(p, state.vector, tol.lattice_tol); });
}

bool QSubset::empty() const {
  if (mode == JoinMode::Superposition)
    return std::all_of(components.begin(), components.end(), [](const Projector& p) { return p.rank() == 0; });
  return std::all_of(points.begin(), points.end(), [](const auto& v) { return v.empty(); });
}

QSubset empty_subset(const AlgebraInstance& instance, JoinMode mode) {
  QSubset u;
  u.mode = mode;
  for (const auto& b : instance.blocks.blocks) {
    if (mode == JoinMode::Superposition)
      u.components.push_back(Projector::zero(b.irrep_dim));
    else
      u.points.emplace_back();
  }
  return u;
}

QSubset full_subset(const AlgebraInstance& instance) {
  QSubset u;
  for (const auto& b : instance.blocks.blocks) u.components.push_back(Projector::identity(b.irrep_dim));
  return u;
}

QSubset subset_from_projectors(const AlgebraInstance& instance, std::vector<Projector> components) {
  if (static_cast<int>(components.size()) != instance.block_count())
    throw DomainError("one projector per block is required");
  for (std::size_t i = 0; i < components.size(); ++i)
    if (components[i].dim() != instance.blocks.blocks[i].irrep_dim)
      throw DomainError("component projector does not match its block dimension");
  QSubset u;
  u.components = std::move(components);
  return u;
}

QSubset range_subset(const AlgebraInstance& instance, const Projector& p, const ToleranceConfig& tol) {
  if (!instance.algebra.contains(p.matrix(), tol)) throw DomainError("projection does not belong to the algebra");
  std::vector<Projector> comps;
  for (const auto& b : instance.blocks.blocks) comps.emplace_back(algebra::block_image(b, p.matrix()), tol.lattice_tol);
  return subset_from_projectors(instance, std::move(comps));
}

QSubset singleton_join(const AlgebraInstance& instance, const PureState& a, const PureState& b, JoinMode mode,
                       const ToleranceConfig& tol) {
  a.validate(instance, tol);
  b.validate(instance, tol);
  QSubset u = empty_subset(instance, mode);
  if (mode == JoinMode::Superposition) {
    if (algebra::gns_equivalent(a, b)) {
      CMatrix cols(a.vector.size(), 2);
      cols << a.vector, b.vector;
      u.components[a.block] = Projector::from_basis(cols, static_cast<int>(a.vector.size()), tol);
    } else {
      u.components[a.block] = line(a.vector);
      u.components[b.block] = line(b.vector);
    }
    return u;
  }
  add_point(u.points[a.block], a.vector, tol.lattice_tol);
  add_point(u.points[b.block], b.vector, tol.lattice_tol);
  if (!algebra::gns_equivalent(a, b) || same_ray(a.vector, b.vector, tol.lattice_tol)) return u;

  // c₁ρ_α + c₂ρ_β with ρ_α, ρ_β independent: Hermiticity forces real c,
  // trace one forces c₁ + c₂ = 1, and the unit circle meets that line only
  // at the corners. Each candidate is still validated as a pure state.
  const CMatrix ra = a.vector * a.vector.adjoint();
  const CMatrix rb = b.vector * b.vector.adjoint();
  for (const auto& [c1, c2] : {std::pair<double, double>{1, 0}, {0, 1}}) {
    const CMatrix rho = c1 * ra + c2 * rb;
    const auto es = linalg::hermitian_eig(rho, tol);
    const auto d = es.values.size();
    if (es.values(0) < -tol.rank_tol || (d > 1 && es.values(d - 2) > tol.rank_tol)) continue;
    if (std::abs(rho.trace().real() - 1.0) > tol.rank_tol) continue;
    add_point(u.points[a.block], es.vectors.col(d - 1), tol.lattice_tol);
  }
  return u;
}

QSubset qsubset_closure(const AlgebraInstance& instance, const std::vector<PureState>& seeds, JoinMode mode,
                        const ToleranceConfig& tol) {
  if (seeds.empty()) throw DomainError("closure needs at least one seed");
  QSubset u = empty_subset(instance, mode);
  if (mode == JoinMode::Literal) {
    for (const auto& s : seeds) {
      s.validate(instance, tol);
      add_point(u.points[s.block], s.vector, tol.lattice_tol);
    }
    return reclose(instance, u, tol);
  }
  std::vector<std::vector<CVector>> per_block(static_cast<std::size_t>(instance.block_count()));
  for (const auto& s : seeds) {
    s.validate(instance, tol);
    per_block[s.block].push_back(s.vector);
  }
  for (std::size_t i = 0; i < per_block.size(); ++i) {
    if (per_block[i].empty()) continue;
    const int d = instance.blocks.blocks[i].irrep_dim;
    CMatrix cols(d, static_cast<Eigen::Index>(per_block[i].size()));
    for (std::size_t k = 0; k < per_block[i].size(); ++k) cols.col(static_cast<Eigen::Index>(k)) = per_block[i][k];
    u.components[i] = Projector::from_basis(cols, d, tol);
  }
  return u;
}

QSubset reclose(const AlgebraInstance& instance, const QSubset& u, const ToleranceConfig& tol) {
  if (u.mode == JoinMode::Superposition) {
    std::vector<PureState> members;
    for (std::size_t i = 0; i < u.components.size(); ++i) {
      const CMatrix basis = u.components[i].range(tol);
      for (Eigen::Index c = 0; c < basis.cols(); ++c) members.push_back({static_cast<int>(i), basis.col(c)});
    }
    if (members.empty()) return empty_subset(instance);
    QSubset out = qsubset_closure(instance, members, JoinMode::Superposition, tol);
    // pairwise joins of the spanning members stay inside the closure
    for (std::size_t x = 0; x < members.size(); ++x)
      for (std::size_t y = x + 1; y < members.size(); ++y)
        out = q_join(out, singleton_join(instance, members[x], members[y], JoinMode::Superposition, tol), tol);
    return out;
  }
  QSubset out = u;
  bool grown = true;
  while (grown) {
    grown = false;
    std::vector<PureState> members;
    for (std::size_t i = 0; i < out.points.size(); ++i)
      for (const auto& p : out.points[i]) members.push_back({static_cast<int>(i), p});
    for (std::size_t x = 0; x < members.size(); ++x)
      for (std::size_t y = x + 1; y < members.size(); ++y) {
        const QSubset j = singleton_join(instance, members[x], members[y], JoinMode::Literal, tol);
        for (std::size_t i = 0; i < j.points.size(); ++i)
          for (const auto& p : j.points[i]) {
            const auto before = out.points[i].size();
            add_point(out.points[i], p, tol.lattice_tol);
            grown = grown || out.points[i].size() != before;
          }
      }
  }
  return out;
}

QSubset q_meet(const QSubset& u, const QSubset& v, const ToleranceConfig& tol) {
  require_compatible(u, v);
  QSubset out;
  for (std::size_t i = 0; i < u.components.size(); ++i)
    out.components.push_back(proj_meet(u.components[i], v.components[i], tol));
  return out;
}

QSubset q_join(const QSubset& u, const QSubset& v, const ToleranceConfig& tol) {
  require_compatible(u, v);
  QSubset out;
  for (std::size_t i = 0; i < u.components.size(); ++i)
    out.components.push_back(proj_join(u.components[i], v.components[i], tol));
  return out;
}

QSubset q_perp(const QSubset& u) {
  require_subspaces(u);
  QSubset out;
  for (const auto& p : u.components) out.components.push_back(proj_ortho(p));
  return out;
}

QSubset q_sasaki(const QSubset& u, const QSubset& v, const ToleranceConfig& tol) {
  require_compatible(u, v);
  QSubset out;
  for (std::size_t i = 0; i < u.components.size(); ++i)
    out.components.push_back(linalg::sasaki_product(u.components[i], v.components[i], tol));
  return out;
}

bool q_leq(const QSubset& u, const QSubset& v, const ToleranceConfig& tol) {
  require_compatible(u, v);
  for (std::size_t i = 0; i < u.components.size(); ++i)
    if (!u.components[i].leq(v.components[i], tol.lattice_tol)) return false;
  return true;
}

bool q_equal(const QSubset& u, const QSubset& v, const ToleranceConfig& tol) {
  return q_leq(u, v, tol) && q_leq(v, u, tol);
}

Complex QFunction::operator()(const PureState& state, const ToleranceConfig& tol) const {
  Complex sum = 0.0;
  for (const auto& [c, u] : terms)
    if (u.contains(state, tol)) sum += c;
  return sum;
}

QFunction chi(const QSubset& u, Complex coefficient) { return QFunction{{{coefficient, u}}}; }

QFunction conj(const QFunction& f) {
  QFunction out = f;
  for (auto& t : out.terms) t.first = std::conj(t.first);
  return out;
}

QFunction operator+(const QFunction& f, const QFunction& g) {
  QFunction out = f;
  out.terms.insert(out.terms.end(), g.terms.begin(), g.terms.end());
  return out;
}

QFunction qfunction_star(const QFunction& f, const QFunction& g, const ToleranceConfig& tol) {
  QFunction out;
  for (const auto& [c, u] : f.terms)
    for (const auto& [d, v] : g.terms) out.terms.emplace_back(c * d, q_sasaki(u, v, tol));
  return out;
}

NormEstimate sup_norm(const AlgebraInstance& instance, const QFunction& f, std::size_t samples, Rng& rng,
                      std::size_t exact_terms, const ToleranceConfig& tol) {
  NormEstimate out;
  const bool subspaces = std::all_of(f.terms.begin(), f.terms.end(),
                                     [](const auto& t) { return t.second.mode == JoinMode::Superposition; });
  if (subspaces && f.terms.size() <= exact_terms) {
    out.method = "exact";
    const std::size_t k = f.terms.size();
    for (int i = 0; i < instance.block_count(); ++i) {
      const int d = instance.blocks.blocks[i].irrep_dim;
      // A membership pattern S is realised by a unit vector iff
      // W_S = ∩_{k∈S} R_k is nonzero and lies in no R_k outside S (a
      // subspace is never a finite union of proper subspaces).
      std::vector<int> chosen;
      std::function<void(std::size_t, const Projector&)> dfs = [&](std::size_t next, const Projector& w) {
        if (w.rank() == 0) return;
        if (next == k) {
          Complex value = 0.0;
          std::size_t pos = 0;
          for (std::size_t t = 0; t < k; ++t) {
            const bool in = pos < chosen.size() && chosen[pos] == static_cast<int>(t);
            if (in) {
              value += f.terms[t].first;
              ++pos;
            } else if (w.leq(f.terms[t].second.components[i], tol.lattice_tol)) {
              return;
            }
          }
          out.value = std::max(out.value, std::abs(value));
          return;
        }
        dfs(next + 1, w);
        chosen.push_back(static_cast<int>(next));
        dfs(next + 1, proj_meet(w, f.terms[next].second.components[i], tol));
        chosen.pop_back();
      };
      dfs(0, Projector::identity(d));
    }
    return out;
  }
  out.method = "sampled";
  for (int i = 0; i < instance.block_count(); ++i) {
    const int d = instance.blocks.blocks[i].irrep_dim;
    for (std::size_t s = 0; s < samples; ++s) {
      const PureState st{i, linalg::haar_vector(d, rng)};
      out.value = std::max(out.value, std::abs(f(st, tol)));
    }
  }
  return out;
}

std::vector<std::pair<double, Projector>> spectral_projections(const CMatrix& a, const ToleranceConfig& tol) {
  const auto es = linalg::hermitian_eig(a, tol);
  std::vector<std::pair<double, Projector>> out;
  Eigen::Index start = 0;
  const auto n = es.values.size();
  for (Eigen::Index i = 1; i <= n; ++i) {
    if (i < n && es.values(i) - es.values(i - 1) <= tol.rank_tol * std::max(1.0, op_norm(a))) continue;
    const CMatrix v = es.vectors.middleCols(start, i - start);
    double mean = 0;
    for (Eigen::Index k = start; k < i; ++k) mean += es.values(k);
    out.emplace_back(mean / static_cast<double>(i - start), Projector(v * v.adjoint()));
    start = i;
  }
  return out;
}

QFunction spectral_function(const AlgebraInstance& instance, const CMatrix& a, const ToleranceConfig& tol) {
  QFunction f;
  for (const auto& [lambda, p] : spectral_projections(a, tol))
    f.terms.emplace_back(lambda, range_subset(instance, p, tol));
  return f;
}

}  // namespace ncg::qspace
