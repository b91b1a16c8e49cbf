#include "ncg/claims.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "ncg/errors.hpp"

namespace ncg::claims {

using algebra::PureState;
using linalg::CVector;
using linalg::op_norm;
using linalg::Rng;

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Holds: return "holds-within-tol";
    case Verdict::Fails: return "fails";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

const char* to_string(Expectation e) { return e == Expectation::Holds ? "required" : "finding"; }

double ClaimRow::defect(const std::string& name) const {
  for (const auto& [k, v] : defects)
    if (k == name) return v;
  throw DomainError("row " + claim + " has no defect named " + name);
}

namespace {

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", std::abs(x) < 1e-15 ? 0.0 : x);
  return buf;
}

std::string num(Complex z) { return "(" + num(z.real()) + "," + num(z.imag()) + ")"; }

std::string describe(const PureState& s) {
  std::string out = "block=" + std::to_string(s.block) + " vector=[";
  for (Eigen::Index i = 0; i < s.vector.size(); ++i) out += (i ? "," : "") + num(s.vector(i));
  return out + "]";
}

ClaimRow base_row(const ClaimContext& ctx, const std::string& claim) {
  ClaimRow row;
  row.claim = claim;
  row.instance = ctx.instance;
  row.mode = qspace::to_string(ctx.mode);
  row.seed = ctx.seed;
  return row;
}

Verdict within(double defect, double tol) { return defect <= tol ? Verdict::Holds : Verdict::Fails; }

CMatrix hermitian_part(const CMatrix& a) { return (a + a.adjoint()) / 2.0; }

}  // namespace

Projector top_projection(const CMatrix& a, const ToleranceConfig& tol) {
  const auto parts = qspace::spectral_projections(hermitian_part(a), tol);
  return parts.back().second;
}

QFunction default_probe_function(const AlgebraInstance& instance, const ToleranceConfig& tol) {
  std::vector<CMatrix> picks;
  const int n = instance.algebra.ambient_dim();
  for (const auto& g : instance.algebra.generators()) {
    const CMatrix h = hermitian_part(g);
    const Complex mean = h.trace() / static_cast<double>(n);
    if (op_norm(h - mean * CMatrix::Identity(n, n)) > tol.rank_tol) picks.push_back(h);
    if (picks.size() == 2) break;
  }
  if (picks.empty()) return qspace::chi(qspace::full_subset(instance));
  const auto u = qspace::range_subset(instance, top_projection(picks[0], tol), tol);
  if (picks.size() == 1) return qspace::chi(u) + qspace::chi(qspace::q_perp(u), Complex(0, 1));
  const auto v = qspace::range_subset(instance, top_projection(picks[1], tol), tol);
  return qspace::chi(u) + qspace::chi(v, Complex(0, 1));
}

ClaimRow hat_preimage_qness(const ClaimContext& ctx, const AlgebraInstance& instance, const CMatrix& a,
                            Complex center, double radius) {
  ClaimRow row = base_row(ctx, "preimage.join_closed");
  row.expected = instance.algebra.is_commutative(ctx.tol) ? Expectation::Holds : Expectation::Finding;
  Rng rng(ctx.seed);
  auto value = [&](const PureState& s) { return algebra::hat(instance, a, s, ctx.tol); };
  auto inside = [&](const PureState& s) { return std::abs(value(s) - center) <= radius; };

  std::vector<PureState> preimage;
  for (int i = 0; i < instance.block_count(); ++i) {
    // eigenvectors of π_i(a) seed the preimage near the spectrum
    const CMatrix pi = algebra::block_image(instance.blocks.blocks[i], a);
    Eigen::ComplexEigenSolver<CMatrix> solver(pi);
    for (Eigen::Index c = 0; c < pi.cols(); ++c) {
      CVector v = solver.eigenvectors().col(c);
      const PureState s{i, v / v.norm()};
      if (inside(s)) preimage.push_back(s);
    }
  }
  for (std::size_t k = 0; k < ctx.samples; ++k) {
    const PureState s = algebra::random_pure_state(instance, rng);
    if (inside(s)) preimage.push_back(s);
  }

  const std::size_t pair_budget = std::min<std::size_t>(ctx.samples, 256);
  std::size_t pairs = 0;
  double worst = 0.0;
  constexpr int kTheta = 33;
  constexpr int kPhi = 16;
  for (std::size_t x = 0; x < preimage.size() && pairs < pair_budget; ++x) {
    for (std::size_t y = x + 1; y < preimage.size() && pairs < pair_budget; ++y) {
      if (!algebra::gns_equivalent(preimage[x], preimage[y])) continue;
      ++pairs;
      const auto join = qspace::singleton_join(instance, preimage[x], preimage[y], ctx.mode, ctx.tol);
      const int blk = preimage[x].block;
      std::vector<PureState> members;
      if (ctx.mode == JoinMode::Literal) {
        for (const auto& p : join.points[blk]) members.push_back({blk, p});
      } else {
        const CMatrix basis = join.components[blk].range(ctx.tol);
        if (basis.cols() == 1) {
          members.push_back({blk, basis.col(0)});
        } else {
          for (int t = 0; t < kTheta; ++t)
            for (int f = 0; f < kPhi; ++f) {
              const double th = 0.5 * std::numbers::pi * t / (kTheta - 1);
              const double ph = 2.0 * std::numbers::pi * f / kPhi;
              const CVector v = std::cos(th) * basis.col(0) + std::polar(std::sin(th), ph) * basis.col(1);
              members.push_back({blk, v});
            }
        }
      }
      for (const auto& g : members) {
        const double excess = std::abs(value(g) - center) - radius;
        if (excess > worst) {
          worst = excess;
          row.witness = "alpha{" + describe(preimage[x]) + "} beta{" + describe(preimage[y]) + "} gamma{" +
                        describe(g) + "} hat(gamma)=" + num(value(g));
        }
      }
    }
  }
  row.defects = {{"max_excess", worst}, {"pairs", static_cast<double>(pairs)},
                 {"preimage_size", static_cast<double>(preimage.size())}};
  row.method = "grid-on-join";
  if (preimage.empty())
    row.verdict = Verdict::Inconclusive;
  else
    row.verdict = worst > ctx.claim_tol ? Verdict::Fails : Verdict::Holds;
  return row;
}

ClaimRow cstar_identity_defect(const ClaimContext& ctx, const AlgebraInstance& instance, const QFunction& f) {
  ClaimRow row = base_row(ctx, "prop7.cstar_identity");
  row.expected = instance.algebra.is_commutative(ctx.tol) ? Expectation::Holds : Expectation::Finding;
  Rng rng(ctx.seed);
  const auto ff = qspace::qfunction_star(f, qspace::conj(f), ctx.tol);
  const auto nf = qspace::sup_norm(instance, f, ctx.samples, rng, 16, ctx.tol);
  const auto nff = qspace::sup_norm(instance, ff, ctx.samples, rng, 16, ctx.tol);
  const double defect = std::abs(nff.value - nf.value * nf.value);
  row.defects = {{"defect", defect}, {"norm_f", nf.value}, {"norm_f_star_fbar", nff.value}};
  row.method = nf.method == nff.method ? nf.method : nf.method + "/" + nff.method;
  row.verdict = within(defect, ctx.claim_tol);
  if (row.verdict == Verdict::Fails) row.witness = "f with " + std::to_string(f.terms.size()) + " terms";
  return row;
}

ClaimRow prop9_defect(const ClaimContext& ctx, const AlgebraInstance& instance, const State& state,
                      const CMatrix& a, const CMatrix& b) {
  ClaimRow row = base_row(ctx, "prop9.pure_iff_multiplicative");
  const auto& A = instance.algebra;
  if (!A.contains(a, ctx.tol) || !A.contains(b, ctx.tol)) throw DomainError("probe elements must belong to the algebra");
  row.expected = A.is_commutative(ctx.tol) ? Expectation::Holds : Expectation::Finding;
  const CMatrix ha = hermitian_part(a);
  const Complex aa = state(ha);
  const double square = std::abs(state(ha * ha) - aa * aa);
  const double product = std::abs(state(a * b) - state(a) * state(b));
  const Projector p = top_projection(a, ctx.tol);
  const Projector q = top_projection(b, ctx.tol);
  const Projector pq = linalg::proj_meet(p, q, ctx.tol);
  const double meet = std::abs(state(pq.matrix()) - state(p.matrix()) * state(q.matrix()));
  auto chr = [&](const Projector& r) {
    const double v = state(r.matrix()).real();
    return std::min(std::abs(v), std::abs(1.0 - v));
  };
  const double characteristic = std::max(chr(p), chr(q));
  // multiplicativity on all of A, exactly, through the basis
  double global = 0;
  for (const auto& x : A.basis())
    for (const auto& y : A.basis()) global = std::max(global, std::abs(state(x * y) - state(x) * state(y)));
  const bool pure = algebra::is_pure(instance, state, ctx.tol);
  const bool multiplicative = global <= ctx.claim_tol;
  row.defects = {{"square", square},   {"product", product},
                 {"meet", meet},       {"characteristic", characteristic},
                 {"global_multiplicativity", global}, {"pure", pure ? 1.0 : 0.0}};
  row.method = "exact";
  row.verdict = pure == multiplicative ? Verdict::Holds : Verdict::Fails;
  if (row.verdict == Verdict::Fails)
    row.witness = std::string(pure ? "pure" : "mixed") + " state with multiplicativity defect " + num(global);
  return row;
}

ClaimRow hat_is_characteristic_defect(const ClaimContext& ctx, const AlgebraInstance& instance, const Projector& p) {
  ClaimRow row = base_row(ctx, "prop9.hat_characteristic");
  row.expected = instance.algebra.is_commutative(ctx.tol) ? Expectation::Holds : Expectation::Finding;
  if (!instance.algebra.contains(p.matrix(), ctx.tol)) throw DomainError("projection does not belong to the algebra");
  Rng rng(ctx.seed);
  double worst = 0;
  for (std::size_t s = 0; s < ctx.samples; ++s) {
    const PureState st = algebra::random_pure_state(instance, rng);
    const double v = algebra::hat(instance, p.matrix(), st, ctx.tol).real();
    const double d = std::min(std::abs(v), std::abs(1.0 - v));
    if (d > worst) {
      worst = d;
      row.witness = describe(st) + " hat=" + num(v);
    }
  }
  row.defects = {{"defect", worst}};
  row.method = "sampled";
  row.verdict = within(worst, ctx.claim_tol);
  if (row.verdict == Verdict::Holds) row.witness.clear();
  return row;
}

std::vector<ClaimRow> thm3_diagnostics(const ClaimContext& ctx, const AlgebraInstance& instance) {
  const auto& A = instance.algebra;
  const bool commutative = A.is_commutative(ctx.tol);
  std::vector<ClaimRow> rows;
  Rng rng(ctx.seed);

  // injectivity: a polarization family of vector states determines π_i(a)
  std::vector<PureState> family;
  for (int i = 0; i < instance.block_count(); ++i) {
    const int d = instance.blocks.blocks[i].irrep_dim;
    for (int j = 0; j < d; ++j) {
      CVector e = CVector::Zero(d);
      e(j) = 1.0;
      family.push_back({i, e});
      for (int k = j + 1; k < d; ++k) {
        CVector r = CVector::Zero(d), c = CVector::Zero(d);
        r(j) = c(j) = 1.0 / std::sqrt(2.0);
        r(k) = 1.0 / std::sqrt(2.0);
        c(k) = Complex(0, 1.0 / std::sqrt(2.0));
        family.push_back({i, r});
        family.push_back({i, c});
      }
    }
  }
  CMatrix values(static_cast<Eigen::Index>(family.size()), A.dim());
  for (std::size_t s = 0; s < family.size(); ++s)
    for (int k = 0; k < A.dim(); ++k) values(static_cast<Eigen::Index>(s), k) = algebra::hat(instance, A.basis()[k], family[s]);
  Eigen::JacobiSVD<CMatrix> svd(values);
  const auto& sv = svd.singularValues();
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > ctx.tol.rank_tol) ++rank;
  {
    ClaimRow row = base_row(ctx, "thm3.injective");
    row.expected = Expectation::Holds;
    row.defects = {{"rank_deficit", static_cast<double>(A.dim() - rank)},
                   {"min_singular_value", sv.size() ? sv(sv.size() - 1) : 0.0}};
    row.method = "polarization-family";
    row.verdict = rank == A.dim() ? Verdict::Holds : Verdict::Fails;
    rows.push_back(row);
  }

  const auto diag = algebra::hat_map_diagnostics(instance, ctx.samples, rng, ctx.tol);
  {
    ClaimRow row = base_row(ctx, "thm3.separation");
    row.expected = Expectation::Holds;
    row.defects = {{"separated", diag.separation ? 1.0 : 0.0}};
    row.method = "sampled-pairs";
    row.verdict = diag.separation ? Verdict::Holds : Verdict::Fails;
    rows.push_back(row);
  }

  {
    // default product model: â ∗ b̂ with â the spectral simple function of a
    ClaimRow row = base_row(ctx, "thm3.homomorphism");
    row.expected = commutative ? Expectation::Holds : Expectation::Finding;
    double worst = 0;
    for (std::size_t s = 0; s < ctx.samples; ++s) {
      CMatrix a = algebra::random_element(A, rng, true);
      CMatrix b = algebra::random_element(A, rng, true);
      a /= std::max(op_norm(a), 1e-300);
      b /= std::max(op_norm(b), 1e-300);
      const auto fab = qspace::qfunction_star(qspace::spectral_function(instance, a, ctx.tol),
                                              qspace::spectral_function(instance, b, ctx.tol), ctx.tol);
      const PureState alpha = algebra::random_pure_state(instance, rng);
      const double d = std::abs(algebra::hat(instance, a * b, alpha, ctx.tol) - fab(alpha, ctx.tol));
      if (d > worst) {
        worst = d;
        row.witness = "sample " + std::to_string(s) + " " + describe(alpha);
      }
    }
    row.defects = {{"defect", worst}};
    row.method = "spectral-simple-functions";
    row.verdict = within(worst, ctx.claim_tol);
    if (row.verdict == Verdict::Holds) row.witness.clear();
    rows.push_back(row);
  }

  if (commutative) {
    // pure states are the characters, one per (one-dimensional) block
    auto sup_hat = [&](const CMatrix& a) {
      double m = 0;
      for (int i = 0; i < instance.block_count(); ++i) {
        CVector one = CVector::Ones(1);
        m = std::max(m, std::abs(algebra::hat(instance, a, PureState{i, one}, ctx.tol)));
      }
      return m;
    };
    double worst = 0;
    for (const auto& x : A.basis()) worst = std::max(worst, std::abs(op_norm(x) - sup_hat(x)));
    for (std::size_t s = 0; s < std::min<std::size_t>(ctx.samples, 200); ++s) {
      const CMatrix x = algebra::random_element(A, rng);
      worst = std::max(worst, std::abs(op_norm(x) - sup_hat(x)));
    }
    ClaimRow iso = base_row(ctx, "thm3.isometry");
    iso.expected = Expectation::Holds;
    iso.defects = {{"defect", worst}};
    iso.method = "exact-characters";
    iso.verdict = within(worst, ctx.claim_tol);
    rows.push_back(iso);

    ClaimRow bij = base_row(ctx, "thm3.bijection");
    bij.expected = Expectation::Holds;
    const double gap = std::abs(static_cast<double>(A.dim() - instance.block_count()));
    bij.defects = {{"dimension_gap", gap}, {"rank_deficit", static_cast<double>(A.dim() - rank)}};
    bij.method = "exact";
    bij.verdict = gap == 0 && rank == A.dim() ? Verdict::Holds : Verdict::Fails;
    rows.push_back(bij);
  }
  return rows;
}

std::vector<ClaimRow> prop1_rows(const ClaimContext& ctx, const AlgebraInstance& instance) {
  ClaimRow row = base_row(ctx, "prop1.dichotomy");
  row.expected = Expectation::Holds;
  const bool discrete = algebra::r_is_discrete(instance);
  const bool commutative = instance.algebra.is_commutative(ctx.tol);
  row.defects = {{"r_discrete", discrete ? 1.0 : 0.0}, {"commutative", commutative ? 1.0 : 0.0}};
  row.method = "block-decomposition";
  row.verdict = discrete == commutative ? Verdict::Holds : Verdict::Fails;
  return {row};
}

std::vector<ClaimRow> prop2_rows(const ClaimContext& ctx, const AlgebraInstance& instance) {
  std::vector<ClaimRow> rows;
  Rng rng(ctx.seed);
  const bool commutative = instance.algebra.is_commutative(ctx.tol);
  const auto diag = algebra::hat_map_diagnostics(instance, ctx.samples, rng, ctx.tol);
  ClaimRow mult = base_row(ctx, "prop2.multiplicative");
  mult.expected = commutative ? Expectation::Holds : Expectation::Finding;
  mult.defects = {{"defect", diag.multiplicativity_defect}};
  mult.method = "sampled";
  mult.verdict = within(diag.multiplicativity_defect, ctx.claim_tol);
  if (mult.verdict == Verdict::Fails && diag.witness) mult.witness = describe(*diag.witness);
  rows.push_back(mult);

  if (commutative) {
    // onto C(P(A)) = C^k: the k x dim(A) value matrix has rank k
    const int k = instance.block_count();
    CMatrix values(k, instance.algebra.dim());
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < instance.algebra.dim(); ++j)
        values(i, j) = algebra::hat(instance, instance.algebra.basis()[j], PureState{i, CVector::Ones(1)}, ctx.tol);
    Eigen::JacobiSVD<CMatrix> svd(values);
    int rank = 0;
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
      if (svd.singularValues()(i) > ctx.tol.rank_tol) ++rank;
    ClaimRow onto = base_row(ctx, "prop2.onto");
    onto.expected = Expectation::Holds;
    onto.defects = {{"rank_deficit", static_cast<double>(k - rank)}};
    onto.method = "exact";
    onto.verdict = rank == k ? Verdict::Holds : Verdict::Fails;
    rows.push_back(onto);
  }
  return rows;
}

}  // namespace ncg::claims
