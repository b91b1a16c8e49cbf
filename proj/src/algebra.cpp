#include "ncg/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <sstream>
#include <string>

#include "ncg/errors.hpp"

namespace ncg::algebra {

using linalg::EigenSystem;
using linalg::hermitian_eig;
using linalg::op_norm;
using linalg::RVector;

namespace {

double hs_norm(const CMatrix& m) { return m.norm(); }

Complex hs_inner(const CMatrix& a, const CMatrix& b) { return (a.adjoint() * b).trace(); }

Complex trace_product(const CMatrix& a, const CMatrix& b) {
  return a.cwiseProduct(b.transpose()).sum();
}

void normalize_phase(CVector& v, double tol) {
  for (Eigen::Index r = 0; r < v.size(); ++r) {
    const Complex z = v(r);
    if (std::abs(z) > tol) {
      v *= std::conj(z) / std::abs(z);
      v(r) = std::abs(v(r));
      return;
    }
  }
}

// Consecutive ascending eigenvalues closer than `gap` share a cluster.
std::vector<std::vector<Eigen::Index>> cluster(const RVector& values, double gap, double* min_gap) {
  std::vector<std::vector<Eigen::Index>> out;
  double smallest = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (i > 0) {
      const double d = values(i) - values(i - 1);
      if (d <= gap) {
        out.back().push_back(i);
        continue;
      }
      smallest = std::min(smallest, d);
    }
    out.push_back({i});
  }
  if (min_gap) *min_gap = smallest;
  return out;
}

CMatrix columns(const CMatrix& vectors, const std::vector<Eigen::Index>& idx) {
  CMatrix out(vectors.rows(), static_cast<Eigen::Index>(idx.size()));
  for (std::size_t k = 0; k < idx.size(); ++k) out.col(static_cast<Eigen::Index>(k)) = vectors.col(idx[k]);
  return out;
}

CMatrix canonical_probe(int n) {
  CMatrix d = CMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) d(i, i) = static_cast<double>(i + 1);
  return d;
}

CMatrix vec(const CMatrix& m) { return Eigen::Map<const CMatrix>(m.data(), m.size(), 1); }

CMatrix unvec(const CVector& v, int n) { return Eigen::Map<const CMatrix>(v.data(), n, n); }

}  // namespace

CVector FdAlgebra::coordinates(const CMatrix& a) const {
  CVector c(dim());
  for (int k = 0; k < dim(); ++k) c(k) = hs_inner(basis_[k], a);
  return c;
}

CMatrix FdAlgebra::element(const CVector& coordinates) const {
  if (coordinates.size() != dim()) throw DomainError("coordinate vector has the wrong length");
  CMatrix out = CMatrix::Zero(n_, n_);
  for (int k = 0; k < dim(); ++k) out += coordinates(k) * basis_[k];
  return out;
}

CMatrix FdAlgebra::project(const CMatrix& a) const {
  if (a.rows() != n_ || a.cols() != n_) throw DomainError("matrix does not act on the ambient space");
  return element(coordinates(a));
}

double FdAlgebra::residual(const CMatrix& a) const { return hs_norm(a - project(a)); }

bool FdAlgebra::contains(const CMatrix& a, const ToleranceConfig& tol) const {
  if (a.rows() != n_ || a.cols() != n_) return false;
  return residual(a) <= tol.rank_tol * std::max(1.0, hs_norm(a));
}

bool FdAlgebra::is_commutative(const ToleranceConfig& tol) const {
  for (int i = 0; i < dim(); ++i)
    for (int j = i + 1; j < dim(); ++j)
      if (hs_norm(basis_[i] * basis_[j] - basis_[j] * basis_[i]) > tol.rank_tol) return false;
  return true;
}

FdAlgebra generate_algebra(const std::vector<CMatrix>& generators, const ToleranceConfig& tol) {
  if (generators.empty()) throw DomainError("generate_algebra needs at least one generator");
  const auto n = generators.front().rows();
  for (const auto& g : generators) {
    if (g.rows() != g.cols() || g.rows() != n) throw DomainError("generators must be square of equal size");
    linalg::require_finite(g, "generator");
  }
  FdAlgebra A;
  A.n_ = static_cast<int>(n);
  A.generators_ = generators;

  std::vector<CMatrix> letters;
  for (const auto& g : generators) {
    letters.push_back(g);
    letters.push_back(g.adjoint());
  }
  std::deque<std::size_t> queue;
  auto try_add = [&](const CMatrix& x) {
    CMatrix r = x;
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& b : A.basis_) r -= hs_inner(b, r) * b;
    const double norm = hs_norm(r);
    if (norm <= tol.rank_tol * std::max(1.0, hs_norm(x))) return;
    A.basis_.push_back(r / norm);
    queue.push_back(A.basis_.size() - 1);
  };
  try_add(CMatrix::Identity(n, n));
  for (const auto& g : letters) try_add(g);
  // span of words: closure of the unit under left multiplication by letters
  while (!queue.empty()) {
    const CMatrix b = A.basis_[queue.front()];
    queue.pop_front();
    for (const auto& g : letters) try_add(g * b);
  }
  return A;
}

FdAlgebra diagonal_algebra(int n) {
  if (n < 1) throw DomainError("dimension must be positive");
  std::vector<CMatrix> gens;
  for (int i = 0; i < n; ++i) {
    CMatrix e = CMatrix::Zero(n, n);
    e(i, i) = 1.0;
    gens.push_back(e);
  }
  return generate_algebra(gens);
}

FdAlgebra full_algebra(int n) { return direct_sum_algebra({n}); }

FdAlgebra direct_sum_algebra(const std::vector<int>& block_sizes) {
  if (block_sizes.empty()) throw DomainError("direct sum needs at least one block");
  const int n = std::accumulate(block_sizes.begin(), block_sizes.end(), 0);
  std::vector<CMatrix> gens;
  int offset = 0;
  for (int d : block_sizes) {
    if (d < 1) throw DomainError("block sizes must be positive");
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        CMatrix e = CMatrix::Zero(n, n);
        e(offset + i, offset + j) = 1.0;
        gens.push_back(e);
      }
    offset += d;
  }
  return generate_algebra(gens);
}

BlockDecomposition block_decompose(const FdAlgebra& A, const ToleranceConfig& tol, std::uint64_t seed,
                                   int retries) {
  const int n = A.ambient_dim();
  const int m = A.dim();
  if (m == 0) throw DomainError("algebra is empty");
  Rng rng(seed);

  // center: Σ c_k [B_k, B_j] = 0 for every j
  CMatrix system(static_cast<Eigen::Index>(m) * n * n, m);
  for (int k = 0; k < m; ++k)
    for (int j = 0; j < m; ++j) {
      const CMatrix c = A.basis()[k] * A.basis()[j] - A.basis()[j] * A.basis()[k];
      system.block(static_cast<Eigen::Index>(j) * n * n, k, n * n, 1) = vec(c);
    }
  const CMatrix center_coords = linalg::null_space(system, tol);
  const int zdim = static_cast<int>(center_coords.cols());
  std::vector<CMatrix> center;
  for (int l = 0; l < zdim; ++l) center.push_back(A.element(center_coords.col(l)));
  auto project_center = [&](const CMatrix& x) {
    CMatrix out = CMatrix::Zero(n, n);
    for (const auto& z : center) out += hs_inner(z, x) * z;
    return out;
  };

  std::vector<CMatrix> central;
  std::ostringstream gaps;
  for (int attempt = 0; attempt <= retries && central.empty(); ++attempt) {
    const CMatrix h = project_center(attempt == 0 ? canonical_probe(n) : linalg::random_hermitian(n, rng));
    const auto es = hermitian_eig(h, tol);
    double min_gap = 0;
    const auto groups = cluster(es.values, 1e-6 * std::max(1.0, op_norm(h)), &min_gap);
    if (static_cast<int>(groups.size()) == zdim) {
      for (const auto& g : groups) {
        const CMatrix v = columns(es.vectors, g);
        central.push_back(v * v.adjoint());
      }
    } else {
      gaps << (attempt ? ", " : "") << groups.size() << " clusters (min gap " << min_gap << ")";
    }
  }
  if (central.empty())
    throw DecompositionError("central eigenvalue clustering stayed ambiguous: expected " + std::to_string(zdim) +
                             " clusters, got " + gaps.str());

  BlockDecomposition out;
  out.center_dim = zdim;
  for (const auto& z : central) {
    Block block{Projector(z, tol.lattice_tol), 0, 0, {}};
    // z·A, as HS-orthonormal columns
    CMatrix spanning(n * n, m);
    for (int k = 0; k < m; ++k) spanning.col(k) = vec(z * A.basis()[k]);
    const CMatrix qa = linalg::orthonormalize(spanning, tol);
    const int bdim = static_cast<int>(qa.cols());
    const int d = static_cast<int>(std::lround(std::sqrt(static_cast<double>(bdim))));
    const int rank = block.central.rank();
    if (d * d != bdim || d == 0 || rank % d != 0)
      throw DecompositionError("block of dimension " + std::to_string(bdim) + " and rank " + std::to_string(rank) +
                               " is not a full matrix algebra");
    block.irrep_dim = d;
    block.multiplicity = rank / d;
    const CMatrix range = block.central.range(tol);
    auto project_block = [&](const CMatrix& x) -> CMatrix { return unvec(qa * (qa.adjoint() * vec(x)), n); };

    std::vector<CMatrix> minimal;
    std::ostringstream bgaps;
    for (int attempt = 0; attempt <= retries && minimal.empty(); ++attempt) {
      const CMatrix h =
          project_block(attempt == 0 ? canonical_probe(n) : linalg::random_hermitian(n, rng));
      const CMatrix compressed = range.adjoint() * h * range;
      const auto es = hermitian_eig(compressed, tol);
      double min_gap = 0;
      const auto groups = cluster(es.values, 1e-6 * std::max(1.0, op_norm(h)), &min_gap);
      const bool ok = static_cast<int>(groups.size()) == d &&
                      std::all_of(groups.begin(), groups.end(), [&](const auto& g) {
                        return static_cast<int>(g.size()) == block.multiplicity;
                      });
      if (!ok) {
        bgaps << (attempt ? ", " : "") << groups.size() << " clusters (min gap " << min_gap << ")";
        continue;
      }
      for (const auto& g : groups) {
        const CMatrix v = range * columns(es.vectors, g);
        minimal.push_back(v * v.adjoint());
      }
    }
    if (minimal.empty())
      throw DecompositionError("minimal projections of a block stayed ambiguous: " + bgaps.str());

    // orthonormal basis of range(f_1), phase-fixed
    CMatrix v1 = Projector(minimal[0], tol.lattice_tol).range(tol);
    for (Eigen::Index s = 0; s < v1.cols(); ++s) {
      CVector c = v1.col(s);
      normalize_phase(c, std::sqrt(tol.eig_tol));
      v1.col(s) = c;
    }
    // matrix units e_{j1} = f_j x f_1, scaled to partial isometries
    std::vector<CMatrix> units{minimal[0]};
    for (int j = 1; j < d; ++j) {
      CMatrix best;
      double best_norm = 0;
      for (int k = 0; k < m; ++k) {
        const CMatrix y = minimal[j] * A.basis()[k] * minimal[0];
        const double nrm = op_norm(y);
        if (nrm > best_norm) {
          best_norm = nrm;
          best = y;
        }
      }
      if (best_norm <= tol.rank_tol) throw DecompositionError("no matrix unit links two minimal projections");
      CMatrix e = best / best_norm;
      CVector w = e * v1.col(0);
      const CVector before = w;
      normalize_phase(w, std::sqrt(tol.eig_tol));
      for (Eigen::Index r = 0; r < w.size(); ++r)
        if (std::abs(before(r)) > std::sqrt(tol.eig_tol)) {
          e *= w(r) / before(r);
          break;
        }
      units.push_back(e);
    }
    block.isometry.resize(n, static_cast<Eigen::Index>(d) * block.multiplicity);
    for (int s = 0; s < block.multiplicity; ++s)
      for (int j = 0; j < d; ++j) block.isometry.col(s * d + j) = units[j] * v1.col(s);
    out.blocks.push_back(std::move(block));
  }

  auto key = [&](const Block& b) {
    const CMatrix& z = b.central.matrix();
    for (int r = 0; r < n; ++r)
      if (z(r, r).real() > 1e-6) return std::make_pair(r, -z(r, r).real());
    return std::make_pair(n, 0.0);
  };
  std::stable_sort(out.blocks.begin(), out.blocks.end(),
                   [&](const Block& a, const Block& b) { return key(a) < key(b); });
  return out;
}

CMatrix block_image(const Block& block, const CMatrix& a) {
  const int d = block.irrep_dim;
  return block.isometry.leftCols(d).adjoint() * a * block.isometry.leftCols(d);
}

CMatrix reassemble(const BlockDecomposition& blocks, const CMatrix& a) {
  const auto n = a.rows();
  CMatrix out = CMatrix::Zero(n, n);
  for (const auto& b : blocks.blocks) {
    const CMatrix pi = block_image(b, a);
    const int d = b.irrep_dim;
    for (int s = 0; s < b.multiplicity; ++s) {
      const auto w = b.isometry.middleCols(static_cast<Eigen::Index>(s) * d, d);
      out += w * pi * w.adjoint();
    }
  }
  return out;
}

AlgebraInstance make_instance(const FdAlgebra& algebra, const ToleranceConfig& tol) {
  return AlgebraInstance{algebra, block_decompose(algebra, tol)};
}

State::State(const CMatrix& rho, const ToleranceConfig& tol) {
  if (rho.rows() != rho.cols() || rho.rows() == 0) throw DomainError("density matrix must be square");
  linalg::require_finite(rho, "density matrix");
  if (linalg::hermitian_defect(rho) > tol.rank_tol) throw DomainError("density matrix is not Hermitian");
  const CMatrix h = (rho + rho.adjoint()) / 2.0;
  if (std::abs(h.trace() - Complex(1.0)) > tol.rank_tol) throw DomainError("density matrix must have trace one");
  const auto es = hermitian_eig(h, tol);
  if (es.values(0) < -tol.rank_tol) throw DomainError("density matrix is not positive semidefinite");
  rho_ = h;
}

State State::vector_state(const CVector& xi) {
  const double nrm = xi.norm();
  if (nrm == 0.0) throw DomainError("vector state needs a nonzero vector");
  const CVector u = xi / nrm;
  return State(u * u.adjoint());
}

Complex State::operator()(const CMatrix& a) const {
  linalg::require_same_shape(rho_, a, "state evaluation");
  return trace_product(rho_, a);
}

void PureState::validate(const AlgebraInstance& instance, const ToleranceConfig& tol) const {
  if (block < 0 || block >= instance.block_count()) throw DomainError("pure state names a missing block");
  if (vector.size() != instance.blocks.blocks[block].irrep_dim)
    throw DomainError("pure state vector has the wrong length for its block");
  if (std::abs(vector.norm() - 1.0) > tol.rank_tol) throw DomainError("pure state vector is not a unit vector");
}

CVector ambient_vector(const AlgebraInstance& instance, const PureState& state) {
  state.validate(instance);
  const auto& b = instance.blocks.blocks[state.block];
  return b.isometry.leftCols(b.irrep_dim) * state.vector;
}

State as_state(const AlgebraInstance& instance, const PureState& state) {
  return State::vector_state(ambient_vector(instance, state));
}

std::vector<CMatrix> reduced_densities(const AlgebraInstance& instance, const State& state) {
  std::vector<CMatrix> out;
  for (const auto& b : instance.blocks.blocks) {
    const CMatrix full = b.isometry.adjoint() * state.rho() * b.isometry;
    const int d = b.irrep_dim;
    CMatrix sigma = CMatrix::Zero(d, d);
    for (int s = 0; s < b.multiplicity; ++s) sigma += full.block(s * d, s * d, d, d);
    out.push_back((sigma + sigma.adjoint()) / 2.0);
  }
  return out;
}

std::optional<PureState> to_pure(const AlgebraInstance& instance, const State& state, const ToleranceConfig& tol) {
  const auto sigmas = reduced_densities(instance, state);
  std::optional<PureState> found;
  for (std::size_t i = 0; i < sigmas.size(); ++i) {
    const double weight = sigmas[i].trace().real();
    if (weight <= tol.rank_tol) continue;
    if (found) return std::nullopt;
    const auto es = hermitian_eig(sigmas[i], tol);
    const auto d = es.values.size();
    if (d > 1 && es.values(d - 2) > tol.rank_tol) return std::nullopt;
    CVector v = es.vectors.col(d - 1);
    found = PureState{static_cast<int>(i), v};
  }
  return found;
}

bool is_pure(const AlgebraInstance& instance, const State& state, const ToleranceConfig& tol) {
  return to_pure(instance, state, tol).has_value();
}

PureState random_pure_state(const AlgebraInstance& instance, Rng& rng) {
  std::uniform_int_distribution<int> pick(0, instance.block_count() - 1);
  const int i = pick(rng);
  return PureState{i, linalg::haar_vector(instance.blocks.blocks[i].irrep_dim, rng)};
}

State random_state(const AlgebraInstance& instance, Rng& rng, double pure_rate) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const int n = instance.algebra.ambient_dim();
  if (u(rng) < pure_rate) {
    // the same irrep vector spread over multiplicity copies: pure on A even
    // when the ambient density has higher rank
    const PureState p = random_pure_state(instance, rng);
    const auto& b = instance.blocks.blocks[p.block];
    std::vector<double> w(static_cast<std::size_t>(b.multiplicity));
    for (auto& x : w) x = u(rng) + 0.05;
    const double total = std::accumulate(w.begin(), w.end(), 0.0);
    CMatrix rho = CMatrix::Zero(n, n);
    for (int s = 0; s < b.multiplicity; ++s) {
      const CVector v = b.isometry.middleCols(static_cast<Eigen::Index>(s) * b.irrep_dim, b.irrep_dim) * p.vector;
      rho += (w[s] / total) * v * v.adjoint();
    }
    return State(rho);
  }
  return State(linalg::random_density(n, rng));
}

namespace {

// M_{kl} = α(B_k* x B_l)
CMatrix sandwich(const FdAlgebra& A, const State& state, const CMatrix& x) {
  const int m = A.dim();
  CMatrix out(m, m);
  std::vector<CMatrix> left;
  left.reserve(m);
  for (int k = 0; k < m; ++k) left.push_back(state.rho() * A.basis()[k].adjoint());
  for (int l = 0; l < m; ++l) {
    const CMatrix xb = x * A.basis()[l];
    for (int k = 0; k < m; ++k) out(k, l) = trace_product(left[k], xb);
  }
  return out;
}

}  // namespace

GnsRepresentation gns(const FdAlgebra& A, const State& state, const ToleranceConfig& tol) {
  if (state.rho().rows() != A.ambient_dim()) throw DomainError("state does not act on the algebra's ambient space");
  const int n = A.ambient_dim();
  const CMatrix gram = sandwich(A, state, CMatrix::Identity(n, n));
  const auto es = hermitian_eig(gram, tol);
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = es.values.size() - 1; i >= 0; --i)
    if (es.values(i) > tol.rank_tol) keep.push_back(i);
  GnsRepresentation rep;
  rep.dim = static_cast<int>(keep.size());
  rep.coefficients.resize(A.dim(), rep.dim);
  for (int r = 0; r < rep.dim; ++r)
    rep.coefficients.col(r) = es.vectors.col(keep[r]) / std::sqrt(es.values(keep[r]));
  for (const auto& b : A.basis()) rep.pi.push_back(gns_image(A, state, rep, b));
  rep.omega = rep.coefficients.adjoint() * gram * A.coordinates(CMatrix::Identity(n, n));
  return rep;
}

CMatrix gns_image(const FdAlgebra& A, const State& state, const GnsRepresentation& rep, const CMatrix& a) {
  return rep.coefficients.adjoint() * sandwich(A, state, a) * rep.coefficients;
}

int commutant_dimension(const std::vector<CMatrix>& matrices, const ToleranceConfig& tol) {
  if (matrices.empty()) return 0;
  const auto r = matrices.front().rows();
  const CMatrix id = CMatrix::Identity(r, r);
  auto kron = [](const CMatrix& a, const CMatrix& b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
  };
  // vec(XM − MX) = (Mᵀ ⊗ I − I ⊗ M) vec(X); accumulate the normal matrix
  CMatrix normal = CMatrix::Zero(r * r, r * r);
  for (const auto& m : matrices) {
    for (const CMatrix& x : {CMatrix(m), CMatrix(m.adjoint())}) {
      const CMatrix k = kron(x.transpose(), id) - kron(id, x);
      normal += k.adjoint() * k;
    }
  }
  const auto es = hermitian_eig(normal, tol);
  int nullity = 0;
  for (Eigen::Index i = 0; i < es.values.size(); ++i)
    if (es.values(i) <= tol.rank_tol) ++nullity;
  return nullity;
}

bool is_irreducible(const GnsRepresentation& rep, const ToleranceConfig& tol) {
  return commutant_dimension(rep.pi, tol) == 1;
}

bool gns_equivalent(const PureState& a, const PureState& b) { return a.block == b.block; }

bool r_is_discrete(const AlgebraInstance& instance) {
  return std::all_of(instance.blocks.blocks.begin(), instance.blocks.blocks.end(),
                     [](const Block& b) { return b.irrep_dim == 1; });
}

Projector support_projection(const AlgebraInstance& instance, const State& state, const ToleranceConfig& tol) {
  const int n = instance.algebra.ambient_dim();
  const auto sigmas = reduced_densities(instance, state);
  CMatrix p = CMatrix::Zero(n, n);
  for (std::size_t i = 0; i < sigmas.size(); ++i) {
    const auto& b = instance.blocks.blocks[i];
    const auto es = hermitian_eig(sigmas[i], tol);
    std::vector<Eigen::Index> keep;
    for (Eigen::Index k = 0; k < es.values.size(); ++k)
      if (es.values(k) > tol.rank_tol) keep.push_back(k);
    const CMatrix v = columns(es.vectors, keep);
    const CMatrix s = v * v.adjoint();
    for (int c = 0; c < b.multiplicity; ++c) {
      const auto w = b.isometry.middleCols(static_cast<Eigen::Index>(c) * b.irrep_dim, b.irrep_dim);
      p += w * s * w.adjoint();
    }
  }
  return Projector(p, tol.lattice_tol);
}

bool orthogonal_states(const AlgebraInstance& instance, const State& a, const State& b, const ToleranceConfig& tol) {
  const Projector pa = support_projection(instance, a, tol);
  const Projector pb = support_projection(instance, b, tol);
  return op_norm(pa.matrix() * pb.matrix()) <= tol.lattice_tol;
}

Complex hat(const AlgebraInstance& instance, const CMatrix& a, const State& state, const ToleranceConfig& tol) {
  if (!instance.algebra.contains(a, tol)) throw DomainError("element does not belong to the algebra");
  return state(a);
}

Complex hat(const AlgebraInstance& instance, const CMatrix& a, const PureState& state, const ToleranceConfig& tol) {
  if (!instance.algebra.contains(a, tol)) throw DomainError("element does not belong to the algebra");
  state.validate(instance, tol);
  const CMatrix pi = block_image(instance.blocks.blocks[state.block], a);
  return state.vector.dot(pi * state.vector);
}

double multiplicativity_defect(const AlgebraInstance& instance, const PureState& state, const CMatrix& a,
                               const CMatrix& b) {
  return std::abs(hat(instance, a * b, state) - hat(instance, a, state) * hat(instance, b, state));
}

CMatrix random_element(const FdAlgebra& algebra, Rng& rng, bool hermitian) {
  const int n = algebra.ambient_dim();
  return algebra.project(hermitian ? linalg::random_hermitian(n, rng) : linalg::random_matrix(n, n, rng));
}

HatDiagnostics hat_map_diagnostics(const AlgebraInstance& instance, std::size_t samples, Rng& rng,
                                   const ToleranceConfig& tol) {
  HatDiagnostics out;
  out.commutative = instance.algebra.is_commutative(tol);
  out.samples = samples;
  const auto& basis = instance.algebra.basis();
  for (std::size_t s = 0; s < samples; ++s) {
    const PureState alpha = random_pure_state(instance, rng);
    CMatrix a = random_element(instance.algebra, rng, true);
    CMatrix b = random_element(instance.algebra, rng, true);
    a /= std::max(op_norm(a), 1e-300);
    b /= std::max(op_norm(b), 1e-300);
    const double defect = multiplicativity_defect(instance, alpha, a, b);
    if (defect > out.multiplicativity_defect || !out.witness) {
      out.multiplicativity_defect = std::max(out.multiplicativity_defect, defect);
      if (defect >= out.multiplicativity_defect) out.witness = alpha;
    }

    const PureState beta = random_pure_state(instance, rng);
    const bool distinct = alpha.block != beta.block || std::abs(alpha.vector.dot(beta.vector)) < 1.0 - tol.rank_tol;
    if (!distinct) continue;
    double gap = 0;
    for (const auto& x : basis) gap = std::max(gap, std::abs(hat(instance, x, alpha) - hat(instance, x, beta)));
    if (gap <= tol.rank_tol) out.separation = false;
  }
  return out;
}

}  // namespace ncg::algebra
