#include "ncg/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "ncg/errors.hpp"

namespace ncg::spectral {

using algebra::FdAlgebra;
using linalg::op_norm;
using linalg::Rng;

namespace {

void require_square(const CMatrix& a) {
  if (a.rows() != a.cols() || a.rows() == 0) throw DomainError("matrix must be square and nonempty");
  linalg::require_finite(a, "matrix");
}

Complex clean(Complex z) {
  auto c = [](double x) { return std::abs(x) < 1e-14 ? 0.0 : x; };
  return {c(z.real()), c(z.imag())};
}

double theta(int k, int angles) { return 2.0 * std::numbers::pi * k / angles; }

}  // namespace

std::vector<Complex> spectrum(const CMatrix& a) {
  require_square(a);
  Eigen::ComplexEigenSolver<CMatrix> solver(a, false);
  std::vector<Complex> out;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) out.push_back(clean(solver.eigenvalues()(i)));
  std::sort(out.begin(), out.end(), [](Complex x, Complex y) {
    return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
  });
  return out;
}

double SpectralReport::distance_to_Sigma(Complex z) const {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& b : blocks) {
    // W is the intersection of the half-planes Re(e^{−iθ}z) ≤ h(θ)
    double d = 0.0;
    for (std::size_t k = 0; k < b.support.size(); ++k) {
      const double proj = (std::polar(1.0, -theta(static_cast<int>(k), angles)) * z).real();
      d = std::max(d, proj - b.support[k]);
    }
    best = std::min(best, d);
  }
  return best;
}

SpectralReport sigma_big(const CMatrix& a, const SigmaOptions& options, const ToleranceConfig& tol) {
  require_square(a);
  if (options.angles < 4) throw DomainError("the support sweep needs at least 4 angles");
  const auto instance = algebra::make_instance(algebra::generate_algebra({a}, tol), tol);
  SpectralReport r;
  r.angles = options.angles;
  r.sigma = spectrum(a);
  const double scale = std::max(1.0, op_norm(a));

  for (int i = 0; i < instance.block_count(); ++i) {
    const auto& blk = instance.blocks.blocks[i];
    const CMatrix pi = algebra::block_image(blk, a);
    RangeBlock rb;
    rb.block = i;
    rb.irrep_dim = blk.irrep_dim;
    rb.multiplicity = blk.multiplicity;
    for (int k = 0; k < options.angles; ++k) {
      const CMatrix rot = std::polar(1.0, -theta(k, options.angles)) * pi;
      const auto es = linalg::hermitian_eig((rot + rot.adjoint()) / 2.0, tol);
      const auto top = es.values.size() - 1;
      rb.support.push_back(es.values(top));
      const CVector v = es.vectors.col(top);
      rb.boundary.push_back(clean(v.dot(pi * v)));
    }
    for (int k = 0; k < options.angles / 2; ++k)
      rb.width = std::max(rb.width, rb.support[k] + rb.support[k + options.angles / 2]);
    r.blocks.push_back(std::move(rb));
  }

  Rng rng(options.seed);
  for (std::size_t s = 0; s < options.samples; ++s) {
    const auto st = algebra::random_pure_state(instance, rng);
    r.samples.push_back(clean(algebra::hat(instance, a, st, tol)));
    r.sample_blocks.push_back(st.block);
  }

  for (const auto& z : r.sigma) r.containment = std::max(r.containment, r.distance_to_Sigma(z));
  auto distance_to_sigma = [&](Complex z) {
    double d = std::numeric_limits<double>::infinity();
    for (const auto& s : r.sigma) d = std::min(d, std::abs(z - s));
    return d;
  };
  double far = 0.0;
  for (const auto& b : r.blocks)
    for (const auto& z : b.boundary) far = std::max(far, distance_to_sigma(z));
  for (const auto& z : r.samples) far = std::max(far, distance_to_sigma(z));
  r.hausdorff = std::max(far, r.containment);

  const double eps = 1e-6 * scale;
  r.sigma_singleton = std::all_of(r.sigma.begin(), r.sigma.end(),
                                  [&](Complex z) { return std::abs(z - r.sigma.front()) <= eps; });
  r.sigma_equals_Sigma = r.hausdorff <= eps;
  r.Sigma_singleton = r.sigma_singleton && r.sigma_equals_Sigma &&
                      std::all_of(r.blocks.begin(), r.blocks.end(), [&](const RangeBlock& b) { return b.width <= eps; });
  return r;
}

namespace {

CMatrix orbit_basis(const FdAlgebra& A, const CVector& h, const ToleranceConfig& tol) {
  CMatrix cols(h.size(), A.dim());
  for (int k = 0; k < A.dim(); ++k) cols.col(k) = A.basis()[k] * h;
  return linalg::orthonormalize(cols, tol);
}

}  // namespace

CyclicDecomposition cyclic_decompose(const CMatrix& a, const ToleranceConfig& tol) {
  require_square(a);
  const auto n = a.rows();
  const FdAlgebra A = algebra::generate_algebra({a}, tol);
  CyclicDecomposition out;
  CMatrix covered = CMatrix::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    CVector e = CVector::Zero(n);
    e(j) = 1.0;
    // the covered part is reducing, so the residual stays in its complement
    const CVector r = e - covered * e;
    if (r.norm() <= tol.rank_tol) continue;
    const CVector h = r / r.norm();
    const CMatrix basis = orbit_basis(A, h, tol);
    Projector p(basis * basis.adjoint(), tol.lattice_tol);
    covered += p.matrix();
    out.pieces.push_back({std::move(p), h});
  }
  for (std::size_t i = 0; i < out.pieces.size(); ++i) {
    for (std::size_t j = i + 1; j < out.pieces.size(); ++j)
      out.orthogonality_defect = std::max(
          out.orthogonality_defect, op_norm(out.pieces[i].subspace.matrix() * out.pieces[j].subspace.matrix()));
    const CMatrix basis = orbit_basis(A, out.pieces[i].vector, tol);
    out.cyclicity_defect =
        std::max(out.cyclicity_defect, op_norm(out.pieces[i].subspace.matrix() - basis * basis.adjoint()));
  }
  out.completeness_defect = op_norm(covered - CMatrix::Identity(n, n));
  return out;
}

FcUnitary fc_unitary(const CMatrix& a, const CVector& h, const ToleranceConfig& tol) {
  require_square(a);
  if (h.size() != a.rows()) throw DomainError("vector length does not match the matrix");
  const double nrm = h.norm();
  if (nrm == 0.0) throw DomainError("cyclic vector must be nonzero");
  const CVector u = h / nrm;
  const FdAlgebra A = algebra::generate_algebra({a}, tol);
  const auto span = orbit_basis(A, u, tol).cols();
  if (span != a.rows())
    throw DomainError("vector is not star-cyclic: A·h has dimension " + std::to_string(span) + " of " +
                      std::to_string(a.rows()));
  FcUnitary fc;
  const algebra::State state = algebra::State::vector_state(u);
  fc.gns = algebra::gns(A, state, tol);
  fc.unitary.resize(a.rows(), fc.gns.dim);
  for (int r = 0; r < fc.gns.dim; ++r) {
    CVector col = CVector::Zero(a.rows());
    for (int k = 0; k < A.dim(); ++k) col += fc.gns.coefficients(k, r) * (A.basis()[k] * u);
    fc.unitary.col(r) = col;
  }
  fc.isometry_defect = op_norm(fc.unitary.adjoint() * fc.unitary - CMatrix::Identity(fc.gns.dim, fc.gns.dim));
  for (int k = 0; k < A.dim(); ++k)
    fc.intertwining_defect = std::max(
        fc.intertwining_defect, op_norm(A.basis()[k] - fc.unitary * fc.gns.pi[k] * fc.unitary.adjoint()));
  return fc;
}

double intertwining_defect(const FcUnitary& fc, const FdAlgebra& A, const CMatrix& x) {
  // the GNS state is ⟨·Uω, Uω⟩ with Uω = h; recover it from the unitary
  const CVector h = fc.unitary * fc.gns.omega;
  const algebra::State state = algebra::State::vector_state(h);
  const CMatrix pi = algebra::gns_image(A, state, fc.gns, x);
  return op_norm(x - fc.unitary * pi * fc.unitary.adjoint());
}

const char* to_string(InvsubMode mode) {
  switch (mode) {
    case InvsubMode::Paper: return "paper";
    case InvsubMode::Oracle: return "oracle";
    case InvsubMode::Both: return "both";
  }
  return "?";
}

InvsubMode parse_invsub_mode(const std::string& text) {
  if (text == "paper") return InvsubMode::Paper;
  if (text == "oracle") return InvsubMode::Oracle;
  if (text == "both") return InvsubMode::Both;
  throw DomainError("unknown invariant-subspace mode '" + text + "'");
}

double invariance_defect(const CMatrix& a, const Projector& p) {
  const auto n = a.rows();
  return op_norm((CMatrix::Identity(n, n) - p.matrix()) * a * p.matrix());
}

namespace {

InvariantSubspaceResult finish(const CMatrix& a, Projector p, std::string tag, std::string provenance) {
  InvariantSubspaceResult r;
  r.invariance_defect = invariance_defect(a, p);
  r.rank = p.rank();
  r.ambient = static_cast<int>(a.rows());
  r.projector = std::move(p);
  r.case_tag = std::move(tag);
  r.provenance = std::move(provenance);
  r.nontrivial = r.rank > 0 && r.rank < r.ambient;
  return r;
}

InvariantSubspaceResult oracle(const CMatrix& a, const ToleranceConfig& tol) {
  Eigen::ComplexSchur<CMatrix> schur(a);
  CVector v = schur.matrixU().col(0);
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (std::abs(v(i)) > std::sqrt(tol.eig_tol)) {
      v *= std::conj(v(i)) / std::abs(v(i));
      break;
    }
  return finish(a, Projector(v * v.adjoint()), "oracle", "eigenvector-oracle");
}

InvariantSubspaceResult paper(const CMatrix& a, const InvsubOptions& options, const ToleranceConfig& tol) {
  const auto n = a.rows();
  const SpectralReport rep = sigma_big(a, options.sigma, tol);
  const double scale = std::max(1.0, op_norm(a));
  const double split = options.split_tol > 0 ? options.split_tol : 1e-6 * op_norm(a);

  if (rep.Sigma_singleton) {
    // scalar case: Σ(a) = {λ} should force a = λI
    const Complex lambda = rep.sigma.front();
    CVector e = CVector::Zero(n);
    e(0) = 1.0;
    auto r = finish(a, Projector(e * e.adjoint()), "scalar-case", "paper-construction");
    const double gap = op_norm(a - lambda * CMatrix::Identity(n, n));
    if (gap > 1e-6 * scale) r.discrepancy = "Sigma is a single point but ||a - lambda I|| = " + std::to_string(gap);
    r.note = "Sigma singleton";
    return r;
  }
  if (rep.sigma_equals_Sigma) {
    auto r = finish(a, Projector::zero(static_cast<int>(n)), "out-of-dichotomy", "paper-construction");
    r.note = "sigma = Sigma without being a single point (non-scalar normal); neither case applies";
    return r;
  }

  // general case: span of the ambient vectors of pure states whose â-value lies
  // within split_tol of σ(a). Candidates: block eigenvectors, sweep vectors
  // and Haar samples.
  const auto instance = algebra::make_instance(algebra::generate_algebra({a}, tol), tol);
  auto near_sigma = [&](Complex z) {
    for (const auto& s : rep.sigma)
      if (std::abs(z - s) <= split) return true;
    return false;
  };
  std::vector<CVector> fiber;
  std::size_t candidates = 0;
  auto consider = [&](int block, const CVector& xi) {
    ++candidates;
    const algebra::PureState st{block, xi / xi.norm()};
    if (!near_sigma(algebra::hat(instance, a, st, tol))) return;
    const auto& b = instance.blocks.blocks[block];
    for (int s = 0; s < b.multiplicity; ++s)
      fiber.push_back(b.isometry.middleCols(static_cast<Eigen::Index>(s) * b.irrep_dim, b.irrep_dim) * st.vector);
  };
  Rng rng(options.sigma.seed);
  for (int i = 0; i < instance.block_count(); ++i) {
    const auto& b = instance.blocks.blocks[i];
    const CMatrix pi = algebra::block_image(b, a);
    Eigen::ComplexEigenSolver<CMatrix> solver(pi);
    for (Eigen::Index c = 0; c < pi.cols(); ++c) consider(i, solver.eigenvectors().col(c));
    for (int k = 0; k < options.sigma.angles; ++k) {
      const CMatrix rot = std::polar(1.0, -theta(k, options.sigma.angles)) * pi;
      const auto es = linalg::hermitian_eig((rot + rot.adjoint()) / 2.0, tol);
      consider(i, es.vectors.col(es.values.size() - 1));
    }
  }
  for (std::size_t s = 0; s < options.sigma.samples; ++s) {
    const auto st = algebra::random_pure_state(instance, rng);
    consider(st.block, st.vector);
  }
  CMatrix cols(n, static_cast<Eigen::Index>(fiber.size()));
  for (std::size_t k = 0; k < fiber.size(); ++k) cols.col(static_cast<Eigen::Index>(k)) = fiber[k];
  auto r = finish(a, Projector::from_basis(cols, static_cast<int>(n), tol), "sigma-split-case", "paper-construction");
  r.note = "fiber of " + std::to_string(fiber.size()) + " vectors from " + std::to_string(candidates) +
           " candidate pure states";
  return r;
}

}  // namespace

std::vector<InvariantSubspaceResult> invariant_subspace(const CMatrix& a, InvsubMode mode,
                                                        const InvsubOptions& options, const ToleranceConfig& tol) {
  require_square(a);
  if (a.rows() < 2) throw DomainError("invariant subspaces need dimension at least 2");
  std::vector<InvariantSubspaceResult> out;
  if (mode != InvsubMode::Oracle) out.push_back(paper(a, options, tol));
  if (mode != InvsubMode::Paper) out.push_back(oracle(a, tol));
  return out;
}

}  // namespace ncg::spectral
