#include <doctest.h>

#include "ncg/algebra.hpp"
#include "ncg/errors.hpp"
#include "oracles.hpp"

using namespace ncg::algebra;

namespace {

CMatrix mat2(Complex a, Complex b, Complex c, Complex d) {
  CMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

const CMatrix kSx = mat2(0, 1, 1, 0);
const CMatrix kE12 = mat2(0, 1, 0, 0);

CMatrix diag(std::initializer_list<double> xs) {
  CMatrix m = CMatrix::Zero(static_cast<int>(xs.size()), static_cast<int>(xs.size()));
  int i = 0;
  for (double x : xs) m(i, i) = x, ++i;
  return m;
}

CVector unit(int n, int i) { return CVector::Unit(n, i); }

std::vector<FdAlgebra> zoo() {
  return {diagonal_algebra(2), diagonal_algebra(3), full_algebra(2), full_algebra(3), direct_sum_algebra({2, 1})};
}

}  // namespace

TEST_CASE("generated algebras have the oracle dimension") {
  CHECK(generate_algebra({diag({1, 2})}).dim() == 2);
  CHECK(generate_algebra({diag({1, 2})}).is_commutative());
  CHECK(generate_algebra({kSx}).dim() == 2);
  CHECK(generate_algebra({kSx}).is_commutative());
  const auto m2 = generate_algebra({kE12});
  CHECK(m2.dim() == 4);
  CHECK_FALSE(m2.is_commutative());
  CHECK(m2.contains(kE12.adjoint()));

  Rng rng(3);
  for (int t = 0; t < 10; ++t) {
    const int n = 2 + t % 3;
    CMatrix g = CMatrix::Zero(n, n);
    g.topLeftCorner(n - 1, n - 1) = ncg::linalg::random_matrix(n - 1, n - 1, rng);
    const std::vector<CMatrix> gens{g};
    CHECK(generate_algebra(gens).dim() == oracle::algebra_dimension(gens));
  }
  CHECK_THROWS_AS(generate_algebra({}), ncg::DomainError);
  CHECK_THROWS_AS(generate_algebra({kSx, CMatrix::Identity(3, 3)}), ncg::DomainError);
}

TEST_CASE("coordinates, projection and membership") {
  const auto A = diagonal_algebra(3);
  const CMatrix d = diag({1, -2, 5});
  CHECK((A.element(A.coordinates(d)) - d).norm() < 1e-12);
  CMatrix off = d;
  off(0, 1) = 1;
  CHECK((A.project(off) - d).norm() < 1e-12);
  CHECK(A.residual(off) == doctest::Approx(1.0));
  CHECK_FALSE(A.contains(off));
}

TEST_CASE("block decomposition shapes") {
  auto shape = [](const FdAlgebra& A) {
    std::vector<std::pair<int, int>> s;
    for (const auto& b : block_decompose(A).blocks) s.emplace_back(b.irrep_dim, b.multiplicity);
    return s;
  };
  CHECK(shape(full_algebra(2)) == std::vector<std::pair<int, int>>{{2, 1}});
  CHECK(shape(diagonal_algebra(3)) == std::vector<std::pair<int, int>>{{1, 1}, {1, 1}, {1, 1}});
  CHECK(shape(generate_algebra({kSx})) == std::vector<std::pair<int, int>>{{1, 1}, {1, 1}});
  CHECK(shape(direct_sum_algebra({2, 1})) == std::vector<std::pair<int, int>>{{2, 1}, {1, 1}});

  // σ_x blocks are its eigenprojections
  const auto sx = block_decompose(generate_algebra({kSx}));
  for (const auto& b : sx.blocks) {
    const CMatrix z = b.central.matrix();
    CHECK((kSx * z - z * kSx).norm() < 1e-10);
    CHECK(((kSx * z) - z).norm() * ((kSx * z) + z).norm() < 1e-10);
  }

  // M_2 ⊗ I_2 in a rotated basis: one block with multiplicity 2
  Rng rng(9);
  const CMatrix u = ncg::linalg::random_unitary(4, rng);
  std::vector<CMatrix> gens;
  for (const auto& g : {kSx, mat2(1, 0, 0, -1)}) {
    CMatrix k = CMatrix::Zero(4, 4);
    k.topLeftCorner(2, 2) = g;
    k.bottomRightCorner(2, 2) = g;
    gens.push_back(u * k * u.adjoint());
  }
  CHECK(shape(generate_algebra(gens)) == std::vector<std::pair<int, int>>{{2, 2}});
}

TEST_CASE("blocks reassemble every basis element") {
  for (const auto& A : zoo()) {
    const auto B = block_decompose(A);
    int total = 0;
    for (const auto& b : B.blocks) {
      total += b.irrep_dim * b.irrep_dim;
      CHECK((b.isometry.adjoint() * b.isometry - CMatrix::Identity(b.isometry.cols(), b.isometry.cols())).norm() <
            1e-10);
    }
    CHECK(total == A.dim());
    for (const auto& x : A.basis()) CHECK((reassemble(B, x) - x).norm() < 1e-10);
  }
  CHECK(block_decompose(full_algebra(2)).blocks[0].isometry.isApprox(CMatrix::Identity(2, 2)));
}

TEST_CASE("GNS representations") {
  const auto D = make_instance(diagonal_algebra(2));
  const auto r1 = gns(D.algebra, State::vector_state(unit(2, 0)));
  CHECK(r1.dim == 1);
  CHECK(is_irreducible(r1));

  const auto M = make_instance(full_algebra(2));
  const auto r2 = gns(M.algebra, State::vector_state(unit(2, 0)));
  CHECK(r2.dim == 2);
  CHECK(is_irreducible(r2));

  const auto r4 = gns(M.algebra, State(CMatrix::Identity(2, 2) / 2.0));
  CHECK(r4.dim == 4);
  CHECK(commutant_dimension(r4.pi) == 4);
  CHECK_FALSE(is_irreducible(r4));

  // the representation is a *-homomorphism with ⟨π(a)Ω, Ω⟩ = α(a)
  const State mixed(CMatrix::Identity(2, 2) / 2.0);
  for (const auto& a : {kSx, kE12}) {
    const CMatrix pa = gns_image(M.algebra, mixed, r4, a);
    CHECK(std::abs(r4.omega.dot(pa * r4.omega) - mixed(a)) < 1e-10);
    const CMatrix paa = gns_image(M.algebra, mixed, r4, a * a.adjoint());
    CHECK((paa - pa * pa.adjoint()).norm() < 1e-10);
  }
}

TEST_CASE("purity agrees with irreducibility of the GNS representation") {
  Rng rng(77);
  for (const auto& A : zoo()) {
    const auto I = make_instance(A);
    for (int t = 0; t < 30; ++t) {
      const State s = random_state(I, rng);
      CHECK(is_pure(I, s) == is_irreducible(gns(A, s)));
    }
  }
}

TEST_CASE("pure-state bookkeeping") {
  const auto I = make_instance(direct_sum_algebra({2, 1}));
  const PureState a{0, unit(2, 0)}, b{0, (unit(2, 0) + unit(2, 1)) / std::sqrt(2.0)}, c{1, unit(1, 0)};
  CHECK(gns_equivalent(a, b));
  CHECK_FALSE(gns_equivalent(a, c));
  const auto D = make_instance(diagonal_algebra(2));
  CHECK_FALSE(gns_equivalent(PureState{0, unit(1, 0)}, PureState{1, unit(1, 0)}));

  CHECK(r_is_discrete(D));
  CHECK_FALSE(r_is_discrete(make_instance(full_algebra(2))));
  CHECK_FALSE(r_is_discrete(I));

  CHECK_THROWS_AS(PureState({5, unit(2, 0)}).validate(I), ncg::DomainError);
  CHECK_THROWS_AS(PureState({0, unit(2, 0) * 2.0}).validate(I), ncg::DomainError);
  const auto back = to_pure(I, as_state(I, b));
  REQUIRE(back);
  CHECK(back->block == 0);
  CHECK(std::abs(std::abs(back->vector.dot(b.vector)) - 1.0) < 1e-10);
  CHECK_FALSE(to_pure(I, State(CMatrix::Identity(3, 3) / 3.0)));
}

TEST_CASE("state validation") {
  CHECK_THROWS_AS(State(CMatrix::Identity(2, 2)), ncg::DomainError);
  CHECK_THROWS_AS(State(diag({1.5, -0.5})), ncg::DomainError);
  CHECK_THROWS_AS(State(kE12 + CMatrix::Identity(2, 2) / 2.0), ncg::DomainError);
}

TEST_CASE("orthogonal states") {
  const auto M = make_instance(full_algebra(2));
  const auto e1 = State::vector_state(unit(2, 0)), e2 = State::vector_state(unit(2, 1));
  const auto plus = State::vector_state((unit(2, 0) + unit(2, 1)) / std::sqrt(2.0));
  CHECK(orthogonal_states(M, e1, e2));
  CHECK_FALSE(orthogonal_states(M, e1, plus));
  CHECK_FALSE(orthogonal_states(M, e1, e1));
  CHECK(support_projection(M, e1).rank() == 1);
}

TEST_CASE("hat map") {
  const auto M = make_instance(full_algebra(2));
  const auto e1 = State::vector_state(unit(2, 0));
  CHECK(std::abs(hat(M, CMatrix::Identity(2, 2), e1) - 1.0) < 1e-14);
  CHECK(std::abs(hat(M, kSx, e1)) < 1e-14);
  CHECK(std::abs(hat(M, kSx, PureState{0, unit(2, 0)})) < 1e-14);
  CHECK(multiplicativity_defect(M, PureState{0, unit(2, 0)}, kSx, kSx) == doctest::Approx(1.0));

  const auto D = make_instance(diagonal_algebra(2));
  CHECK(std::abs(hat(D, diag({1, 2}), State(CMatrix::Identity(2, 2) / 2.0)) - 1.5) < 1e-14);
  CHECK_THROWS_AS(hat(D, kSx, State::vector_state(unit(2, 0))), ncg::DomainError);

  Rng rng(1);
  const auto dm = hat_map_diagnostics(M, 100, rng);
  CHECK_FALSE(dm.commutative);
  CHECK(dm.multiplicativity_defect > 0.1);
  CHECK(dm.separation);
  CHECK(dm.witness);
  const auto dd = hat_map_diagnostics(make_instance(diagonal_algebra(3)), 100, rng);
  CHECK(dd.commutative);
  CHECK(dd.multiplicativity_defect < 1e-12);
  CHECK(full_algebra(3).contains(random_element(full_algebra(3), rng, true)));
}
