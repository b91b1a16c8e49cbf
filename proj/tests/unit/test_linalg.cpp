#include <doctest.h>

#include "ncg/errors.hpp"
#include "ncg/linalg.hpp"
#include "oracles.hpp"

using namespace ncg::linalg;

namespace {

CMatrix ket_projector(const CVector& v) { return v * v.adjoint() / v.squaredNorm(); }

CVector ket(std::initializer_list<Complex> xs) {
  CVector v(static_cast<int>(xs.size()));
  int i = 0;
  for (auto x : xs) v(i++) = x;
  return v;
}

}  // namespace

TEST_CASE("hermitian eigendecomposition") {
  CMatrix sx(2, 2);
  sx << 0, 1, 1, 0;
  const auto es = hermitian_eig(sx);
  const auto ref = oracle::eig2(sx);
  CHECK(es.values(0) == doctest::Approx(ref[0].real()));
  CHECK(es.values(1) == doctest::Approx(ref[1].real()));
  CHECK((es.vectors * es.values.cast<Complex>().asDiagonal() * es.vectors.adjoint() - sx).norm() < 1e-12);

  const auto id = hermitian_eig(CMatrix::Identity(2, 2));
  CHECK(id.values(0) == doctest::Approx(1.0));
  CHECK(id.values(1) == doctest::Approx(1.0));
  CHECK((id.vectors.adjoint() * id.vectors - CMatrix::Identity(2, 2)).norm() < 1e-12);

  CMatrix d = CMatrix::Zero(3, 3);
  d.diagonal() << 3, -2, 0;
  const auto ed = hermitian_eig(d);
  CHECK(ed.values(0) == doctest::Approx(-2.0));
  CHECK(ed.values(1) == doctest::Approx(0.0));
  CHECK(ed.values(2) == doctest::Approx(3.0));
  CHECK(std::abs(ed.vectors(1, 0)) == doctest::Approx(1.0));
  CHECK(std::abs(ed.vectors(2, 1)) == doctest::Approx(1.0));
  CHECK(std::abs(ed.vectors(0, 2)) == doctest::Approx(1.0));

  CMatrix nh(2, 2);
  nh << 0, 1, 0, 0;
  CHECK_THROWS_AS(hermitian_eig(nh), ncg::DomainError);
}

TEST_CASE("eigenvector phase convention is reproducible") {
  Rng rng(7);
  for (int t = 0; t < 50; ++t) {
    const CMatrix h = random_hermitian(4, rng);
    const auto a = hermitian_eig(h);
    // scaling does not change eigenvectors, so the convention must return the same columns
    const auto b = hermitian_eig(h * 2.0);
    CHECK((a.vectors - b.vectors).norm() < 1e-12);
    CHECK((h * a.vectors - a.vectors * a.values.cast<Complex>().asDiagonal()).norm() < 1e-10);
    for (int j = 0; j < 4; ++j) {
      int first = 0;
      while (std::abs(a.vectors(first, j)) < 1e-5) ++first;
      CHECK(std::abs(a.vectors(first, j).imag()) < 1e-12);
      CHECK(a.vectors(first, j).real() > 0);
    }
  }
}

TEST_CASE("projector lattice on two lines") {
  const CMatrix p0 = ket_projector(ket({1, 0}));
  const CMatrix pp = ket_projector(ket({1, 1}));
  const Projector P(p0), Q(pp);
  CHECK(proj_meet(P, Q).rank() == 0);
  CHECK((proj_join(P, Q).matrix() - CMatrix::Identity(2, 2)).norm() < 1e-10);
  CHECK((sasaki_product(P, Q).matrix() - p0).norm() < 1e-10);
  CHECK((sasaki_product(Q, P).matrix() - pp).norm() < 1e-10);
  CHECK(proj_ortho(proj_ortho(P)).approx_equal(P));
  CHECK((sasaki_product(P, Projector::identity(2)).matrix() - p0).norm() < 1e-10);
}

TEST_CASE("commuting projectors") {
  CMatrix a = CMatrix::Zero(3, 3), b = CMatrix::Zero(3, 3);
  a(0, 0) = 1;
  b(0, 0) = b(1, 1) = 1;
  const Projector A(a), B(b);
  CHECK((proj_meet(A, B).matrix() - a).norm() < 1e-12);
  CHECK((proj_join(A, B).matrix() - b).norm() < 1e-12);
  CHECK((sasaki_product(B, A).matrix() - b * a).norm() < 1e-12);
  CHECK(A.leq(B));
  CHECK_FALSE(B.leq(A));
}

TEST_CASE("meet and join agree with the SVD oracle on random projectors") {
  Rng rng(2024);
  for (int t = 0; t < 200; ++t) {
    const int n = 2 + t % 4;
    const auto P = random_projector(n, 1 + t % (n - 1), rng);
    auto Q = random_projector(n, 1 + (t / 3) % (n - 1), rng);
    if (t % 5 == 0) Q = Projector(proj_join(P, Q).matrix());  // force a nontrivial meet
    CHECK((proj_meet(P, Q).matrix() - oracle::intersection_projector(P.matrix(), Q.matrix())).norm() < 1e-7);
    CHECK((proj_join(P, Q).matrix() - oracle::join_projector(P.matrix(), Q.matrix())).norm() < 1e-7);
    const auto S = sasaki_product(P, Q);
    CHECK(S.leq(P));
    const CMatrix ref = oracle::intersection_projector(
        P.matrix(), oracle::join_projector(CMatrix::Identity(n, n) - P.matrix(), Q.matrix()));
    CHECK((S.matrix() - ref).norm() < 1e-7);
  }
}

TEST_CASE("orthonormalisation and numerical rank") {
  const auto e = orthonormalize(CMatrix::Identity(3, 3));
  CHECK(e.cols() == 3);
  CHECK((e - CMatrix::Identity(3, 3)).norm() < 1e-14);

  CMatrix dup(3, 2);
  dup << 1, 1, 2, 2, 0, 0;
  CHECK(orthonormalize(dup).cols() == 1);

  CMatrix near(2, 2);
  near << 1, 1, 0, 1e-14;
  ToleranceConfig tol;
  tol.rank_tol = 1e-9;
  CHECK(orthonormalize(near, tol).cols() == 1);
  CHECK(Projector::from_basis(near, 2, tol).rank() == 1);

  CMatrix m(2, 3);
  m << 1, 1, 0, 0, 0, 1;
  const auto k = null_space(m);
  CHECK(k.cols() == 1);
  CHECK((m * k).norm() < 1e-12);
}

TEST_CASE("projector validation and tolerances") {
  CMatrix notp(2, 2);
  notp << 1, 1, 0, 0;
  CHECK_THROWS_AS(Projector{notp}, ncg::DomainError);
  CMatrix nan = CMatrix::Identity(2, 2);
  nan(0, 1) = std::nan("");
  CHECK_THROWS_AS(Projector{nan}, ncg::DomainError);
  CHECK_THROWS_AS(Projector{CMatrix::Identity(2, 3)}, ncg::DomainError);

  ToleranceConfig bad;
  bad.rank_tol = 1e-12;
  CHECK_THROWS_AS(bad.validate(), ncg::DomainError);
  ToleranceConfig neg;
  neg.lattice_tol = -1;
  CHECK_THROWS_AS(neg.validate(), ncg::DomainError);
  CHECK_NOTHROW(default_tolerances().validate());
}

TEST_CASE("random helpers are seeded and well formed") {
  Rng a(5), b(5);
  CHECK((haar_vector(4, a) - haar_vector(4, b)).norm() == 0.0);
  Rng rng(11);
  const CMatrix u = random_unitary(4, rng);
  CHECK((u.adjoint() * u - CMatrix::Identity(4, 4)).norm() < 1e-12);
  const CMatrix rho = random_density(4, rng, 2);
  CHECK(std::abs(rho.trace() - 1.0) < 1e-12);
  CHECK(hermitian_defect(rho) < 1e-12);
  CHECK(Projector(CMatrix(ket_projector(haar_vector(3, rng)))).rank() == 1);
  CHECK(random_projector(5, 3, rng).rank() == 3);
  CHECK(op_norm(CMatrix::Identity(3, 3) * 2.0) == doctest::Approx(2.0));
}
