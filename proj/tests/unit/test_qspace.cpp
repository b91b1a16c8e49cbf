#include <doctest.h>

#include "ncg/errors.hpp"
#include "ncg/oml.hpp"
#include "ncg/qspace.hpp"

using namespace ncg::qspace;
using ncg::algebra::diagonal_algebra;
using ncg::algebra::direct_sum_algebra;
using ncg::algebra::full_algebra;
using ncg::algebra::make_instance;

namespace {

CVector unit(int n, int i) { return CVector::Unit(n, i); }
CVector plus2() { return (unit(2, 0) + unit(2, 1)) / std::sqrt(2.0); }
Projector line(const CVector& v) { return Projector(CMatrix(v * v.adjoint() / v.squaredNorm())); }

}  // namespace

TEST_CASE("join modes parse") {
  CHECK(parse_join_mode("superposition") == JoinMode::Superposition);
  CHECK(parse_join_mode("literal") == JoinMode::Literal);
  CHECK_THROWS_AS(parse_join_mode("both"), ncg::DomainError);
  CHECK(std::string(to_string(JoinMode::Literal)) == "literal");
}

TEST_CASE("singleton joins") {
  const auto M = make_instance(full_algebra(2));
  const PureState a{0, unit(2, 0)}, b{0, unit(2, 1)};
  const auto sup = singleton_join(M, a, b);
  CHECK(sup.components[0].rank() == 2);
  Rng rng(4);
  for (int t = 0; t < 20; ++t) CHECK(sup.contains(PureState{0, ncg::linalg::haar_vector(2, rng)}));

  const auto lit = singleton_join(M, a, b, JoinMode::Literal);
  CHECK(lit.contains(a));
  CHECK(lit.contains(b));
  CHECK_FALSE(lit.contains(PureState{0, plus2()}));
  CHECK(lit.points[0].size() == 2);

  // inequivalent states: the join is the pair
  const auto S = make_instance(direct_sum_algebra({2, 1}));
  const PureState c{1, unit(1, 0)};
  const auto pair = singleton_join(S, a, c);
  CHECK(pair.components[0].rank() == 1);
  CHECK(pair.components[1].rank() == 1);
}

TEST_CASE("closures") {
  const auto M3 = make_instance(full_algebra(3));
  const PureState a{0, unit(3, 0)};
  const auto single = qsubset_closure(M3, {a});
  CHECK(single.components[0].rank() == 1);
  CHECK(single.contains(a));
  const auto plane = qsubset_closure(M3, {a, PureState{0, (unit(3, 0) + unit(3, 1)).normalized()}});
  CHECK(plane.components[0].rank() == 2);
  CHECK(plane.contains(PureState{0, unit(3, 1)}));
  CHECK_FALSE(plane.contains(PureState{0, unit(3, 2)}));

  const auto S = make_instance(direct_sum_algebra({2, 1}));
  const auto u = qsubset_closure(S, {PureState{0, unit(2, 0)}, PureState{1, unit(1, 0)}});
  CHECK(u.components[0].rank() == 1);
  CHECK(u.components[1].rank() == 1);
  CHECK_THROWS_AS(qsubset_closure(S, {}), ncg::DomainError);
  CHECK(q_equal(reclose(S, u), u));
}

TEST_CASE("lattice operations on subsets") {
  const auto M = make_instance(full_algebra(2));
  const auto U = subset_from_projectors(M, {line(unit(2, 0))});
  const auto Up = q_perp(U);
  CHECK(q_equal(Up, subset_from_projectors(M, {line(unit(2, 1))})));
  CHECK(q_equal(q_perp(Up), U));
  CHECK(q_leq(U, full_subset(M)));
  CHECK(q_meet(U, Up).empty());
  CHECK(q_equal(q_join(U, Up), full_subset(M)));

  const auto S = make_instance(direct_sum_algebra({2, 1}));
  const auto blockM = subset_from_projectors(S, {Projector::identity(2), Projector::zero(1)});
  const auto blockC = subset_from_projectors(S, {Projector::zero(2), Projector::identity(1)});
  CHECK(q_meet(blockM, blockC).empty());
  CHECK(q_equal(q_join(blockM, blockC), full_subset(S)));
  CHECK_THROWS_AS(subset_from_projectors(S, {Projector::identity(2)}), ncg::DomainError);

  const auto lit = singleton_join(M, PureState{0, unit(2, 0)}, PureState{0, unit(2, 1)}, JoinMode::Literal);
  CHECK_THROWS_AS(q_meet(lit, U), ncg::UnsupportedMode);
  CHECK_THROWS_AS(q_perp(lit), ncg::UnsupportedMode);
}

TEST_CASE("range subsets and the exported set family are quantum sets") {
  const auto M = make_instance(full_algebra(2));
  const auto U = range_subset(M, line(unit(2, 0)));
  CHECK(U.contains(PureState{0, unit(2, 0)}));
  CHECK_FALSE(U.contains(PureState{0, plus2()}));

  // finite ground set: e1, e2, +, − in C²; members are the closed subsets
  // cut out by ∅, the four lines and the whole space
  const std::vector<CVector> pts{unit(2, 0), unit(2, 1), plus2(), (unit(2, 0) - unit(2, 1)) / std::sqrt(2.0)};
  std::vector<ncg::oml::Mask> members{0};
  std::vector<int> ortho{5};
  for (int i = 0; i < 4; ++i) {
    const auto u = qsubset_closure(M, {PureState{0, pts[i]}});
    ncg::oml::Mask m = 0;
    for (int j = 0; j < 4; ++j)
      if (u.contains(PureState{0, pts[j]})) m |= ncg::oml::Mask{1} << j;
    members.push_back(m);
    const auto perp = q_perp(u);
    for (int j = 0; j < 4; ++j)
      if (perp.contains(PureState{0, pts[j]})) ortho.push_back(1 + j);
  }
  members.push_back(0b1111);
  ortho.push_back(0);
  const ncg::oml::SetOml family({"e1", "e2", "+", "-"}, members, ortho);
  CHECK(ncg::oml::verify_quantum_set(family).empty());
}

TEST_CASE("characteristic functions and the product") {
  const auto M = make_instance(full_algebra(2));
  const auto UP = range_subset(M, line(unit(2, 0)));
  const auto UQ = range_subset(M, line(plus2()));
  const auto pq = qfunction_star(chi(UP), chi(UQ));
  const auto qp = qfunction_star(chi(UQ), chi(UP));
  Rng rng(12);
  for (int t = 0; t < 50; ++t) {
    const PureState s{0, ncg::linalg::haar_vector(2, rng)};
    CHECK(std::abs(pq(s) - chi(UP)(s)) < 1e-12);
    CHECK(std::abs(qp(s) - chi(UQ)(s)) < 1e-12);
  }
  CHECK(std::abs(pq(PureState{0, unit(2, 0)}) - 1.0) < 1e-12);

  const auto f = chi(UP, Complex(2, 1)) + chi(UQ, Complex(0, -1));
  const auto fx = qfunction_star(f, chi(full_subset(M)));
  for (int t = 0; t < 20; ++t) {
    const PureState s{0, ncg::linalg::haar_vector(2, rng)};
    CHECK(std::abs(fx(s) - f(s)) < 1e-12);
    CHECK(std::abs(conj(f)(s) - std::conj(f(s))) < 1e-12);
  }
}

TEST_CASE("commutative product is pointwise") {
  const auto D = make_instance(diagonal_algebra(3));
  std::vector<QSubset> subsets;
  for (int m = 0; m < 8; ++m) {
    std::vector<Projector> comps;
    for (int i = 0; i < 3; ++i) comps.push_back(m >> i & 1 ? Projector::identity(1) : Projector::zero(1));
    subsets.push_back(subset_from_projectors(D, comps));
  }
  for (const auto& u : subsets)
    for (const auto& v : subsets) {
      const auto f = chi(u, Complex(1, 2)) + chi(v, -0.5);
      const auto g = chi(v, Complex(0, 3));
      const auto h = qfunction_star(f, g);
      for (int i = 0; i < 3; ++i) {
        const PureState s{i, CVector::Ones(1)};
        CHECK(std::abs(h(s) - f(s) * g(s)) < 1e-12);
      }
    }
}

TEST_CASE("sup norms and spectral functions") {
  const auto M = make_instance(full_algebra(2));
  Rng rng(8);
  const auto n = sup_norm(M, chi(full_subset(M), Complex(3, 4)), 100, rng);
  CHECK(n.value == doctest::Approx(5.0));
  CHECK(n.method == "exact");

  CMatrix sz = CMatrix::Zero(2, 2);
  sz(0, 0) = 1;
  sz(1, 1) = -1;
  const auto sp = spectral_projections(sz);
  REQUIRE(sp.size() == 2);
  CHECK(sp[0].first == doctest::Approx(-1.0));
  CHECK(sp[1].first == doctest::Approx(1.0));
  const auto f = spectral_function(M, sz);
  CHECK(std::abs(f(PureState{0, unit(2, 0)}) - 1.0) < 1e-12);
  CHECK(std::abs(f(PureState{0, unit(2, 1)}) + 1.0) < 1e-12);
  CHECK(std::abs(f(PureState{0, plus2()})) < 1e-12);
}
