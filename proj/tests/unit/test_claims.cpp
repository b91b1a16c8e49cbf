#include <doctest.h>

#include "ncg/claims.hpp"

using namespace ncg::claims;
using ncg::algebra::diagonal_algebra;
using ncg::algebra::direct_sum_algebra;
using ncg::algebra::full_algebra;
using ncg::algebra::generate_algebra;
using ncg::algebra::make_instance;
using ncg::linalg::CVector;

namespace {

CMatrix mat2(Complex a, Complex b, Complex c, Complex d) {
  CMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

const CMatrix kSx = mat2(0, 1, 1, 0);
const CMatrix kSz = mat2(1, 0, 0, -1);
const CMatrix kE11 = mat2(1, 0, 0, 0);

ClaimContext context(const std::string& name, std::size_t samples = 1000) {
  ClaimContext ctx;
  ctx.instance = name;
  ctx.seed = 42;
  ctx.samples = samples;
  return ctx;
}

const ClaimRow& find(const std::vector<ClaimRow>& rows, const std::string& claim) {
  for (const auto& r : rows)
    if (r.claim == claim) return r;
  FAIL("missing row " << claim);
  return rows.front();
}

}  // namespace

TEST_CASE("prop9 on a commutative algebra holds for pure states") {
  const auto D = make_instance(diagonal_algebra(3));
  CMatrix a = CMatrix::Zero(3, 3), b = CMatrix::Zero(3, 3);
  a.diagonal() << 1, 2, 3;
  b.diagonal() << -1, 0, 4;
  for (int i = 0; i < 3; ++i) {
    const auto row = prop9_defect(context("diag3"), D, ncg::algebra::State::vector_state(CVector::Unit(3, i)), a, b);
    CHECK(row.verdict == Verdict::Holds);
    CHECK(row.expected == Expectation::Holds);
    for (const auto& [name, value] : row.defects)
      if (name != "pure") CHECK(value <= 1e-12);
  }
}

TEST_CASE("prop9 findings on M_2") {
  const auto M = make_instance(generate_algebra({kSx, kSz}));
  const auto e1 = ncg::algebra::State::vector_state(CVector::Unit(2, 0));
  const auto row = prop9_defect(context("m2"), M, e1, kSx, kSx);
  CHECK(std::abs(row.defect("square") - 1.0) <= 1e-12);
  CHECK(row.verdict == Verdict::Fails);
  CHECK(row.expected == Expectation::Finding);
  CHECK_FALSE(row.violates_expectation());

  const ncg::algebra::State mixed(CMatrix::Identity(2, 2) / 2.0);
  const auto mrow = prop9_defect(context("m2"), M, mixed, kSz, kSz);
  CHECK(mrow.defect("square") > 0);
  CHECK(mrow.defect("pure") == 0.0);
}

TEST_CASE("characteristic defect") {
  const auto M = make_instance(full_algebra(2));
  const auto row = hat_is_characteristic_defect(context("m2", 10000), M, Projector(kE11));
  CHECK(row.defect("defect") >= 0.49);
  CHECK(row.verdict == Verdict::Fails);
  CHECK(hat_is_characteristic_defect(context("m2"), M, Projector::identity(2)).defect("defect") <= 1e-12);
  const auto D = make_instance(diagonal_algebra(3));
  CMatrix p = CMatrix::Zero(3, 3);
  p(1, 1) = 1;
  CHECK(hat_is_characteristic_defect(context("d3"), D, Projector(p)).defect("defect") <= 1e-12);
}

TEST_CASE("preimage joins") {
  const auto M = make_instance(full_algebra(2));
  const auto fails = hat_preimage_qness(context("m2"), M, kE11, 1.0, 0.1);
  CHECK(fails.verdict == Verdict::Fails);
  CHECK_FALSE(fails.witness.empty());
  CHECK(fails.defect("max_excess") > 0.1);
  CHECK(hat_preimage_qness(context("m2"), M, CMatrix::Identity(2, 2), 1.0, 0.1).verdict == Verdict::Holds);
  const auto D = make_instance(diagonal_algebra(3));
  CMatrix a = CMatrix::Zero(3, 3);
  a.diagonal() << 1, 1.05, 3;
  CHECK(hat_preimage_qness(context("d3"), D, a, 1.0, 0.1).verdict == Verdict::Holds);

  auto lit = context("m2");
  lit.mode = ncg::qspace::JoinMode::Literal;
  const auto literal = hat_preimage_qness(lit, M, kE11, 1.0, 0.1);
  CHECK(literal.mode == "literal");
  CHECK(literal.verdict == Verdict::Holds);
}

TEST_CASE("C*-identity") {
  const auto M = make_instance(full_algebra(2));
  const auto f = ncg::qspace::chi(ncg::qspace::full_subset(M));
  CHECK(cstar_identity_defect(context("m2"), M, f).defect("defect") <= 1e-12);
  const auto probe = cstar_identity_defect(context("m2"), make_instance(generate_algebra({kSx, kSz})),
                                           default_probe_function(make_instance(generate_algebra({kSx, kSz}))));
  CHECK(probe.expected == Expectation::Finding);
  CHECK(probe.defect("defect") > 0);

  const auto D = make_instance(diagonal_algebra(4));
  const auto drow = cstar_identity_defect(context("d4"), D, default_probe_function(D));
  CHECK(drow.defect("defect") <= 1e-9);
  CHECK(drow.expected == Expectation::Holds);
}

TEST_CASE("thm3 diagnostics") {
  for (int n = 2; n <= 5; ++n) {
    const auto rows = thm3_diagnostics(context("diag"), make_instance(diagonal_algebra(n)));
    CHECK(rows.size() == 5);
    for (const auto& r : rows) {
      CHECK(r.verdict == Verdict::Holds);
      for (const auto& [name, v] : r.defects)
        if (name == "defect" || name == "rank_deficit" || name == "dimension_gap") CHECK(v <= 1e-10);
    }
  }
  for (const auto& A : {full_algebra(2), direct_sum_algebra({2, 1})}) {
    const auto rows = thm3_diagnostics(context("m2"), make_instance(A));
    CHECK(find(rows, "thm3.injective").verdict == Verdict::Holds);
    CHECK(find(rows, "thm3.separation").verdict == Verdict::Holds);
    const auto& hom = find(rows, "thm3.homomorphism");
    CHECK(hom.verdict == Verdict::Fails);
    CHECK(hom.expected == Expectation::Finding);
    CHECK_FALSE(hom.witness.empty());
  }
}

TEST_CASE("prop1 and prop2 rows") {
  for (const auto& A : {diagonal_algebra(2), full_algebra(2), direct_sum_algebra({2, 1}), full_algebra(3)}) {
    const auto I = make_instance(A);
    for (const auto& r : prop1_rows(context("x"), I)) CHECK(r.verdict == Verdict::Holds);
    for (const auto& r : prop2_rows(context("x"), I)) CHECK_FALSE(r.violates_expectation());
  }
  const auto rows = prop2_rows(context("d3"), make_instance(diagonal_algebra(3)));
  CHECK(find(rows, "prop2.onto").verdict == Verdict::Holds);
}

TEST_CASE("rows are reproducible for a fixed seed") {
  const auto M = make_instance(full_algebra(2));
  const auto a = hat_is_characteristic_defect(context("m2"), M, Projector(kE11));
  const auto b = hat_is_characteristic_defect(context("m2"), M, Projector(kE11));
  CHECK(a.defects == b.defects);
  CHECK(a.witness == b.witness);
}
