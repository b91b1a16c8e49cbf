#include "ncg/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "ncg/errors.hpp"

namespace ncg::report {

using claims::ClaimRow;
using linalg::CMatrix;
using linalg::CVector;

std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", std::abs(x) < 1e-15 ? 0.0 : x);
  return buf;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

Json labels_of(const oml::FiniteOml& L, const std::vector<int>& elements) {
  Json out = Json::array();
  for (int e : elements) out.push_back(e >= 0 && e < L.size() ? L.label(e) : std::to_string(e));
  return out;
}

Json violations_json(const oml::AxiomReport& report, const oml::FiniteOml* L, std::string& csv) {
  Json out = Json::array();
  for (const auto& v : report) {
    Json w = L ? labels_of(*L, v.witness) : Json(v.witness);
    out.push_back(Json{{"axiom", v.axiom}, {"witness", w}});
    std::string ws;
    for (const auto& x : w) ws += (ws.empty() ? "" : " ") + (x.is_string() ? x.get<std::string>() : x.dump());
    csv += csv_field(v.axiom) + "," + csv_field(ws) + "\n";
  }
  return out;
}

}  // namespace

Outcome oml_verify(const Json& input) {
  Outcome o;
  o.csv = "axiom,witness\n";
  if (input.is_object() && input.contains("ground")) {
    const auto set = io::set_oml_from_json(input);
    const auto report = oml::verify_quantum_set(set);
    o.json = Json{{"kind", "quantum-set"},
                  {"ground_size", set.ground_size()},
                  {"members", set.size()},
                  {"violations", violations_json(report, nullptr, o.csv)},
                  {"ok", report.empty()}};
    o.status = report.empty() ? 0 : 1;
    return o;
  }
  const auto L = io::lattice_from_json(input);
  const auto report = oml::verify_oml(L);
  o.json = Json{{"kind", "lattice"},
                {"size", L.size()},
                {"violations", violations_json(report, &L, o.csv)},
                {"ok", report.empty()}};
  o.status = report.empty() ? 0 : 1;
  return o;
}

FormulaChoice parse_formula_choice(const std::string& text) {
  if (text == "classical") return FormulaChoice::Classical;
  if (text == "literal") return FormulaChoice::Literal;
  if (text == "both") return FormulaChoice::Both;
  throw StructuralError("unknown formula '" + text + "'");
}

namespace {

Json audit_json(const sasaki::SemigroupAudit& a) {
  return Json{{"non_monotone", a.non_monotone},
              {"star_unresolved", a.star_unresolved},
              {"star_not_involutive", a.star_not_involutive},
              {"star_not_antihomomorphic", a.star_not_antihomomorphic},
              {"perp_not_antihomomorphic", a.perp_not_antihomomorphic},
              {"adjoint_law_failures", a.adjoint_law_failures},
              {"generators_not_self_adjoint", a.generators_not_self_adjoint},
              {"non_idempotent_generators", a.non_idempotent_generators},
              {"contains_identity", a.contains_identity},
              {"clean", a.clean()}};
}

Json words_json(const oml::FiniteOml& L, const sasaki::BaerSemigroup& S) {
  Json out = Json::array();
  for (const auto& w : S.words) out.push_back(labels_of(L, w));
  return out;
}

}  // namespace

Outcome oml_semigroup(const oml::FiniteOml& L, std::size_t budget, FormulaChoice formulas, bool dump_words) {
  Outcome o;
  o.csv = "formula,semigroup_size,complete,closed_projections,isomorphic,equals_sasaki_set,adjoint_law_failures\n";
  Json results = Json::array();
  std::vector<sasaki::Formula> list;
  if (formulas != FormulaChoice::Literal) list.push_back(sasaki::Formula::Classical);
  if (formulas != FormulaChoice::Classical) list.push_back(sasaki::Formula::Literal);
  for (auto f : list) {
    Json r{{"formula", sasaki::to_string(f)}};
    try {
      const auto S = sasaki::enumerate_semigroup(L, budget, f);
      const auto audit = sasaki::audit_semigroup(L, S);
      const auto cp = sasaki::closed_projections(L, S);
      const bool boolean = oml::is_boolean(L).boolean;
      bool sasaki_set_closed = static_cast<int>(S.size()) <= L.size();
      r["semigroup_size"] = S.size();
      r["complete"] = true;
      r["sasaki_set_closed"] = sasaki_set_closed;
      r["boolean"] = boolean;
      r["audit"] = audit_json(audit);
      Json embedding = Json::object();
      for (int p = 0; p < L.size(); ++p)
        embedding[L.label(p)] = cp.embedding[p] >= 0 ? Json(cp.elements[cp.embedding[p]]) : Json(nullptr);
      r["closed_projections"] = Json{{"count", cp.elements.size()},
                                     {"elements", cp.elements},
                                     {"equals_sasaki_set", cp.equals_sasaki_set},
                                     {"isomorphic", cp.isomorphic},
                                     {"certificate", embedding},
                                     {"failures", cp.failures}};
      if (dump_words) r["words"] = words_json(L, S);
      o.csv += std::string(sasaki::to_string(f)) + "," + std::to_string(S.size()) + ",true," +
               std::to_string(cp.elements.size()) + "," + (cp.isomorphic ? "true" : "false") + "," +
               (cp.equals_sasaki_set ? "true" : "false") + "," + std::to_string(audit.adjoint_law_failures) + "\n";
      // the literal formula is a comparison run; only the classical one is required
      if (f == sasaki::Formula::Classical && !(cp.isomorphic && audit.clean())) o.status = std::max(o.status, 1);
    } catch (const sasaki::SemigroupBudgetExceeded& e) {
      r["semigroup_size"] = e.partial().size();
      r["complete"] = false;
      r["frontier"] = e.frontier();
      r["budget"] = budget;
      if (dump_words) r["words"] = words_json(L, e.partial());
      o.csv += std::string(sasaki::to_string(f)) + "," + std::to_string(e.partial().size()) + ",false,,,,\n";
      o.status = 3;
    }
    results.push_back(r);
  }
  o.json = Json{{"lattice_size", L.size()}, {"results", results}};
  return o;
}

Outcome oml_boolean(const oml::FiniteOml& L) {
  Outcome o;
  const auto b = oml::is_boolean(L);
  const auto violations = oml::verify_oml(L);
  o.json = Json{{"size", L.size()}, {"is_oml", violations.empty()}, {"boolean", b.boolean}};
  o.csv = "boolean,witness_p,witness_q\n";
  if (b.witness) {
    const auto [p, q] = *b.witness;
    o.json["witness"] = Json{{"p", L.label(p)},
                             {"q", L.label(q)},
                             {"p_skew_q", L.label(oml::skew_meet(L, p, q))},
                             {"q_skew_p", L.label(oml::skew_meet(L, q, p))}};
    o.csv += "false," + csv_field(L.label(p)) + "," + csv_field(L.label(q)) + "\n";
  } else {
    o.csv += "true,,\n";
  }
  o.status = violations.empty() ? 0 : 1;
  return o;
}

Outcome alg_generate(const algebra::FdAlgebra& A) {
  Outcome o;
  Json basis = Json::array();
  for (const auto& b : A.basis()) basis.push_back(io::to_json(b));
  o.json = Json{{"ambient_dim", A.ambient_dim()},
                {"dimension", A.dim()},
                {"commutative", A.is_commutative()},
                {"contains_identity", A.contains(CMatrix::Identity(A.ambient_dim(), A.ambient_dim()))},
                {"basis", basis}};
  o.csv = "ambient_dim,dimension,commutative\n" + std::to_string(A.ambient_dim()) + "," + std::to_string(A.dim()) +
          "," + (A.is_commutative() ? "true" : "false") + "\n";
  return o;
}

Outcome alg_blocks(const algebra::AlgebraInstance& I) {
  Outcome o;
  Json blocks = Json::array();
  o.csv = "block,irrep_dim,multiplicity,central_rank\n";
  double recon = 0;
  for (const auto& b : I.algebra.basis())
    recon = std::max(recon, linalg::op_norm(b - algebra::reassemble(I.blocks, b)));
  for (std::size_t i = 0; i < I.blocks.blocks.size(); ++i) {
    const auto& b = I.blocks.blocks[i];
    blocks.push_back(Json{{"block", i},
                          {"irrep_dim", b.irrep_dim},
                          {"multiplicity", b.multiplicity},
                          {"central_rank", b.central.rank()}});
    o.csv += std::to_string(i) + "," + std::to_string(b.irrep_dim) + "," + std::to_string(b.multiplicity) + "," +
             std::to_string(b.central.rank()) + "\n";
  }
  const bool commutative = I.algebra.is_commutative();
  const bool discrete = algebra::r_is_discrete(I);
  o.json = Json{{"dimension", I.algebra.dim()},
                {"center_dim", I.blocks.center_dim},
                {"commutative", commutative},
                {"r_discrete", discrete},
                {"reconstruction_defect", format_number(recon)},
                {"blocks", blocks}};
  o.status = discrete == commutative && recon <= 1e-8 ? 0 : 1;
  return o;
}

Json row_json(const ClaimRow& row) {
  Json defects = Json::object();
  for (const auto& [k, v] : row.defects) defects[k] = format_number(v);
  return Json{{"claim", row.claim},
              {"instance", row.instance},
              {"mode", row.mode},
              {"verdict", claims::to_string(row.verdict)},
              {"expected", claims::to_string(row.expected)},
              {"method", row.method},
              {"seed", row.seed},
              {"defects", defects},
              {"witness", row.witness}};
}

std::string rows_csv(const std::vector<ClaimRow>& rows) {
  std::string csv = "claim,instance,mode,verdict,expected,method,seed,defects,witness\n";
  for (const auto& r : rows) {
    std::string defects;
    for (const auto& [k, v] : r.defects) defects += (defects.empty() ? "" : ";") + k + "=" + format_number(v);
    csv += csv_field(r.claim) + "," + csv_field(r.instance) + "," + r.mode + "," + claims::to_string(r.verdict) + "," +
           claims::to_string(r.expected) + "," + csv_field(r.method) + "," + std::to_string(r.seed) + "," +
           csv_field(defects) + "," + csv_field(r.witness) + "\n";
  }
  return csv;
}

namespace {

CMatrix first_non_scalar(const algebra::FdAlgebra& A) {
  const int n = A.ambient_dim();
  for (const auto& g : A.generators()) {
    const CMatrix h = (g + g.adjoint()) / 2.0;
    const linalg::Complex mean = h.trace() / static_cast<double>(n);
    if (linalg::op_norm(h - mean * CMatrix::Identity(n, n)) > 1e-8) return h;
  }
  return CMatrix::Identity(n, n);
}

CMatrix probe_matrix(const Json& j, const char* key, const CMatrix& fallback) {
  return j.contains(key) ? io::matrix_from_json(j.at(key)) : fallback;
}

}  // namespace

std::vector<ClaimRow> run_suite_on(const std::string& suite, const Json& j, const claims::ClaimContext& ctx) {
  const auto A = io::algebra_from_json(j, ctx.tol);
  algebra::AlgebraInstance I;
  try {
    I = algebra::make_instance(A, ctx.tol);
  } catch (const DecompositionError& e) {
    throw DecompositionError("instance " + ctx.instance + ": " + e.what());
  }
  const CMatrix a = probe_matrix(j, "a", first_non_scalar(A));
  const CMatrix b = probe_matrix(j, "b", a);
  if (!A.contains(a, ctx.tol) || !A.contains(b, ctx.tol))
    throw StructuralError("instance " + ctx.instance + ": probe elements must belong to the algebra");
  const linalg::Projector p =
      j.contains("p") ? linalg::Projector(io::matrix_from_json(j.at("p")), ctx.tol.lattice_tol) : claims::top_projection(a, ctx.tol);

  std::vector<ClaimRow> rows;
  auto want = [&](const char* s) { return suite == s || suite == "all"; };
  if (want("prop1")) {
    auto r = claims::prop1_rows(ctx, I);
    rows.insert(rows.end(), r.begin(), r.end());
  }
  if (want("prop2")) {
    auto r = claims::prop2_rows(ctx, I);
    rows.insert(rows.end(), r.begin(), r.end());
  }
  if (want("prop7")) rows.push_back(claims::cstar_identity_defect(ctx, I, claims::default_probe_function(I, ctx.tol)));
  if (want("prop9")) {
    const algebra::State state =
        j.contains("state") ? io::state_from_json(j.at("state"), I, ctx.tol)
                            : algebra::as_state(I, algebra::PureState{0, CVector::Unit(I.blocks.blocks[0].irrep_dim, 0)});
    rows.push_back(claims::prop9_defect(ctx, I, state, a, b));
    rows.push_back(claims::hat_is_characteristic_defect(ctx, I, p));
  }
  if (want("thm3")) {
    auto r = claims::thm3_diagnostics(ctx, I);
    rows.insert(rows.end(), r.begin(), r.end());
  }
  if (want("preimage")) {
    linalg::Complex center = 1.0;
    double radius = 0.1;
    if (j.contains("region")) {
      const auto& reg = j.at("region");
      if (reg.contains("center")) {
        const auto c = reg.at("center").get<std::vector<double>>();
        if (c.size() != 2) throw StructuralError("region center must be [re, im]");
        center = {c[0], c[1]};
      }
      if (reg.contains("radius")) radius = reg.at("radius").get<double>();
      if (!(radius > 0)) throw StructuralError("region radius must be positive");
    }
    const CMatrix target = j.contains("p") || !j.contains("a") ? p.matrix() : a;
    rows.push_back(claims::hat_preimage_qness(ctx, I, target, center, radius));
  }
  return rows;
}

Outcome claims_suite(const io::RunConfig& config) {
  const auto& suites = claim_suites();
  if (std::find(suites.begin(), suites.end(), config.suite) == suites.end())
    throw StructuralError("unknown suite '" + config.suite + "'");
  if (!config.seed) throw StructuralError("a seed is required (--seed or \"seed\" in the config)");
  if (config.instances.empty()) throw StructuralError("no instances given");
  std::vector<ClaimRow> rows;
  for (std::size_t i = 0; i < config.instances.size(); ++i) {
    claims::ClaimContext ctx;
    ctx.instance = config.instance_names[i];
    ctx.seed = *config.seed;
    ctx.samples = config.samples;
    ctx.mode = config.mode;
    ctx.tol = config.tolerances;
    auto r = run_suite_on(config.suite, config.instances[i], ctx);
    rows.insert(rows.end(), r.begin(), r.end());
  }
  Outcome o;
  Json jr = Json::array();
  std::size_t required_failures = 0, findings = 0;
  for (const auto& r : rows) {
    jr.push_back(row_json(r));
    if (r.violates_expectation()) ++required_failures;
    if (r.expected == claims::Expectation::Finding && r.verdict == claims::Verdict::Fails) ++findings;
  }
  o.json = Json{{"suite", config.suite},
                {"config",
                 Json{{"seed", *config.seed},
                      {"samples", config.samples},
                      {"mode", qspace::to_string(config.mode)},
                      {"tolerances", io::to_json(config.tolerances)}}},
                {"instances", config.instance_names},
                {"rows", jr},
                {"summary", Json{{"rows", rows.size()}, {"required_failures", required_failures}, {"findings", findings}}}};
  o.csv = rows_csv(rows);
  o.status = required_failures ? 1 : 0;
  return o;
}

SpectralOutputs spectral_report(const CMatrix& a, const spectral::SigmaOptions& options,
                                const std::optional<spectral::InvsubMode>& invsub, const linalg::ToleranceConfig& tol) {
  const auto r = spectral::sigma_big(a, options, tol);
  SpectralOutputs out;
  Json sigma = Json::array();
  for (const auto& z : r.sigma) sigma.push_back(io::to_json(z));
  Json blocks = Json::array();
  for (const auto& b : r.blocks) {
    Json poly = Json::array();
    for (const auto& z : b.boundary) poly.push_back(io::to_json(z));
    blocks.push_back(Json{{"block", b.block},
                          {"irrep_dim", b.irrep_dim},
                          {"multiplicity", b.multiplicity},
                          {"width", format_number(b.width)},
                          {"boundary", poly}});
  }
  out.outcome.json = Json{{"dimension", a.rows()},
                          {"sigma", sigma},
                          {"Sigma", blocks},
                          {"flags",
                           Json{{"sigma_singleton", r.sigma_singleton},
                                {"Sigma_singleton", r.Sigma_singleton},
                                {"sigma_equals_Sigma", r.sigma_equals_Sigma},
                                {"sigma_prime_nonempty", !r.sigma_equals_Sigma}}},
                          {"containment", format_number(r.containment)},
                          {"hausdorff", format_number(r.hausdorff)},
                          {"angles", r.angles},
                          {"samples", r.samples.size()},
                          {"seed", options.seed}};
  out.outcome.csv = "quantity,value\n";
  out.outcome.csv += "dimension," + std::to_string(a.rows()) + "\n";
  out.outcome.csv += "blocks," + std::to_string(r.blocks.size()) + "\n";
  out.outcome.csv += "containment," + format_number(r.containment) + "\n";
  out.outcome.csv += "hausdorff," + format_number(r.hausdorff) + "\n";
  out.outcome.csv += std::string("sigma_equals_Sigma,") + (r.sigma_equals_Sigma ? "true" : "false") + "\n";
  out.outcome.status = r.containment <= 1e-6 * std::max(1.0, linalg::op_norm(a)) ? 0 : 1;

  std::string plot = "kind,block,x,y\n";
  for (const auto& z : r.sigma) plot += "sigma,-1," + format_number(z.real()) + "," + format_number(z.imag()) + "\n";
  for (const auto& b : r.blocks) {
    for (std::size_t k = 0; k < b.support.size(); ++k)
      plot += "support," + std::to_string(b.block) + "," + format_number(2.0 * M_PI * k / r.angles) + "," +
              format_number(b.support[k]) + "\n";
    for (const auto& z : b.boundary)
      plot += "boundary," + std::to_string(b.block) + "," + format_number(z.real()) + "," + format_number(z.imag()) + "\n";
  }
  for (std::size_t s = 0; s < r.samples.size(); ++s)
    plot += "sample," + std::to_string(r.sample_blocks[s]) + "," + format_number(r.samples[s].real()) + "," +
            format_number(r.samples[s].imag()) + "\n";
  out.plot_csv = std::move(plot);

  if (invsub) {
    spectral::InvsubOptions opt;
    opt.sigma = options;
    const auto inv = invsub_report(a, *invsub, opt, tol);
    out.outcome.json["invariant_subspace"] = inv.json;
    out.outcome.csv += "\n" + inv.csv;
    out.outcome.status = std::max(out.outcome.status, inv.status);
  }
  return out;
}

Outcome invsub_report(const CMatrix& a, spectral::InvsubMode mode, const spectral::InvsubOptions& options,
                      const linalg::ToleranceConfig& tol) {
  const auto results = spectral::invariant_subspace(a, mode, options, tol);
  Outcome o;
  Json rows = Json::array();
  o.csv = "provenance,case,rank,ambient,invariance_defect,nontrivial,discrepancy,note\n";
  for (const auto& r : results) {
    rows.push_back(Json{{"provenance", r.provenance},
                        {"case", r.case_tag},
                        {"rank", r.rank},
                        {"ambient", r.ambient},
                        {"invariance_defect", format_number(r.invariance_defect)},
                        {"nontrivial", r.nontrivial},
                        {"discrepancy", r.discrepancy ? Json(*r.discrepancy) : Json(nullptr)},
                        {"note", r.note},
                        {"projector", io::to_json(r.projector.matrix())}});
    o.csv += r.provenance + "," + r.case_tag + "," + std::to_string(r.rank) + "," + std::to_string(r.ambient) + "," +
             format_number(r.invariance_defect) + "," + (r.nontrivial ? "true" : "false") + "," +
             csv_field(r.discrepancy.value_or("")) + "," + csv_field(r.note) + "\n";
    // only the oracle carries a guarantee; construction rows are findings
    if (r.provenance == "eigenvector-oracle" && !(r.nontrivial && r.invariance_defect <= 1e-10)) o.status = 1;
  }
  o.json = Json{{"mode", spectral::to_string(mode)}, {"results", rows}};
  if (results.size() == 2) {
    const auto& p = results[0];
    const auto& q = results[1];
    o.json["comparison"] = Json{{"paper_rank", p.rank},
                                {"oracle_rank", q.rank},
                                {"paper_defect", format_number(p.invariance_defect)},
                                {"oracle_defect", format_number(q.invariance_defect)},
                                {"paper_nontrivial", p.nontrivial},
                                {"same_subspace", p.projector.dim() == q.projector.dim() &&
                                                      p.projector.approx_equal(q.projector, 1e-8)}};
  }
  return o;
}

}  // namespace ncg::report
