#pragma once

// Report assembly for the command-line tool. Each builder returns the
// canonical JSON document, its CSV projection and a status (0 when every
// required check held, 1 otherwise). Reports contain no timestamps, so equal
// inputs and seeds give byte-identical output.

#include <string>
#include <vector>

#include "ncg/claims.hpp"
#include "ncg/json_io.hpp"
#include "ncg/sasaki.hpp"
#include "ncg/spectral.hpp"

namespace ncg::report {

using io::Json;

struct Outcome {
  Json json;
  std::string csv;
  int status = 0;
};

/// Lattice JSON is checked with the OML axioms, set-family JSON (with a
/// "ground" field) with the quantum-set axioms as well.
Outcome oml_verify(const Json& input);

enum class FormulaChoice { Classical, Literal, Both };
FormulaChoice parse_formula_choice(const std::string& text);

/// Semigroup sizes, audit and the closed-projection isomorphism certificate.
/// A budget overrun yields status 3 and a report of the partial semigroup.
Outcome oml_semigroup(const oml::FiniteOml& lattice, std::size_t budget, FormulaChoice formulas, bool dump_words);
Outcome oml_boolean(const oml::FiniteOml& lattice);

Outcome alg_generate(const algebra::FdAlgebra& algebra);
Outcome alg_blocks(const algebra::AlgebraInstance& instance);

Json row_json(const claims::ClaimRow& row);
std::string rows_csv(const std::vector<claims::ClaimRow>& rows);

inline const std::vector<std::string>& claim_suites() {
  static const std::vector<std::string> suites{"prop9", "thm3", "prop7", "preimage", "prop1", "prop2", "all"};
  return suites;
}

/// Runs one suite over the configured instances. Throws DecompositionError
/// prefixed with the instance name.
Outcome claims_suite(const io::RunConfig& config);

/// Claims rows for one instance JSON (algebra plus optional probes).
std::vector<claims::ClaimRow> run_suite_on(const std::string& suite, const Json& instance_json,
                                           const claims::ClaimContext& ctx);

struct SpectralOutputs {
  Outcome outcome;
  std::string plot_csv;  // kind,block,x,y
};

SpectralOutputs spectral_report(const linalg::CMatrix& a, const spectral::SigmaOptions& options,
                                const std::optional<spectral::InvsubMode>& invsub,
                                const linalg::ToleranceConfig& tol);

Outcome invsub_report(const linalg::CMatrix& a, spectral::InvsubMode mode, const spectral::InvsubOptions& options,
                      const linalg::ToleranceConfig& tol);

/// Number formatting shared by the CSV writers (%.12g, signed zero removed).
std::string format_number(double x);

}  // namespace ncg::report
