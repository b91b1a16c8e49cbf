#pragma once

// JSON encodings of lattices, set families, matrices, algebras, states and
// run configurations. Malformed input raises StructuralError.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ncg/algebra.hpp"
#include "ncg/linalg.hpp"
#include "ncg/oml.hpp"
#include "ncg/qspace.hpp"

namespace ncg::io {

using Json = nlohmann::ordered_json;

Json read_json_file(const std::filesystem::path& path);
Json parse_json(const std::string& text);

/// { "n": k, "leq": [[0|1,...],...], "ortho": [...], "labels": [...] }
oml::FiniteOml lattice_from_json(const Json& j);
Json to_json(const oml::FiniteOml& lattice);

/// { "ground": [...], "members": [[point,...],...], "ortho": [...] }; points
/// are ground labels or indices.
oml::SetOml set_oml_from_json(const Json& j);
Json to_json(const oml::SetOml& set);

/// { "rows": n, "cols": m, "re": [[...]], "im": [[...]] }; "im" may be omitted.
linalg::CMatrix matrix_from_json(const Json& j);
Json to_json(const linalg::CMatrix& m);

/// [x, ...] real, or { "re": [...], "im": [...] }.
linalg::CVector vector_from_json(const Json& j);
Json to_json(const linalg::CVector& v);

Json to_json(linalg::Complex z);

/// { "ambient_dim": n, "generators": [matrix, ...] }
algebra::FdAlgebra algebra_from_json(const Json& j, const linalg::ToleranceConfig& tol = {});
Json algebra_to_json(const algebra::FdAlgebra& algebra);

/// A density matrix (matrix JSON), { "block": i, "vector": [...] } or
/// { "ambient_vector": [...] }.
algebra::State state_from_json(const Json& j, const algebra::AlgebraInstance& instance,
                               const linalg::ToleranceConfig& tol = {});

linalg::ToleranceConfig tolerances_from_json(const Json& j);
Json to_json(const linalg::ToleranceConfig& tol);

enum class Format { Json, Csv };
Format parse_format(const std::string& text);

struct RunConfig {
  linalg::ToleranceConfig tolerances{};
  std::optional<std::uint64_t> seed;
  std::size_t samples = 1000;
  qspace::JoinMode mode = qspace::JoinMode::Superposition;
  std::size_t budget = 10000;
  std::string suite;
  std::vector<Json> instances;  // inline instance objects, paths already loaded
  std::vector<std::string> instance_names;
  std::string output;
  Format format = Format::Json;

  /// Throws StructuralError when counts are not positive or tolerances invalid.
  void validate() const;
};

/// { "suite", "instances": [path | object], "samples", "seed", "mode",
///   "tolerances", "budget", "output": { "path", "format" } }. Relative
/// instance paths resolve against `base_dir`.
RunConfig config_from_json(const Json& j, const std::filesystem::path& base_dir);

/// Loads an instance file or object; names come from "name" or the file stem.
Json load_instance(const Json& entry, const std::filesystem::path& base_dir, std::string* name);

}  // namespace ncg::io
