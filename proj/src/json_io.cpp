#include "ncg/json_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "ncg/errors.hpp"

namespace ncg::io {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw StructuralError(std::string("missing field '") + key + "'");
  return j.at(key);
}

template <class T>
T get(const Json& j, const char* what) {
  try {
    return j.get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw StructuralError(std::string("bad value for ") + what + ": " + e.what());
  }
}

double finite(double x, const char* what) {
  if (!std::isfinite(x)) throw StructuralError(std::string(what) + " must be finite");
  return x;
}

double clean(double x) { return std::abs(x) < 1e-15 ? 0.0 : x; }

}  // namespace

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw StructuralError("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return Json::parse(buf.str());
  } catch (const nlohmann::json::parse_error& e) {
    throw StructuralError("cannot parse " + path.string() + ": " + e.what());
  }
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw StructuralError(std::string("cannot parse JSON: ") + e.what());
  }
}

oml::FiniteOml lattice_from_json(const Json& j) {
  const auto& leq_j = field(j, "leq");
  if (!leq_j.is_array()) throw StructuralError("'leq' must be an array of rows");
  std::vector<std::vector<bool>> leq;
  for (const auto& row : leq_j) {
    if (!row.is_array()) throw StructuralError("'leq' rows must be arrays");
    std::vector<bool> r;
    for (const auto& x : row) {
      if (x.is_boolean())
        r.push_back(x.get<bool>());
      else if (x.is_number_integer() && (x.get<int>() == 0 || x.get<int>() == 1))
        r.push_back(x.get<int>() == 1);
      else
        throw StructuralError("'leq' entries must be 0/1 or booleans");
    }
    leq.push_back(std::move(r));
  }
  if (j.contains("n") && get<std::size_t>(j.at("n"), "n") != leq.size())
    throw StructuralError("'n' disagrees with the size of 'leq'");
  const auto ortho = get<std::vector<int>>(field(j, "ortho"), "ortho");
  std::vector<std::string> labels;
  if (j.contains("labels")) labels = get<std::vector<std::string>>(j.at("labels"), "labels");
  return oml::FiniteOml(std::move(leq), ortho, std::move(labels));
}

Json to_json(const oml::FiniteOml& lattice) {
  Json leq = Json::array();
  for (const auto& row : lattice.leq_table()) {
    Json r = Json::array();
    for (bool b : row) r.push_back(b ? 1 : 0);
    leq.push_back(r);
  }
  return Json{{"n", lattice.size()}, {"leq", leq}, {"ortho", lattice.ortho_table()}, {"labels", lattice.labels()}};
}

oml::SetOml set_oml_from_json(const Json& j) {
  const auto ground = get<std::vector<std::string>>(field(j, "ground"), "ground");
  std::vector<oml::Mask> members;
  for (const auto& m : field(j, "members")) {
    if (!m.is_array()) throw StructuralError("each member must be an array of points");
    oml::Mask mask = 0;
    for (const auto& p : m) {
      int idx = -1;
      if (p.is_number_integer()) {
        idx = p.get<int>();
      } else if (p.is_string()) {
        for (std::size_t g = 0; g < ground.size(); ++g)
          if (ground[g] == p.get<std::string>()) idx = static_cast<int>(g);
      }
      if (idx < 0 || idx >= static_cast<int>(ground.size()) || idx >= oml::kMaxGround)
        throw StructuralError("member point " + p.dump() + " is not in the ground set");
      mask |= oml::Mask{1} << idx;
    }
    members.push_back(mask);
  }
  const auto ortho = get<std::vector<int>>(field(j, "ortho"), "ortho");
  return oml::SetOml(ground, std::move(members), ortho);
}

Json to_json(const oml::SetOml& set) {
  Json members = Json::array();
  for (oml::Mask m : set.members()) {
    Json pts = Json::array();
    for (int g = 0; g < set.ground_size(); ++g)
      if (m >> g & 1) pts.push_back(set.ground()[g]);
    members.push_back(pts);
  }
  return Json{{"ground", set.ground()}, {"members", members}, {"ortho", set.ortho_table()}};
}

linalg::CMatrix matrix_from_json(const Json& j) {
  const auto rows = get<long>(field(j, "rows"), "rows");
  const auto cols = get<long>(field(j, "cols"), "cols");
  if (rows <= 0 || cols <= 0) throw StructuralError("matrix dimensions must be positive");
  const auto re = get<std::vector<std::vector<double>>>(field(j, "re"), "re");
  std::vector<std::vector<double>> im;
  if (j.contains("im")) im = get<std::vector<std::vector<double>>>(j.at("im"), "im");
  auto check = [&](const std::vector<std::vector<double>>& t, const char* what) {
    if (static_cast<long>(t.size()) != rows) throw StructuralError(std::string("'") + what + "' has the wrong row count");
    for (const auto& r : t)
      if (static_cast<long>(r.size()) != cols) throw StructuralError(std::string("'") + what + "' has a row of the wrong length");
  };
  check(re, "re");
  if (!im.empty()) check(im, "im");
  linalg::CMatrix m(rows, cols);
  for (long r = 0; r < rows; ++r)
    for (long c = 0; c < cols; ++c)
      m(r, c) = {finite(re[r][c], "matrix entry"), im.empty() ? 0.0 : finite(im[r][c], "matrix entry")};
  return m;
}

Json to_json(const linalg::CMatrix& m) {
  Json re = Json::array(), im = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json a = Json::array(), b = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      a.push_back(clean(m(r, c).real()));
      b.push_back(clean(m(r, c).imag()));
    }
    re.push_back(a);
    im.push_back(b);
  }
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"re", re}, {"im", im}};
}

linalg::CVector vector_from_json(const Json& j) {
  std::vector<double> re, im;
  if (j.is_array()) {
    re = get<std::vector<double>>(j, "vector");
  } else {
    re = get<std::vector<double>>(field(j, "re"), "vector re");
    if (j.contains("im")) im = get<std::vector<double>>(j.at("im"), "vector im");
    if (!im.empty() && im.size() != re.size()) throw StructuralError("vector 're' and 'im' differ in length");
  }
  if (re.empty()) throw StructuralError("vector must be nonempty");
  linalg::CVector v(static_cast<Eigen::Index>(re.size()));
  for (std::size_t i = 0; i < re.size(); ++i)
    v(static_cast<Eigen::Index>(i)) = {finite(re[i], "vector entry"), im.empty() ? 0.0 : finite(im[i], "vector entry")};
  return v;
}

Json to_json(const linalg::CVector& v) {
  Json re = Json::array(), im = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    re.push_back(clean(v(i).real()));
    im.push_back(clean(v(i).imag()));
  }
  return Json{{"re", re}, {"im", im}};
}

Json to_json(linalg::Complex z) { return Json::array({clean(z.real()), clean(z.imag())}); }

algebra::FdAlgebra algebra_from_json(const Json& j, const linalg::ToleranceConfig& tol) {
  const auto n = get<long>(field(j, "ambient_dim"), "ambient_dim");
  if (n <= 0) throw StructuralError("ambient_dim must be positive");
  std::vector<linalg::CMatrix> gens;
  for (const auto& g : field(j, "generators")) {
    auto m = matrix_from_json(g);
    if (m.rows() != n || m.cols() != n) throw StructuralError("generator size differs from ambient_dim");
    gens.push_back(std::move(m));
  }
  if (gens.empty()) gens.push_back(linalg::CMatrix::Identity(n, n));
  return algebra::generate_algebra(gens, tol);
}

Json algebra_to_json(const algebra::FdAlgebra& A) {
  Json gens = Json::array();
  for (const auto& g : A.generators()) gens.push_back(to_json(g));
  return Json{{"ambient_dim", A.ambient_dim()}, {"generators", gens}};
}

algebra::State state_from_json(const Json& j, const algebra::AlgebraInstance& instance,
                               const linalg::ToleranceConfig& tol) {
  try {
    if (j.is_object() && j.contains("rows")) return algebra::State(matrix_from_json(j), tol);
    if (j.is_object() && j.contains("block")) {
      algebra::PureState p{get<int>(j.at("block"), "block"), vector_from_json(field(j, "vector"))};
      p.validate(instance, tol);
      return algebra::as_state(instance, p);
    }
    if (j.is_object() && j.contains("ambient_vector")) {
      const auto v = vector_from_json(j.at("ambient_vector"));
      if (v.size() != instance.algebra.ambient_dim()) throw StructuralError("ambient vector has the wrong length");
      return algebra::State::vector_state(v);
    }
  } catch (const DomainError& e) {
    throw StructuralError(std::string("invalid state: ") + e.what());
  }
  throw StructuralError("state must be a density matrix, {block, vector} or {ambient_vector}");
}

linalg::ToleranceConfig tolerances_from_json(const Json& j) {
  linalg::ToleranceConfig tol;
  if (j.contains("eig_tol")) tol.eig_tol = get<double>(j.at("eig_tol"), "eig_tol");
  if (j.contains("rank_tol")) tol.rank_tol = get<double>(j.at("rank_tol"), "rank_tol");
  if (j.contains("lattice_tol")) tol.lattice_tol = get<double>(j.at("lattice_tol"), "lattice_tol");
  try {
    tol.validate();
  } catch (const DomainError& e) {
    throw StructuralError(e.what());
  }
  return tol;
}

Json to_json(const linalg::ToleranceConfig& tol) {
  return Json{{"eig_tol", tol.eig_tol}, {"rank_tol", tol.rank_tol}, {"lattice_tol", tol.lattice_tol}};
}

Format parse_format(const std::string& text) {
  if (text == "json") return Format::Json;
  if (text == "csv") return Format::Csv;
  throw StructuralError("unknown format '" + text + "'");
}

void RunConfig::validate() const {
  if (samples == 0) throw StructuralError("samples must be positive");
  if (budget == 0) throw StructuralError("budget must be positive");
  try {
    tolerances.validate();
  } catch (const DomainError& e) {
    throw StructuralError(e.what());
  }
}

Json load_instance(const Json& entry, const std::filesystem::path& base_dir, std::string* name) {
  if (entry.is_string()) {
    std::filesystem::path p = entry.get<std::string>();
    if (p.is_relative()) p = base_dir / p;
    Json j = read_json_file(p);
    if (name) *name = j.contains("name") ? get<std::string>(j.at("name"), "name") : p.stem().string();
    return j;
  }
  if (!entry.is_object()) throw StructuralError("instances must be paths or objects");
  if (name) *name = entry.contains("name") ? get<std::string>(entry.at("name"), "name") : "inline";
  return entry;
}

RunConfig config_from_json(const Json& j, const std::filesystem::path& base_dir) {
  if (!j.is_object()) throw StructuralError("config must be a JSON object");
  RunConfig c;
  if (j.contains("suite")) c.suite = get<std::string>(j.at("suite"), "suite");
  if (j.contains("samples")) {
    const auto s = get<long long>(j.at("samples"), "samples");
    if (s <= 0) throw StructuralError("samples must be positive");
    c.samples = static_cast<std::size_t>(s);
  }
  if (j.contains("seed")) c.seed = get<std::uint64_t>(j.at("seed"), "seed");
  if (j.contains("mode")) {
    try {
      c.mode = qspace::parse_join_mode(get<std::string>(j.at("mode"), "mode"));
    } catch (const DomainError& e) {
      throw StructuralError(e.what());
    }
  }
  if (j.contains("tolerances")) c.tolerances = tolerances_from_json(j.at("tolerances"));
  if (j.contains("budget")) {
    const auto b = get<long long>(j.at("budget"), "budget");
    if (b <= 0) throw StructuralError("budget must be positive");
    c.budget = static_cast<std::size_t>(b);
  }
  if (j.contains("instances")) {
    for (const auto& e : j.at("instances")) {
      std::string name;
      c.instances.push_back(load_instance(e, base_dir, &name));
      c.instance_names.push_back(name);
    }
  }
  if (j.contains("output")) {
    const auto& o = j.at("output");
    if (o.contains("path")) c.output = get<std::string>(o.at("path"), "output.path");
    if (o.contains("format")) c.format = parse_format(get<std::string>(o.at("format"), "output.format"));
  }
  c.validate();
  return c;
}

}  // namespace ncg::io
