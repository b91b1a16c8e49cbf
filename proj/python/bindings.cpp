#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ncg/cli.hpp"
#include "ncg/errors.hpp"
#include "ncg/report.hpp"

namespace py = pybind11;
using namespace ncg;
using linalg::CMatrix;

namespace {

io::Json to_json(const py::object& obj) {
  if (py::isinstance<py::str>(obj)) return io::parse_json(obj.cast<std::string>());
  return io::parse_json(py::module_::import("json").attr("dumps")(obj).cast<std::string>());
}

// the module object owns the exception type, so a borrowed handle stays valid
py::handle structural_type;

py::object to_py(const io::Json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

py::dict outcome(const report::Outcome& o) {
  py::dict d;
  d["report"] = to_py(o.json);
  d["csv"] = o.csv;
  d["status"] = o.status;
  return d;
}

linalg::ToleranceConfig tolerances(double eig_tol, double rank_tol, double lattice_tol) {
  linalg::ToleranceConfig t{eig_tol, rank_tol, lattice_tol};
  t.validate();
  return t;
}

}  // namespace

PYBIND11_MODULE(ncgelfand, m) {
  m.doc() = "Finite orthomodular lattices, Sasaki semigroups and finite-dimensional Gelfand-duality diagnostics";

  // derived types are registered after the base so their translators run first
  auto& base = py::register_exception<Error>(m, "NcgError", PyExc_RuntimeError);
  auto& structural = py::register_exception<StructuralError>(m, "StructuralError", base.ptr());
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", base.ptr());
  py::register_exception<DecompositionError>(m, "DecompositionError", base.ptr());
  py::register_exception<UnsupportedMode>(m, "UnsupportedMode", base.ptr());
  structural_type = structural.ptr();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const io::Json::exception& e) {
      py::set_error(structural_type, e.what());
    }
  });

  m.def("verify_oml", [](const py::object& lattice) { return outcome(report::oml_verify(to_json(lattice))); },
        py::arg("lattice"), "Check the OML axioms of a lattice (or quantum-set axioms of a set family).");

  m.def(
      "oml_semigroup",
      [](const py::object& lattice, std::size_t cap, const std::string& formula, bool dump_words) {
        const auto L = io::lattice_from_json(to_json(lattice));
        return outcome(report::oml_semigroup(L, cap, report::parse_formula_choice(formula), dump_words));
      },
      py::arg("lattice"), py::arg("budget") = 10000, py::arg("formula") = "classical", py::arg("dump_words") = false);

  m.def(
      "is_boolean", [](const py::object& lattice) { return outcome(report::oml_boolean(io::lattice_from_json(to_json(lattice)))); },
      py::arg("lattice"));

  m.def(
      "hermitian_eig",
      [](const CMatrix& a) {
        const auto es = linalg::hermitian_eig(a);
        return py::make_tuple(linalg::RVector(es.values), CMatrix(es.vectors));
      },
      py::arg("a"));

  m.def(
      "proj_meet",
      [](const CMatrix& p, const CMatrix& q, double tol) {
        const auto t = tolerances(1e-10, 1e-8, tol);
        return linalg::proj_meet(linalg::Projector(p, tol), linalg::Projector(q, tol), t).matrix();
      },
      py::arg("p"), py::arg("q"), py::arg("lattice_tol") = 1e-8);
  m.def(
      "proj_join",
      [](const CMatrix& p, const CMatrix& q, double tol) {
        const auto t = tolerances(1e-10, 1e-8, tol);
        return linalg::proj_join(linalg::Projector(p, tol), linalg::Projector(q, tol), t).matrix();
      },
      py::arg("p"), py::arg("q"), py::arg("lattice_tol") = 1e-8);
  m.def(
      "sasaki_product",
      [](const CMatrix& p, const CMatrix& q, double tol) {
        const auto t = tolerances(1e-10, 1e-8, tol);
        return linalg::sasaki_product(linalg::Projector(p, tol), linalg::Projector(q, tol), t).matrix();
      },
      py::arg("p"), py::arg("q"), py::arg("lattice_tol") = 1e-8);

  m.def(
      "generate_algebra",
      [](const std::vector<CMatrix>& generators, int ambient_dim) {
        io::Json j{{"ambient_dim", ambient_dim}, {"generators", io::Json::array()}};
        for (const auto& g : generators) j["generators"].push_back(io::to_json(g));
        return outcome(report::alg_generate(io::algebra_from_json(j)));
      },
      py::arg("generators"), py::arg("ambient_dim"));
  m.def(
      "block_decompose",
      [](const std::vector<CMatrix>& generators, int ambient_dim) {
        io::Json j{{"ambient_dim", ambient_dim}, {"generators", io::Json::array()}};
        for (const auto& g : generators) j["generators"].push_back(io::to_json(g));
        return outcome(report::alg_blocks(algebra::make_instance(io::algebra_from_json(j))));
      },
      py::arg("generators"), py::arg("ambient_dim"));

  m.def(
      "run_claims",
      [](const std::string& suite, const std::vector<py::object>& instances, std::uint64_t seed, std::size_t samples,
         const std::string& mode) {
        io::RunConfig cfg;
        cfg.suite = suite;
        cfg.seed = seed;
        cfg.samples = samples;
        cfg.mode = qspace::parse_join_mode(mode);
        for (std::size_t i = 0; i < instances.size(); ++i) {
          const auto j = to_json(instances[i]);
          cfg.instance_names.push_back(j.contains("name") ? j.at("name").get<std::string>()
                                                          : "instance" + std::to_string(i));
          cfg.instances.push_back(j);
        }
        cfg.validate();
        return outcome(report::claims_suite(cfg));
      },
      py::arg("suite"), py::arg("instances"), py::arg("seed"), py::arg("samples") = 1000,
      py::arg("mode") = "superposition");

  m.def("spectrum", &spectral::spectrum, py::arg("a"));
  m.def(
      "spectral_report",
      [](const CMatrix& a, std::uint64_t seed, std::size_t samples, int angles) {
        spectral::SigmaOptions opt;
        opt.seed = seed;
        opt.samples = samples;
        opt.angles = angles;
        const auto r = report::spectral_report(a, opt, std::nullopt, linalg::default_tolerances());
        auto d = outcome(r.outcome);
        d["plot_csv"] = r.plot_csv;
        return d;
      },
      py::arg("a"), py::arg("seed"), py::arg("samples") = 2000, py::arg("angles") = 720);
  m.def(
      "invariant_subspace",
      [](const CMatrix& a, const std::string& mode, std::uint64_t seed) {
        spectral::InvsubOptions opt;
        opt.sigma.seed = seed;
        return outcome(report::invsub_report(a, spectral::parse_invsub_mode(mode), opt, linalg::default_tolerances()));
      },
      py::arg("a"), py::arg("mode") = "both", py::arg("seed") = 0);

  m.def(
      "cli",
      [](const std::vector<std::string>& args) {
        std::vector<const char*> argv{"ncg"};
        for (const auto& a : args) argv.push_back(a.c_str());
        std::ostringstream out, err;
        const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Run the command-line tool in-process; returns (exit code, stdout, stderr).");
}
