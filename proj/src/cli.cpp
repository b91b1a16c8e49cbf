#include "ncg/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "ncg/errors.hpp"
#include "ncg/report.hpp"

namespace ncg::cli {

namespace {

namespace fs = std::filesystem;
using io::Json;

struct Common {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> samples;
  std::string mode;
  std::string out;
  std::string format;
};

struct Emitter {
  std::ostream& out;
  std::string path;
  io::Format format = io::Format::Json;

  void write_text(const std::string& text, const std::string& target) const {
    if (target.empty()) {
      out << text;
      return;
    }
    std::ofstream f(target, std::ios::binary);
    if (!f) throw StructuralError("cannot write " + target);
    f << text;
  }

  int emit(const report::Outcome& o) const {
    write_text(format == io::Format::Json ? o.json.dump(2) + "\n" : o.csv, path);
    return o.status;
  }
};

void add_common(CLI::App* cmd, Common& c, bool sampling) {
  cmd->add_option("--config", c.config, "Run configuration JSON");
  cmd->add_option("--out", c.out, "Output path (default: stdout)");
  cmd->add_option("--format", c.format, "json or csv");
  if (sampling) {
    cmd->add_option("--seed", c.seed, "Random seed (required)");
    cmd->add_option("--samples", c.samples, "Sample count")->check(CLI::PositiveNumber);
    cmd->add_option("--mode", c.mode, "superposition or literal");
  }
}

io::RunConfig resolve(const Common& c) {
  io::RunConfig cfg;
  if (!c.config.empty()) {
    const fs::path p = c.config;
    cfg = io::config_from_json(io::read_json_file(p), p.parent_path());
  }
  if (c.seed) cfg.seed = c.seed;
  if (c.samples) cfg.samples = *c.samples;
  if (!c.mode.empty()) {
    try {
      cfg.mode = qspace::parse_join_mode(c.mode);
    } catch (const DomainError& e) {
      throw StructuralError(e.what());
    }
  }
  if (!c.out.empty()) cfg.output = c.out;
  if (!c.format.empty()) cfg.format = io::parse_format(c.format);
  cfg.validate();
  return cfg;
}

std::uint64_t require_seed(const io::RunConfig& cfg) {
  if (!cfg.seed) throw StructuralError("a seed is required (--seed or \"seed\" in the config)");
  return *cfg.seed;
}

linalg::CMatrix square_matrix(const Json& j) {
  const auto m = io::matrix_from_json(j.contains("matrix") ? j.at("matrix") : j);
  if (m.rows() != m.cols()) throw StructuralError("matrix must be square");
  if (m.rows() == 0) throw StructuralError("matrix must be non-empty");
  return m;
}

spectral::InvsubMode invsub_mode(const std::string& text) {
  try {
    return spectral::parse_invsub_mode(text);
  } catch (const DomainError& e) {
    throw StructuralError(e.what());
  }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite models of quantum sets, Sasaki semigroups and noncommutative Gelfand duality", "ncg"};
  app.require_subcommand(1);

  Common c;
  std::string file;
  std::string formula = "classical";
  std::optional<std::size_t> budget;
  bool dump = false;
  std::string suite;
  std::vector<std::string> instance_files;
  std::string plot_path;
  std::string invsub_flag;
  std::string invsub_text = "both";
  std::size_t random_count = 0;
  int random_dim = 4;

  auto* oml_cmd = app.add_subcommand("oml", "Orthomodular lattice tools")->require_subcommand(1);
  auto* oml_verify = oml_cmd->add_subcommand("verify", "Check the OML (or quantum-set) axioms");
  auto* oml_semi = oml_cmd->add_subcommand("semigroup", "Enumerate the Sasaki semigroup and recover the lattice");
  auto* oml_bool = oml_cmd->add_subcommand("boolean", "Decide whether the lattice is Boolean");
  for (auto* s : {oml_verify, oml_semi, oml_bool}) {
    s->add_option("file", file, "Lattice JSON")->required();
    add_common(s, c, false);
  }
  oml_semi->add_option("--budget", budget, "Semigroup element cap")->check(CLI::PositiveNumber);
  oml_semi->add_option("--formula", formula, "classical, literal or both");
  oml_semi->add_flag("--dump", dump, "Include the generating word of every element");

  auto* alg_cmd = app.add_subcommand("alg", "Finite-dimensional *-algebras")->require_subcommand(1);
  auto* alg_gen = alg_cmd->add_subcommand("generate", "Generate the algebra from its generators");
  auto* alg_blocks = alg_cmd->add_subcommand("blocks", "Decompose into full matrix blocks");
  for (auto* s : {alg_gen, alg_blocks}) {
    s->add_option("file", file, "Algebra JSON")->required();
    add_common(s, c, false);
  }

  auto* claims_cmd = app.add_subcommand("claims", "Claim verification suites")->require_subcommand(1);
  auto* claims_run = claims_cmd->add_subcommand("run", "Run a suite over instances");
  claims_run->add_option("--suite", suite, "prop9, thm3, prop7, preimage, prop1, prop2 or all");
  claims_run->add_option("instances", instance_files, "Instance JSON files");
  add_common(claims_run, c, true);

  auto* spec_cmd = app.add_subcommand("spectral", "Spectra of matrices")->require_subcommand(1);
  auto* spec_report = spec_cmd->add_subcommand("report", "Spectrum and the state-value spectrum");
  spec_report->add_option("file", file, "Matrix JSON")->required();
  spec_report->add_option("--plot-data", plot_path, "Write kind,block,x,y CSV here");
  spec_report->add_option("--invsub", invsub_flag, "Also run the invariant-subspace search (paper, oracle, both)");
  add_common(spec_report, c, true);

  auto* invsub_cmd = app.add_subcommand("invsub", "Invariant subspace search");
  invsub_cmd->add_option("file", file, "Matrix JSON");
  invsub_cmd->add_option("--invsub", invsub_text, "paper, oracle or both");
  invsub_cmd->add_option("--random", random_count, "Use this many seeded random matrices instead of a file");
  invsub_cmd->add_option("--dim", random_dim, "Dimension of random matrices")->check(CLI::Range(1, 64));
  add_common(invsub_cmd, c, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return Ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return Ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return InputError;
  }

  try {
    const auto cfg = resolve(c);
    const Emitter emitter{out, cfg.output, cfg.format};

    if (oml_verify->parsed()) return emitter.emit(report::oml_verify(io::read_json_file(file)));
    if (oml_semi->parsed()) {
      const auto L = io::lattice_from_json(io::read_json_file(file));
      const auto o = report::oml_semigroup(L, budget.value_or(cfg.budget), report::parse_formula_choice(formula), dump);
      if (o.status == Budget) err << "semigroup budget exceeded; partial report written\n";
      return emitter.emit(o);
    }
    if (oml_bool->parsed()) return emitter.emit(report::oml_boolean(io::lattice_from_json(io::read_json_file(file))));
    if (alg_gen->parsed())
      return emitter.emit(report::alg_generate(io::algebra_from_json(io::read_json_file(file), cfg.tolerances)));
    if (alg_blocks->parsed()) {
      const auto A = io::algebra_from_json(io::read_json_file(file), cfg.tolerances);
      return emitter.emit(report::alg_blocks(algebra::make_instance(A, cfg.tolerances)));
    }
    if (claims_run->parsed()) {
      auto run_cfg = cfg;
      if (!suite.empty()) run_cfg.suite = suite;
      if (run_cfg.suite.empty()) throw StructuralError("no suite given (--suite or \"suite\" in the config)");
      for (const auto& f : instance_files) {
        std::string name;
        run_cfg.instances.push_back(io::load_instance(Json(f), fs::current_path(), &name));
        run_cfg.instance_names.push_back(name);
      }
      return emitter.emit(report::claims_suite(run_cfg));
    }
    if (spec_report->parsed()) {
      spectral::SigmaOptions opt;
      opt.seed = require_seed(cfg);
      if (c.samples || !c.config.empty()) opt.samples = cfg.samples;
      std::optional<spectral::InvsubMode> mode;
      if (!invsub_flag.empty()) mode = invsub_mode(invsub_flag);
      const auto r = report::spectral_report(square_matrix(io::read_json_file(file)), opt, mode, cfg.tolerances);
      if (!plot_path.empty()) emitter.write_text(r.plot_csv, plot_path);
      return emitter.emit(r.outcome);
    }
    if (invsub_cmd->parsed()) {
      spectral::InvsubOptions opt;
      opt.sigma.seed = require_seed(cfg);
      if (c.samples || !c.config.empty()) opt.sigma.samples = cfg.samples;
      const auto mode = invsub_mode(invsub_text);
      if (random_count == 0) {
        if (file.empty()) throw StructuralError("give a matrix file or --random");
        return emitter.emit(report::invsub_report(square_matrix(io::read_json_file(file)), mode, opt, cfg.tolerances));
      }
      linalg::Rng rng(opt.sigma.seed);
      report::Outcome all;
      all.json = Json{{"mode", spectral::to_string(mode)}, {"seed", opt.sigma.seed}, {"dim", random_dim},
                      {"instances", Json::array()}};
      for (std::size_t k = 0; k < random_count; ++k) {
        const auto a = linalg::random_matrix(random_dim, random_dim, rng);
        auto o = report::invsub_report(a, mode, opt, cfg.tolerances);
        o.json["index"] = k;
        all.json["instances"].push_back(o.json);
        std::istringstream lines(o.csv);
        std::string line;
        std::getline(lines, line);
        if (k == 0) all.csv = "index," + line + "\n";
        while (std::getline(lines, line)) all.csv += std::to_string(k) + "," + line + "\n";
        all.status = std::max(all.status, o.status);
      }
      return emitter.emit(all);
    }
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << "\n";
    return Budget;
  } catch (const DecompositionError& e) {
    err << "error: " << e.what() << "\n";
    return Numerical;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return InputError;
  } catch (const Json::exception& e) {
    err << "error: " << e.what() << "\n";
    return InputError;
  }
  return InputError;
}

}  // namespace ncg::cli
