// ctxlab: measurement-scenario analysis from the command line.
//
// Exit codes: classify encodes the hierarchy level (0 local, 10/11/12 for the
// three contextual levels); 2 means a malformed input document, 3 a solver
// size bound. validate and solve exit 1 on negative verdicts.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "ctx/catalog.hpp"
#include "ctx/hidden.hpp"
#include "ctx/hierarchy.hpp"
#include "ctx/kspec.hpp"
#include "ctx/model_io.hpp"
#include "ctx/quantum.hpp"
#include "ctx/solve.hpp"

using namespace ctx;
using nlohmann::json;

namespace {

constexpr int kExitParse = 2;
constexpr int kExitSizeBound = 3;

struct CommandError {
  int code;
  std::string message;
};

EmpiricalModel load_model(const std::string& path) {
  Document doc = read_document_file(path);
  if (!doc.model)
    throw CommandError{kExitParse, path + ": document carries no model tables"};
  return std::move(*doc.model);
}

EmpiricalModel require_compatible(EmpiricalModel model) {
  auto rep = check_no_signalling(model);
  if (!rep.compatible())
    throw CommandError{kExitParse,
                       "model is not no-signalling: " + rep.to_string()};
  return model;
}

std::string section_label(const Scenario& sc, std::span<const int> context,
                          std::uint64_t section_idx) {
  const auto outs = sc.section_outcomes(context, section_idx);
  std::string s;
  for (std::size_t i = 0; i < context.size(); ++i) {
    if (i) s += ' ';
    s += sc.measurements()[context[i]] + "=" + sc.outcomes()[outs[i]];
  }
  return s;
}

std::string assignment_label(const Scenario& sc, std::uint64_t g) {
  const auto outs = sc.assignment_outcomes(g);
  std::string s;
  for (int m = 0; m < sc.measurement_count(); ++m) {
    if (m) s += ' ';
    s += sc.measurements()[m] + "=" + sc.outcomes()[outs[m]];
  }
  return s;
}

json sparse_weights_json(const Scenario& sc, const SparseWeights& w) {
  json out = json::object();
  for (const auto& [g, v] : w) out[assignment_label(sc, g)] = to_string(v);
  return out;
}

int cmd_validate(const std::string& path) {
  auto model = load_model(path);
  auto rep = check_no_signalling(model);
  if (rep.compatible()) {
    std::cout << "no-signalling: ok (" << model.scenario().context_count()
              << " contexts)\n";
    return 0;
  }
  std::cout << "no-signalling: " << rep.violations.size() << " violation(s)\n";
  for (const auto& v : rep.violations) {
    const Scenario& sc = model.scenario();
    std::cout << "  contexts " << v.context_a << " and " << v.context_b
              << " disagree at ";
    for (std::size_t i = 0; i < v.overlap.size(); ++i) {
      if (i) std::cout << ' ';
      std::cout << sc.measurements()[v.overlap[i]] << '='
                << sc.outcomes()[v.overlap_outcomes[i]];
    }
    std::cout << ": " << to_string(v.left) << " vs " << to_string(v.right)
              << '\n';
  }
  return 1;
}

int cmd_classify(const std::string& path, bool as_json) {
  auto model = require_compatible(load_model(path));
  if (model.semiring() == Semiring::Boolean)
    throw CommandError{kExitParse,
                       "classify needs a probabilistic (nonneg) model"};
  auto rep = classify(model);
  const Scenario& sc = model.scenario();
  if (as_json) {
    json out;
    out["level"] = to_string(rep.level);
    out["ncf"] = to_string(rep.ncf.lambda);
    out["nonneg_feasible"] = rep.nonneg_feasible;
    out["boolean_solvable"] = rep.boolean_outcome.solvable;
    out["se_count"] = rep.se.size();
    json se = json::array();
    for (auto g : rep.se) se.push_back(assignment_label(sc, g));
    out["se"] = std::move(se);
    if (rep.global_distribution)
      out["global_distribution"] =
          sparse_weights_json(sc, *rep.global_distribution);
    std::cout << out.dump(2) << '\n';
  } else {
    std::cout << "level: " << to_string(rep.level) << '\n'
              << "non-contextual fraction: " << to_string(rep.ncf.lambda)
              << '\n'
              << "support assignments |S_e|: " << rep.se.size() << '\n';
  }
  return exit_code(rep.level);
}

int cmd_ncf(const std::string& path, std::string out_prefix) {
  auto model = require_compatible(load_model(path));
  auto res = noncontextual_fraction(model);
  std::cout << to_string(res.lambda) << '\n';
  if (res.decomposition) {
    if (out_prefix.empty()) out_prefix = path;
    const std::string local_path = out_prefix + ".local.json";
    const std::string residual_path = out_prefix + ".residual.json";
    std::ofstream(local_path) << write_model(res.decomposition->local);
    std::ofstream(residual_path) << write_model(res.decomposition->residual);
    std::cerr << "decomposition written to " << local_path << " and "
              << residual_path << '\n';
  }
  return 0;
}

int cmd_solve(const std::string& path, const std::string& semiring) {
  auto model = load_model(path);
  auto tableau = IncidenceTableau::build(model.scenario_ptr());
  const Scenario& sc = model.scenario();

  if (semiring == "signed") {
    auto out = solve_signed(augment(tableau, model_vector(*tableau, model)));
    if (out.solvable()) {
      std::cout << "solvable; signed global distribution:\n";
      for (const auto& [g, w] : *out.solution)
        std::cout << "  " << assignment_label(sc, g) << ": " << to_string(w)
                  << '\n';
      return 0;
    }
    std::cout << "no signed solution; inconsistency certificate of "
              << (out.certificate ? out.certificate->row_multipliers.size() : 0)
              << " row multipliers\n";
    return 1;
  }
  if (semiring == "nonneg") {
    auto out = solve_nonneg(plain_system(tableau, model_vector(*tableau, model)));
    if (out.feasible) {
      std::cout << "solvable; non-negative global distribution:\n";
      for (const auto& [g, w] : out.witness)
        std::cout << "  " << assignment_label(sc, g) << ": " << to_string(w)
                  << '\n';
      return 0;
    }
    std::cout << "no non-negative solution\n";
    return 1;
  }
  if (semiring == "boolean") {
    auto support = model.semiring() == Semiring::Boolean ? model
                                                         : support_model(model);
    auto out = solve_boolean(*tableau, support_bits(*tableau, support));
    if (out.solvable) {
      std::cout << "solvable; " << out.witness.size()
                << " admissible assignment(s):\n";
      for (auto g : out.witness)
        std::cout << "  " << assignment_label(sc, g) << '\n';
      return 0;
    }
    std::cout << "no boolean solution for the support\n";
    return 1;
  }
  throw CommandError{kExitParse, "unknown semiring: " + semiring};
}

int cmd_rank(const std::string& path, const std::string& dump_path) {
  Document doc = read_document_file(path);
  auto tableau = IncidenceTableau::build(doc.scenario);
  const auto r = rank(*tableau);
  const auto d = doc.scenario->dimension();
  std::cout << "rank: " << r << '\n' << "dimension bound: " << d << '\n';
  if (!dump_path.empty()) {
    std::ofstream out(dump_path);
    for (const auto& row : tableau->dump_rows()) out << row << '\n';
    std::cerr << "matrix written to " << dump_path << '\n';
  }
  if (r != d) {
    std::cout << "MISMATCH: rank differs from the dimension bound\n";
    return 1;
  }
  return 0;
}

// scenario JSON, graph file or vector file, by content
std::shared_ptr<const Scenario> load_cover_like(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CommandError{kExitParse, "cannot open " + path};
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{')
    return read_document_text(text).scenario;
  std::istringstream is(text);
  std::string head;
  is >> head;
  std::istringstream again(text);
  if (head == "vertices")
    return clique_cover_scenario(read_graph(again));
  return clique_cover_scenario(orthogonality_graph(read_vector_family(again)));
}

Graph load_graph_like(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CommandError{kExitParse, "cannot open " + path};
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{')
    return co_context_graph(*read_document_text(text).scenario);
  std::istringstream is(text);
  std::string head;
  is >> head;
  std::istringstream again(text);
  if (head == "vertices") return read_graph(again);
  return orthogonality_graph(read_vector_family(again));
}

int cmd_ks(const std::string& what, const std::string& path) {
  if (what == "parity") {
    auto sc = load_cover_like(path);
    auto verdict = parity_obstruction(*sc);
    std::cout << "membership-count gcd: " << verdict.divisor
              << ", cover size: " << verdict.cover_size << '\n'
              << (verdict.obstructed ? "obstructed: no one-per-context "
                                       "assignment can exist\n"
                                     : "inconclusive: divisibility holds\n");
    return 0;
  }
  if (what == "one-section") {
    auto sc = load_cover_like(path);
    auto res = one_section_exists(*sc);
    if (res.exists) {
      std::cout << "one-section exists:";
      for (int m = 0; m < sc->measurement_count(); ++m)
        if (res.witness[m]) std::cout << ' ' << sc->measurements()[m];
      std::cout << '\n';
    } else {
      std::cout << "no one-section (exhaustive search, " << res.nodes_explored
                << " nodes)\n";
    }
    return 0;
  }
  if (what == "transversal") {
    Graph g = load_graph_like(path);
    auto res = stable_transversal(g);
    if (res.exists) {
      std::cout << "stable transversal:";
      for (int v : res.witness) std::cout << ' ' << g.vertices[v];
      std::cout << '\n';
    } else {
      std::cout << "no stable transversal\n";
    }
    return 0;
  }
  throw CommandError{kExitParse, "unknown ks subcommand: " + what};
}

int cmd_quantum_ghz(int n, bool compare, bool as_float,
                    std::uint64_t max_denominator) {
  auto obs = ghz_observables(n);
  auto cover = commuting_cover(obs);
  auto born = born_model(ghz_state(n), obs, cover);

  if (compare) {
    const auto exact = *catalog::ghz(n).model;
    const Scenario& es = exact.scenario();
    double worst = 0;
    for (std::size_t bc = 0; bc < cover->cover().size(); ++bc) {
      std::vector<int> sorted;
      for (int m : cover->cover()[bc])
        sorted.push_back(es.measurement_index(cover->measurements()[m]));
      std::sort(sorted.begin(), sorted.end());
      std::size_t ec = es.cover().size();
      for (std::size_t c = 0; c < es.cover().size(); ++c)
        if (es.cover()[c] == sorted) ec = c;
      for (std::uint64_t s = 0; s < born.tables[bc].size(); ++s)
        worst = std::max(worst, std::abs(born.tables[bc][s] -
                                         static_cast<double>(
                                             exact.table(ec).weight(s))));
    }
    std::cout << "max |born - catalog| = " << worst << '\n'
              << (worst < 1e-9 ? "PASS" : "FAIL") << " at tolerance 1e-9\n";
    return worst < 1e-9 ? 0 : 1;
  }
  if (as_float) {
    for (std::size_t c = 0; c < cover->cover().size(); ++c) {
      for (std::size_t i = 0; i < cover->cover()[c].size(); ++i) {
        if (i) std::cout << ',';
        std::cout << cover->measurements()[cover->cover()[c][i]];
      }
      std::cout << ':';
      for (double w : born.tables[c]) std::cout << ' ' << w;
      std::cout << '\n';
    }
    return 0;
  }
  auto out = rationalize(born, max_denominator);
  if (!out.model)
    throw CommandError{kExitParse, "rationalization failed: " + out.error};
  std::cout << write_model(*out.model);
  return 0;
}

int cmd_catalog(const std::string& name, const std::string& out_path) {
  auto entry = catalog::by_name(name);
  if (!entry) {
    std::string known;
    for (const auto& n : catalog::names()) known += " " + n;
    throw CommandError{kExitParse, "unknown catalog entry '" + name +
                                       "'; known:" + known};
  }
  const std::string text = entry->model ? write_model(*entry->model)
                                        : write_scenario(*entry->scenario);
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream(out_path) << text;
    std::cerr << entry->name << " written to " << out_path << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"measurement scenarios, empirical models and their obstructions"};
  app.require_subcommand(1);

  std::string path, semiring = "signed", dump_path, out_prefix, out_path, name;
  bool as_json = false, compare = false, as_float = false;
  int ghz_n = 3;
  std::uint64_t max_denominator = 1 << 20;

  auto* validate = app.add_subcommand("validate", "check no-signalling");
  validate->add_option("model", path, "model document")->required();

  auto* classify_cmd =
      app.add_subcommand("classify", "place a model in the hierarchy");
  classify_cmd->add_option("model", path, "model document")->required();
  classify_cmd->add_flag("--json", as_json, "JSON report");

  auto* ncf = app.add_subcommand("ncf", "non-contextual fraction");
  ncf->add_option("model", path, "model document")->required();
  ncf->add_option("-o,--out", out_prefix, "decomposition file prefix");

  auto* solve = app.add_subcommand("solve", "global-section solvers");
  solve->add_option("model", path, "model document")->required();
  solve->add_option("--semiring", semiring, "signed|nonneg|boolean")
      ->check(CLI::IsMember({"signed", "nonneg", "boolean"}));

  auto* rank_cmd = app.add_subcommand("rank", "incidence rank and dimension");
  rank_cmd->add_option("input", path, "model or scenario document")->required();
  rank_cmd->add_option("--dump-matrix", dump_path, "write 0/1 rows to a file");

  auto* ks = app.add_subcommand("ks", "cover obstructions");
  std::string ks_what;
  ks->add_option("verdict", ks_what, "parity|one-section|transversal")
      ->required()
      ->check(CLI::IsMember({"parity", "one-section", "transversal"}));
  ks->add_option("input", path, "scenario JSON, graph file or vector file")
      ->required();

  auto* quantum = app.add_subcommand("quantum", "Born-rule models");
  auto* ghz = quantum->add_subcommand("ghz", "parity-state model");
  ghz->add_option("--n", ghz_n, "number of parts")->required();
  ghz->add_flag("--compare", compare, "diff against the exact catalog model");
  ghz->add_flag("--float", as_float, "print raw float tables");
  ghz->add_option("--max-denominator", max_denominator,
                  "bound for exact conversion");

  auto* cat = app.add_subcommand("catalog", "emit a canonical fixture");
  cat->add_option("name", name, "entry name")->required();
  cat->add_option("-o,--out", out_path, "output file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*validate) return cmd_validate(path);
    if (*classify_cmd) return cmd_classify(path, as_json);
    if (*ncf) return cmd_ncf(path, out_prefix);
    if (*solve) return cmd_solve(path, semiring);
    if (*rank_cmd) return cmd_rank(path, dump_path);
    if (*ks) return cmd_ks(ks_what, path);
    if (*ghz) return cmd_quantum_ghz(ghz_n, compare, as_float, max_denominator);
    if (*cat) return cmd_catalog(name, out_path);
    std::cerr << "no subcommand\n";
    return kExitParse;
  } catch (const CommandError& e) {
    std::cerr << "error: " << e.message << '\n';
    return e.code;
  } catch (const DocumentError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitParse;
  } catch (const SizeBoundError& e) {
    std::cerr << "size bound: " << e.what() << '\n';
    return kExitSizeBound;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitParse;
  }
}
