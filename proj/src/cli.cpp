#include "bimod/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <ostream>
#include <sstream>

#include "bimod/rng.hpp"

namespace bimod {

namespace {

using nlohmann::json;

double ms_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                   start)
      .count();
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open input file: " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw input_error("malformed JSON in " + path + ": " + e.what());
  }
}

int require_count(const json& doc, const char* key) {
  if (!doc.contains(key) || !doc[key].is_number_integer() ||
      doc[key].get<long long>() < 0)
    throw input_error(std::string("document field '") + key +
                      "' must be a nonnegative integer");
  return doc[key].get<int>();
}

}  // namespace

Pattern parse_pattern_document(const json& doc) {
  if (!doc.is_object()) throw input_error("pattern document must be a JSON object");
  const bool has_entries = doc.contains("entries");
  const bool has_grid = doc.contains("grid");
  if (has_entries == has_grid)
    throw input_error("pattern document must carry exactly one of 'entries' or 'grid'");

  if (has_grid) {
    if (!doc["grid"].is_array())
      throw input_error("'grid' must be an array of '0'/'1' strings");
    std::vector<std::string> lines;
    for (const auto& row : doc["grid"]) {
      if (!row.is_string()) throw input_error("'grid' rows must be strings");
      lines.push_back(row.get<std::string>());
    }
    Pattern p = Pattern::from_grid(lines);
    if (doc.contains("rows") && require_count(doc, "rows") != p.rows())
      throw input_error("'rows' does not match the grid height");
    if (doc.contains("cols") && require_count(doc, "cols") != p.cols())
      throw input_error("'cols' does not match the grid width");
    return p;
  }

  const int rows = require_count(doc, "rows");
  const int cols = require_count(doc, "cols");
  if (!doc["entries"].is_array()) throw input_error("'entries' must be an array");
  std::vector<std::pair<int, int>> entries;
  for (const auto& e : doc["entries"]) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
        !e[1].is_number_integer())
      throw input_error("each entry must be a pair [row, col] of integers");
    entries.emplace_back(e[0].get<int>(), e[1].get<int>());
  }
  return Pattern::from_entries(rows, cols, entries);
}

bool is_csl_document(const json& doc) {
  return doc.is_object() && doc.contains("universe") && doc.contains("generators");
}

CslInput parse_csl_document(const json& doc) {
  if (!is_csl_document(doc))
    throw input_error("lattice document must carry 'universe' and 'generators'");
  CslInput input;
  input.universe = require_count(doc, "universe");
  if (!doc["generators"].is_array())
    throw input_error("'generators' must be an array of index arrays");
  for (const auto& g : doc["generators"]) {
    if (!g.is_array()) throw input_error("each generator must be an array of indices");
    IndexSet s(input.universe);
    for (const auto& m : g) {
      if (!m.is_number_integer()) throw input_error("generator members must be integers");
      const int i = m.get<int>();
      if (i < 0 || i >= input.universe)
        throw input_error("generator member " + std::to_string(i) +
                          " outside universe " + std::to_string(input.universe));
      s.insert(i);
    }
    input.generators.push_back(std::move(s));
  }
  return input;
}

json to_json(const IndexSet& s) { return json(s.members()); }

json to_json(const Pattern& p) {
  json entries = json::array();
  for (auto [i, j] : p.entries()) entries.push_back({i, j});
  return json{{"rows", p.rows()}, {"cols", p.cols()}, {"entries", entries}};
}

json to_json(const ProjectionFamily& f) {
  json sets = json::array();
  for (const auto& s : f.sets()) sets.push_back(to_json(s));
  return json{{"universe", f.universe()}, {"kind", to_string(f.kind())},
              {"sets", sets}};
}

json to_json(const Partition& part) {
  json cells = json::array();
  for (const auto& c : part.cells()) cells.push_back(to_json(c));
  return json{{"universe", part.universe()}, {"cells", cells}};
}

json to_json(const BimoduleAnalysis& a) {
  json atoms = json::array();
  for (const auto& atom : a.atoms)
    atoms.push_back(json{{"f", to_json(atom.f)},
                         {"delta_f", to_json(atom.delta_f)},
                         {"generator_p", to_json(atom.generator_p)},
                         {"generator_p0", to_json(atom.generator_p0)}});
  json blocks = json::array();
  for (const auto& b : a.blocks)
    blocks.push_back(json{{"rows", to_json(b.rows)}, {"cols", to_json(b.cols)}});
  return json{{"pattern", to_json(a.pattern)},
              {"s1", to_json(a.s1)},
              {"s2", to_json(a.s2)},
              {"delta", to_json(a.delta)},
              {"u0", to_json(a.u0)},
              {"atoms", atoms},
              {"blocks", blocks},
              {"chi_i", to_json(a.chi_i)},
              {"chi_star_i", to_json(a.chi_star_i)},
              {"n1", to_json(a.n1)},
              {"n2", to_json(a.n2)},
              {"l1", to_json(a.l1)},
              {"l2", to_json(a.l2)},
              {"a1", to_json(a.a1)},
              {"a2", to_json(a.a2)},
              {"psi_note", a.psi_note}};
}

json to_json(const CslAnalysis& a) {
  json cells = json::array();
  for (const auto& c : a.atoms_of_s) cells.push_back(to_json(c));
  return json{{"lattice", to_json(a.lattice)}, {"alg", to_json(a.alg)},
              {"j", to_json(a.j)},             {"rad", to_json(a.rad)},
              {"q", to_json(a.q)},             {"commutant", to_json(a.commutant)},
              {"atoms_of_s", cells}};
}

json to_json(const VerifierReport& r) {
  return json{{"theorem_id", r.theorem_id},
              {"instance_digest", r.instance_digest},
              {"passed", r.passed},
              {"detail", r.detail}};
}

json to_json(const FuzzSummary& s) {
  json per = json::object();
  for (const auto& [id, counts] : s.per_theorem)
    per[id] = json{{"pass", counts.first}, {"fail", counts.second}};
  return json{{"instances_run", s.instances_run},
              {"failures", s.failures},
              {"per_theorem", per},
              {"counterexamples", s.counterexamples}};
}

namespace {

void print_family_text(std::ostream& out, const char* name,
                       const ProjectionFamily& f) {
  out << name << " (" << to_string(f.kind()) << "):";
  for (const auto& s : f.sets()) out << ' ' << to_string(s);
  out << '\n';
}

void print_analysis_text(std::ostream& out, const BimoduleAnalysis& a) {
  out << "pattern " << a.pattern.rows() << "x" << a.pattern.cols() << " "
      << to_string(a.pattern) << '\n';
  for (const auto& line : grid_lines(a.pattern)) out << "  " << line << '\n';
  print_family_text(out, "s1", a.s1);
  print_family_text(out, "s2", a.s2);
  out << "delta " << to_string(a.delta) << '\n';
  out << "u0 " << to_string(a.u0) << '\n';
  out << "atoms:";
  for (const auto& atom : a.atoms)
    out << " F=" << to_string(atom.f) << " dF=" << to_string(atom.delta_f);
  out << '\n' << "blocks:";
  for (const auto& b : a.blocks)
    out << " " << to_string(b.rows) << "x" << to_string(b.cols);
  out << '\n';
  out << "chi(I) " << to_string(a.chi_i) << "  chi*(I) " << to_string(a.chi_star_i)
      << '\n';
  out << "n1 " << to_string(a.n1) << '\n' << "l1 " << to_string(a.l1) << '\n';
  out << "n2 " << to_string(a.n2) << '\n' << "l2 " << to_string(a.l2) << '\n';
  out << "a1 cells:";
  for (const auto& c : a.a1.cells()) out << ' ' << to_string(c);
  out << '\n' << "a2 cells:";
  for (const auto& c : a.a2.cells()) out << ' ' << to_string(c);
  out << '\n';
}

void print_csl_text(std::ostream& out, const CslAnalysis& a) {
  print_family_text(out, "lattice", a.lattice);
  out << "alg " << to_string(a.alg) << '\n';
  out << "j " << to_string(a.j) << '\n';
  out << "rad " << to_string(a.rad) << '\n';
  out << "q " << to_string(a.q) << '\n';
  out << "cells:";
  for (const auto& c : a.atoms_of_s) out << ' ' << to_string(c);
  out << '\n';
}

void print_reports_text(std::ostream& out, const std::vector<VerifierReport>& reports) {
  for (const auto& r : reports)
    out << (r.passed ? "[PASS] " : "[FAIL] ") << r.theorem_id << "  "
        << r.instance_digest << "  " << r.detail << '\n';
}

int cmd_analyze(const std::string& input_path, const std::string& format,
                std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  const json doc = load_json_file(input_path);
  const Pattern p = parse_pattern_document(doc);
  const double parse_ms = ms_since(start);
  const BimoduleAnalysis a = analyze(p);
  if (format == "text") {
    print_analysis_text(out, a);
  } else {
    json report{{"input_digest", digest(p)},
                {"analysis", to_json(a)},
                {"verifier_reports", json::array()},
                {"timings", json{{"parse_ms", parse_ms},
                                 {"analyze_ms", ms_since(start) - parse_ms},
                                 {"total_ms", ms_since(start)}}}};
    out << report.dump(2) << '\n';
  }
  return 0;
}

int cmd_csl(const std::string& input_path, const std::string& format,
            std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  const json doc = load_json_file(input_path);
  const CslInput input = parse_csl_document(doc);
  const CslAnalysis a = csl_analyze(input);
  if (format == "text") {
    print_csl_text(out, a);
  } else {
    json report{{"input_digest", "csl:" + digest(a.alg)},
                {"analysis", to_json(a)},
                {"verifier_reports", json::array()},
                {"timings", json{{"total_ms", ms_since(start)}}}};
    out << report.dump(2) << '\n';
  }
  return 0;
}

int cmd_verify_file(const std::string& input_path, const std::string& format,
                    std::uint64_t seed, std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  const json doc = load_json_file(input_path);
  std::vector<VerifierReport> reports;
  std::string dg;
  if (is_csl_document(doc)) {
    const CslInput input = parse_csl_document(doc);
    const CslAnalysis a = csl_analyze(input);
    dg = "csl:" + digest(a.alg);
    reports = verify_all(a.alg, 5, seed);
    if (tro_check(a.alg)) {
      auto tro = verify_tro_theorems(a.alg, derive_seed(seed, 1));
      reports.insert(reports.end(), tro.begin(), tro.end());
    }
    auto csl = verify_csl_theorems(input);
    reports.insert(reports.end(), csl.begin(), csl.end());
  } else {
    const Pattern p = parse_pattern_document(doc);
    dg = digest(p);
    reports = verify_all(p, 5, seed);
    if (tro_check(p)) {
      auto tro = verify_tro_theorems(p, derive_seed(seed, 1));
      reports.insert(reports.end(), tro.begin(), tro.end());
    }
  }
  int failures = 0;
  for (const auto& r : reports)
    if (!r.passed) ++failures;

  if (format == "text") {
    print_reports_text(out, reports);
    out << reports.size() << " checks, " << failures << " failures\n";
  } else {
    json jreports = json::array();
    for (const auto& r : reports) jreports.push_back(to_json(r));
    json report{{"input_digest", dg},
                {"verifier_reports", jreports},
                {"failures", failures},
                {"timings", json{{"total_ms", ms_since(start)}}}};
    out << report.dump(2) << '\n';
  }
  return failures == 0 ? 0 : 1;
}

int cmd_verify_random(const FuzzConfig& config, const std::string& format,
                      std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  const FuzzSummary summary = fuzz(config);
  if (format == "text") {
    out << "instances " << summary.instances_run << ", failures " << summary.failures
        << '\n';
    for (const auto& [id, counts] : summary.per_theorem)
      out << "  " << id << ": " << counts.first << " pass, " << counts.second
          << " fail\n";
    for (const auto& ce : summary.counterexamples) out << "  counterexample: " << ce
                                                       << '\n';
  } else {
    json report{{"input_digest",
                 "random:" + std::to_string(config.seed) + ":" +
                     std::to_string(config.instance_count)},
                {"summary", to_json(summary)},
                {"timings", json{{"total_ms", ms_since(start)}}}};
    out << report.dump(2) << '\n';
  }
  return summary.failures == 0 ? 0 : 1;
}

int cmd_random(std::uint64_t seed, int rows, int cols, double density,
               const std::string& out_path) {
  if (rows < 1 || cols < 1) throw input_error("random: dimensions must be positive");
  if (density < 0.0 || density > 1.0)
    throw input_error("random: density must lie in [0, 1]");
  Rng rng(seed);
  Pattern p(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
      if (rng.bernoulli(density)) p.set(i, j);
  std::ofstream out(out_path);
  if (!out) throw input_error("cannot write to " + out_path);
  out << to_json(p).dump(2) << '\n';
  if (!out) throw input_error("write failed for " + out_path);
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"pattern toolkit for diagonal-bimodule supports"};
  app.require_subcommand(1);

  std::string input_path, format = "json", out_path;
  std::uint64_t seed = 0;
  int count = 100, max_rows = 8, max_cols = 8;
  double density = 0.3;
  bool random_mode = false;

  auto* analyze_cmd = app.add_subcommand(
      "analyze", "compute the full structure report for a pattern document");
  analyze_cmd->add_option("--input", input_path, "pattern document path")->required();
  analyze_cmd->add_option("--format", format, "json or text")
      ->check(CLI::IsMember({"json", "text"}));

  auto* verify_cmd = app.add_subcommand(
      "verify", "run the verifier suite on a document or on random instances");
  verify_cmd->add_option("--input", input_path, "pattern or lattice document path");
  verify_cmd->add_flag("--random", random_mode, "fuzz random instances instead");
  verify_cmd->add_option("--format", format, "json or text")
      ->check(CLI::IsMember({"json", "text"}));
  verify_cmd->add_option("--seed", seed, "64-bit master seed");
  verify_cmd->add_option("--count", count, "random instance count");
  verify_cmd->add_option("--max-rows", max_rows, "row bound for random instances");
  verify_cmd->add_option("--max-cols", max_cols, "column bound for random instances");
  verify_cmd->add_option("--density", density, "entry probability in [0, 1]");

  auto* csl_cmd =
      app.add_subcommand("csl", "analyze a lattice document on a single space");
  csl_cmd->add_option("--input", input_path, "lattice document path")->required();
  csl_cmd->add_option("--format", format, "json or text")
      ->check(CLI::IsMember({"json", "text"}));

  auto* random_cmd =
      app.add_subcommand("random", "write a seeded random pattern document");
  random_cmd->add_option("--seed", seed, "64-bit seed");
  random_cmd->add_option("--max-rows", max_rows, "exact row count of the pattern")
      ->required();
  random_cmd->add_option("--max-cols", max_cols, "exact column count of the pattern")
      ->required();
  random_cmd->add_option("--density", density, "entry probability in [0, 1]");
  random_cmd->add_option("--out", out_path, "output path")->required();

  std::vector<const char*> argv;
  argv.push_back("bimod");
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (analyze_cmd->parsed()) return cmd_analyze(input_path, format, out);
    if (csl_cmd->parsed()) return cmd_csl(input_path, format, out);
    if (random_cmd->parsed())
      return cmd_random(seed, max_rows, max_cols, density, out_path);
    if (verify_cmd->parsed()) {
      if (random_mode && !input_path.empty()) {
        err << "error: verify takes either --input or --random, not both\n";
        return 2;
      }
      if (random_mode)
        return cmd_verify_random(
            FuzzConfig{seed, count, max_rows, max_cols, density, 5}, format, out);
      if (input_path.empty()) {
        err << "error: verify needs --input or --random\n";
        return 2;
      }
      return cmd_verify_file(input_path, format, seed, out);
    }
    err << "error: no subcommand\n";
    return 2;
  } catch (const input_error& e) {
    err << "input error: " << e.what() << '\n';
    return 2;
  } catch (const invariant_violation& e) {
    err << "invariant violation: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace bimod
