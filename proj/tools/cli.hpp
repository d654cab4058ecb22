#pragma once

// slco2lts command line: validate | explore | dot | aut | reduce | compare.
//
// Exit codes: 0 success or equivalent, 1 diagnostics or not equivalent,
// 2 usage error, 3 resource limit. Every failure writes one line
// `error: <category>: <message>` to the error stream.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "slco/slco.hpp"

namespace slco::cli {

enum ExitCode : int { ok = 0, failed = 1, usage = 2, limit = 3 };

struct RunConfig {
  std::string subcommand;
  std::vector<std::string> inputs;
  std::string output;  // empty = standard output
  std::string cs_output;
  std::size_t buffer_capacity = 1;
  std::optional<std::size_t> max_configurations;
  std::vector<std::string> keep;
  std::vector<std::string> hide;
  std::string relation = "branching";
};

namespace detail {

struct Failure {
  int code;
  std::string category;
  std::string message;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{failed, "io", "cannot read " + path};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f || !(f << text)) throw Failure{failed, "io", "cannot write " + path};
}

inline void print_diagnostics(const std::string& file, const Diagnostics& ds, std::ostream& err) {
  for (const auto& d : ds) err << file << ':' << d << '\n';
}

inline Model load_model(const std::string& path, std::ostream& err) {
  std::string text = read_file(path);
  ParseResult parsed = parse_model(text);
  if (!parsed) {
    print_diagnostics(path, parsed.diagnostics, err);
    throw Failure{failed, "parse", path + ": " + parsed.diagnostics.front().message};
  }
  Diagnostics ds = validate_model(*parsed.model);
  print_diagnostics(path, ds, err);
  if (has_errors(ds)) {
    auto n = std::count_if(ds.begin(), ds.end(), [](const Diagnostic& d) { return d.severity == Severity::error; });
    throw Failure{failed, "validation", path + ": " + std::to_string(n) + " error(s)"};
  }
  return std::move(*parsed.model);
}

inline Lts load_lts(const std::string& path, std::ostream& err) {
  LtsParseResult parsed = parse_lts_text(read_file(path));
  if (!parsed) {
    print_diagnostics(path, parsed.diagnostics, err);
    throw Failure{failed, "lts", path + ": " + parsed.diagnostics.front().message};
  }
  return std::move(*parsed.lts);
}

inline Relation parse_relation(const std::string& r) { return r == "strong" ? Relation::strong : Relation::branching; }

inline std::optional<HideSpec> hide_spec(const RunConfig& cfg) {
  if (!cfg.keep.empty()) return HideSpec::keep({cfg.keep.begin(), cfg.keep.end()});
  if (!cfg.hide.empty()) return HideSpec::hide({cfg.hide.begin(), cfg.hide.end()});
  return std::nullopt;
}

inline Lts hide_and_reduce(Lts l, const RunConfig& cfg) {
  if (auto h = hide_spec(cfg)) l = hide_labels(std::move(l), *h);
  if (l.initial_states.size() != 1) throw Failure{failed, "lts", "expected exactly one initial state"};
  return reduce(l, parse_relation(cfg.relation));
}

inline int execute(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const std::string& sub = cfg.subcommand;
  if (sub == "validate") {
    load_model(cfg.inputs.at(0), err);
    return ok;
  }
  if (sub == "explore") {
    Model m = load_model(cfg.inputs.at(0), err);
    CsGraph g;
    try {
      g = explore(m, ExploreLimits{cfg.max_configurations, cfg.buffer_capacity});
    } catch (const ExplorationError& e) {
      if (e.kind() == ExplorationError::Kind::limit_exceeded)
        throw Failure{limit, "limit", std::string(e.what()) + " (frontier " + std::to_string(e.frontier_size()) + ")"};
      throw Failure{failed, "overflow", e.what()};
    }
    if (!cfg.cs_output.empty()) write_output(cfg.cs_output, emit_cs(g), out);
    write_output(cfg.output, emit_lts_text(cs_to_lts(g)), out);
    return ok;
  }
  if (sub == "dot") {
    write_output(cfg.output, emit_dot(load_lts(cfg.inputs.at(0), err)), out);
    return ok;
  }
  if (sub == "aut") {
    Lts l = load_lts(cfg.inputs.at(0), err);
    if (l.initial_states.size() != 1) throw Failure{failed, "lts", "AUT export needs exactly one initial state"};
    AutResult r = emit_aut(l);
    print_diagnostics(cfg.inputs.at(0), r.diagnostics, err);
    write_output(cfg.output, r.text, out);
    return ok;
  }
  if (sub == "reduce") {
    write_output(cfg.output, emit_lts_text(hide_and_reduce(load_lts(cfg.inputs.at(0), err), cfg)), out);
    return ok;
  }
  if (sub == "compare") {
    Lts a = hide_and_reduce(load_lts(cfg.inputs.at(0), err), cfg);
    Lts b = hide_and_reduce(load_lts(cfg.inputs.at(1), err), cfg);
    bool eq = equivalent(a, b, parse_relation(cfg.relation));
    out << (eq ? "equivalent" : "not equivalent") << '\n';
    return eq ? ok : failed;
  }
  throw Failure{usage, "usage", "a subcommand is required (validate, explore, dot, aut, reduce, compare)"};
}

}  // namespace detail

/// Runs one command. `args` excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"SLCO state-space generator and LTS toolkit", "slco2lts"};
  app.set_version_flag("--version", std::string("slco2lts ") + version + " (lts format " + lts_format_version +
                                        ", dot, aut)");
  app.require_subcommand(0, 1);

  auto add_relation = [&](CLI::App* sc) {
    sc->add_option("--relation", cfg.relation, "Equivalence: branching or strong")
        ->check(CLI::IsMember({"branching", "strong"}));
    auto keep = sc->add_option("--keep", cfg.keep, "Keep only these labels observable (repeatable)");
    auto hide = sc->add_option("--hide", cfg.hide, "Make these labels internal (repeatable)");
    keep->excludes(hide);
    keep->allow_extra_args(false);
    hide->allow_extra_args(false);
  };

  auto validate = app.add_subcommand("validate", "Parse and check an SLCO model");
  validate->add_option("model", cfg.inputs, "SLCO model (.slco)")->required()->expected(1);

  auto explore_cmd = app.add_subcommand("explore", "Generate the state space of an SLCO model as an LTS");
  explore_cmd->add_option("model", cfg.inputs, "SLCO model (.slco)")->required()->expected(1);
  explore_cmd->add_option("-o,--output", cfg.output, "Output .lts file (default: standard output)");
  explore_cmd->add_option("--cs", cfg.cs_output, "Also write configurations and steps to this file");
  explore_cmd->add_option("--buffer-capacity", cfg.buffer_capacity, "Capacity of asynchronous channel buffers")
      ->check(CLI::NonNegativeNumber);
  explore_cmd->add_option("--max-configs", cfg.max_configurations, "Abort when more configurations are reached");

  auto dot = app.add_subcommand("dot", "Render an LTS as a Graphviz digraph");
  dot->add_option("lts", cfg.inputs, "Input .lts file")->required()->expected(1);
  dot->add_option("-o,--output", cfg.output, "Output .dot file (default: standard output)");

  auto aut = app.add_subcommand("aut", "Convert an LTS to the Aldebaran (.aut) format");
  aut->add_option("lts", cfg.inputs, "Input .lts file")->required()->expected(1);
  aut->add_option("-o,--output", cfg.output, "Output .aut file (default: standard output)");

  auto reduce_cmd = app.add_subcommand("reduce", "Hide labels and minimise an LTS");
  reduce_cmd->add_option("lts", cfg.inputs, "Input .lts file")->required()->expected(1);
  reduce_cmd->add_option("-o,--output", cfg.output, "Output .lts file (default: standard output)");
  add_relation(reduce_cmd);

  auto compare = app.add_subcommand("compare", "Check two LTSs for equivalence after hiding");
  compare->add_option("lts", cfg.inputs, "Two input .lts files")->required()->expected(2);
  add_relation(compare);

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::CallForVersion&) {
    out << app.version() << '\n';
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "error: usage: " << e.what() << '\n';
    return usage;
  }
  if (auto subs = app.get_subcommands(); !subs.empty()) cfg.subcommand = subs.front()->get_name();

  try {
    return detail::execute(cfg, out, err);
  } catch (const detail::Failure& f) {
    err << "error: " << f.category << ": " << f.message << '\n';
    return f.code;
  } catch (const std::exception& e) {
    err << "error: internal: " << e.what() << '\n';
    return failed;
  }
}

}  // namespace slco::cli
