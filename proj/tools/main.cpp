// semistab: classify and verify semi-stable reduction of degree-p polynomial
// covers from the command line.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "semistab/report.hpp"

namespace {

using namespace semistab;

enum class Emit { Json, Dot, Both };

struct InstanceFlags {
  std::string cover_file;
  std::string profiles_file;
  std::string pair;
  std::string epsilon;
  Emit emit = Emit::Json;
  bool trace = false;
  bool emit_newton = false;
  bool emit_branch_tree = false;
  bool verify = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::Schema, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

InstanceSpec load_instance(const InstanceFlags& f) {
  if (f.cover_file.empty() == f.profiles_file.empty()) {
    throw Error(Errc::Schema, "give exactly one of --cover (exact mode) or --profiles (formula mode)");
  }
  InstanceSpec spec =
      f.cover_file.empty() ? parse_profile_spec(read_file(f.profiles_file)) : parse_cover_spec(read_file(f.cover_file));
  if (!f.pair.empty()) {
    apply_pair_override(spec, f.pair, f.epsilon.empty() ? std::nullopt : std::optional<std::string>(f.epsilon));
  } else if (!f.epsilon.empty()) {
    throw Error(Errc::Schema, "--epsilon needs --pair");
  }
  return spec;
}

void add_instance_flags(CLI::App* cmd, InstanceFlags& f) {
  cmd->add_option("--cover", f.cover_file, "Exact-mode instance: JSON file with p, e and the critical divisor");
  cmd->add_option("--profiles", f.profiles_file, "Formula-mode instance: JSON file with ramification profiles");
  cmd->add_option("--pair", f.pair, "Restrict to the tail lambda1,lambda2");
  cmd->add_option("--epsilon", f.epsilon, "Tail thickness a/b for --pair (formula mode)");
  cmd->add_option("--emit", f.emit, "Output format")
      ->transform(CLI::CheckedTransformer(std::map<std::string, Emit>{{"json", Emit::Json}, {"dot", Emit::Dot}, {"both", Emit::Both}}));
  cmd->add_flag("--emit-newton", f.emit_newton, "Include the Newton polygon of every beta - lambda");
  cmd->add_flag("--emit-branch-tree", f.emit_branch_tree, "Include the branch tree as DOT");
}

void print_report(const Report& rep, const InstanceFlags& f) {
  Report shown = rep;
  if (!f.emit_newton) shown.newton.clear();
  if (!f.emit_branch_tree) shown.branch_tree_dot.clear();
  if (f.emit == Emit::Json || f.emit == Emit::Both) std::cout << report_json(shown);
  if (f.emit == Emit::Dot || f.emit == Emit::Both) {
    if (f.emit_branch_tree && !rep.branch_tree_dot.empty()) std::cout << rep.branch_tree_dot;
    for (std::size_t k = 0; k < rep.models.size(); ++k) {
      std::cout << to_dot(rep.models[k].graph, "model_" + std::to_string(k + 1));
    }
    if (rep.verdict) std::cout << to_dot(rep.verdict->oracle, "oracle");
  }
  std::cerr << report_text(rep);
}

int run_classify(const InstanceFlags& f) {
  const InstanceSpec spec = load_instance(f);
  print_report(cmd_classify(spec), f);
  return 0;
}

int run_verify(const InstanceFlags& f) {
  const InstanceSpec spec = load_instance(f);
  const Report rep = cmd_verify(spec);
  if (f.trace) {
    for (const auto& s : rep.verdict->stages) std::cerr << stage_json(s) << "\n";
  }
  print_report(rep, f);
  return rep.verdict->agree ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Semi-stable reduction of degree-p polynomial covers"};
  app.require_subcommand(1);

  InstanceFlags classify_flags;
  auto* classify = app.add_subcommand("classify", "Classify the reduction from closed formulas");
  add_instance_flags(classify, classify_flags);
  classify->add_flag("--verify", classify_flags.verify, "Also run the blow-up oracle and compare (exact mode)");
  classify->add_flag("--trace", classify_flags.trace, "With --verify: print each blow-up stage as a JSON line on stderr");

  InstanceFlags verify_flags;
  auto* verify = app.add_subcommand("verify", "Compare the classifier with the blow-up oracle (exact mode)");
  add_instance_flags(verify, verify_flags);
  verify->add_flag("--trace", verify_flags.trace, "Print each blow-up stage as a JSON line on stderr");

  long atlas_p = 5;
  int atlas_r = 4;
  std::string atlas_format = "markdown";
  auto* atlas = app.add_subcommand("atlas", "Enumerate reduction types for all ramification profiles");
  atlas->add_option("--p", atlas_p, "Prime degree")->check(CLI::IsMember({3, 5, 7}));
  atlas->add_option("--r-max", atlas_r, "Largest number of branch points")->check(CLI::Range(2, 4));
  atlas->add_option("--format", atlas_format, "Table format")->check(CLI::IsMember({"markdown", "json"}));

  Emit example_emit = Emit::Json;
  auto* example = app.add_subcommand("example8", "All reduction types of the explicit degree-5 example");
  example->add_option("--emit", example_emit, "Output format")
      ->transform(CLI::CheckedTransformer(std::map<std::string, Emit>{{"json", Emit::Json}, {"dot", Emit::Dot}, {"both", Emit::Both}}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 3;
  }

  try {
    if (*classify) return classify_flags.verify ? run_verify(classify_flags) : run_classify(classify_flags);
    if (*verify) return run_verify(verify_flags);
    if (*atlas) {
      const auto rows = cmd_atlas(atlas_p, atlas_r);
      std::cout << (atlas_format == "json" ? atlas_json(atlas_p, rows) : atlas_markdown(atlas_p, rows));
      return 0;
    }
    if (*example) {
      const auto models = cmd_example8();
      if (example_emit != Emit::Dot) std::cout << example8_json(models);
      if (example_emit != Emit::Json) std::cout << example8_dot(models);
      return 0;
    }
  } catch (const Error& err) {
    std::cerr << "error: " << err.what() << "\n";
    if (const std::string advice = advice_for(err); !advice.empty()) std::cerr << "advice: " << advice << "\n";
    return exit_code_for(err.code());
  }
  return 0;
}
