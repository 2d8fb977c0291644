#pragma once

// Instance files, reports and the command implementations behind the CLI.

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "semistab/blowup_oracle.hpp"
#include "semistab/classifier.hpp"
#include "semistab/cover.hpp"
#include "semistab/error.hpp"

namespace semistab {

/// Either a concrete cover (exact mode) or ramification profiles with tail
/// thicknesses (formula mode). The mode is chosen by the input flag, never
/// inferred.
struct InstanceSpec {
  enum class Mode { Exact, Formula };
  Mode mode = Mode::Formula;
  long p = 2;
  long e = 1;
  std::optional<Cover> cover;        // exact mode
  RamificationProfile profile;       // formula mode
  std::vector<TailSpec> tails;       // formula mode; remaining values are ordinary
  std::optional<std::pair<std::string, std::string>> pair;  // requested pair, or all
  std::string echo;                  // canonical JSON of the input
};

/// {"p":5,"e":1,"critical":[{"x":"0","m":3},{"x":["1","2"],"m":2}]}; x is a
/// rational or a list of coefficients of 1, pi, ..., pi^(e-1).
InstanceSpec parse_cover_spec(const std::string& json_text);
/// {"p":5,"branch":[{"name":"0","profile":[3,1,1]},...],
///  "tails":[{"pair":["0","lambda"],"epsilon":"7"}]}
InstanceSpec parse_profile_spec(const std::string& json_text);
/// Adds or replaces the tail given on the command line (--pair, --epsilon).
void apply_pair_override(InstanceSpec& spec, const std::string& pair, const std::optional<std::string>& epsilon);

struct TailReport {
  TailSpec tail;
  Regime regime = Regime::Far;
  std::optional<Rational> threshold;
  std::vector<PartitionPair> partitions;  // NEAR: admissible (classify) or realized (verify)
};

struct Verdict {
  bool agree = false;
  std::vector<std::string> diff;
  std::vector<std::string> invariant_violations;
  DualGraphPair oracle;
  DualGraphPair expected;
  std::vector<OracleStage> stages;
};

struct Report {
  std::string command;
  std::string mode;
  std::string input;
  long e_used = 1;
  std::vector<std::pair<std::string, std::vector<int>>> branch_values;
  std::string branch_tree_dot;
  std::vector<std::string> newton;  // JSON per branch value
  std::string regime;               // GOOD, or the regimes of the tails
  std::vector<TailReport> tails;
  std::vector<FullModel> models;
  std::optional<Verdict> verdict;
};

/// Exit code for a library error: 2 non-simple reduction, 3 malformed input,
/// 4 computation aborted (oracle limits, field too small).
int exit_code_for(Errc code);
std::string advice_for(const Error& err);

Report cmd_classify(const InstanceSpec& spec);

struct VerifyOptions {
  /// Rebuild the field with the ramification index an aborted step asks for
  /// and retry, instead of failing with the advice.
  bool auto_extend = false;
  long max_e = 64;
  /// Test fixture: applied to the classifier's model before comparison.
  std::function<void(DualGraphPair&)> tamper;
};
Report cmd_verify(const InstanceSpec& spec, const VerifyOptions& opts = {});

struct AtlasPair {
  std::size_t i;
  std::size_t j;
  std::optional<Rational> threshold;
  long u = 0;
  std::vector<PartitionPair> partitions;
};

struct AtlasRow {
  int r = 0;
  std::vector<std::vector<int>> profiles;  // finite branch values
  std::vector<AtlasPair> pairs;
};

std::vector<AtlasRow> cmd_atlas(long p, int r_max);
std::string atlas_markdown(long p, const std::vector<AtlasRow>& rows);
std::string atlas_json(long p, const std::vector<AtlasRow>& rows);

struct ExampleModel {
  std::string id;
  std::string title;
  std::string regime;
  std::optional<PartitionPair> partition;
  DualGraphPair graph;
};

/// The nine models of the explicit degree-5 example: good reduction, four
/// models for a tail {0, lambda}, four for a tail {1, lambda}.
std::vector<ExampleModel> cmd_example8();
std::string example8_json(const std::vector<ExampleModel>& models);
std::string example8_dot(const std::vector<ExampleModel>& models);

std::string report_json(const Report& r);
std::string report_text(const Report& r);

}  // namespace semistab
