#pragma once

// Closed-form dual graphs of the minimal semi-stable model separating the
// ramified fibers, computed from ramification data and tail thicknesses only.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "semistab/branch_tree.hpp"
#include "semistab/cover.hpp"
#include "semistab/dual_graph.hpp"

namespace semistab {

/// A finite branch value known by name and fiber profile only.
struct BranchPoint {
  std::string name;
  std::vector<int> profile;  // ramification indices, sorted descending
  int n() const { return static_cast<int>(profile.size()); }
};

struct RamificationProfile {
  long p = 2;
  std::vector<BranchPoint> branch;  // finite branch values; infinity is implicit
  int r() const { return static_cast<int>(branch.size()) + 1; }
  const BranchPoint& find(const std::string& name) const;
};

struct TailSpec {
  std::string a;
  std::string b;
  Rational epsilon;  // thickness of the tail edge in the branch tree
};

/// Shape of the branch tree: ordinary values and two-point tails.
struct BranchLayout {
  std::vector<std::string> ordinary;
  std::vector<TailSpec> tails;
  bool simple = true;
};

enum class Regime { Good, Far, Critical, Near };
std::string regime_name(Regime r);

struct PartitionGroup {
  int d = 0;
  std::vector<int> part1;  // ramification indices from the first fiber, descending
  std::vector<int> part2;
  int n1() const { return static_cast<int>(part1.size()); }
  int n2() const { return static_cast<int>(part2.size()); }
  friend auto operator<=>(const PartitionGroup&, const PartitionGroup&) = default;
};

struct PartitionPair {
  std::vector<PartitionGroup> groups;  // sorted by (d, part1, part2)
  int s() const { return static_cast<int>(groups.size()); }
  /// Sorts parts and groups into the canonical order.
  void canonicalize();
  /// e.g. "d=(1,4) S1={{1},{3,1}} S2={{1},{2,1,1}}"
  std::string str() const;
  friend auto operator<=>(const PartitionPair&, const PartitionPair&) = default;
};

struct TailModel {
  Regime regime = Regime::Far;
  Rational threshold;  // p / (n1 + n2 - p - 1)
  DualGraphPair graph;
  std::optional<PartitionPair> partition;  // NEAR only
};

struct TailOutcome {
  TailSpec tail;
  Regime regime = Regime::Far;
  Rational threshold;
  std::optional<PartitionPair> partition;
};

struct FullModel {
  DualGraphPair graph;
  std::vector<TailOutcome> tails;
};

using PartitionChoice = std::map<std::pair<std::string, std::string>, PartitionPair>;

/// Names of the components produced for each piece; used by both the
/// formulas and the goldens.
std::string ordinary_component(char side, const std::string& lambda);
std::string tail_component(char side, const std::string& a, const std::string& b);

/// Root-only pair C -> D carrying the point at infinity.
DualGraphPair root_pair(long p);

/// Model when there is a single finite branch value (r = 2): nothing to
/// separate, so C -> D carries the totally ramified fiber.
DualGraphPair single_branch_model(const RamificationProfile& ram);

/// Two components per side for an ordinary branch value.
DualGraphPair classify_ordinary(const RamificationProfile& ram, const std::string& lambda,
                                const BranchLayout* layout = nullptr);

/// Star model when all finite branch values are ordinary.
DualGraphPair classify_good_reduction(const RamificationProfile& ram, const BranchLayout* layout = nullptr);

/// Threshold p / (n1 + n2 - p - 1) of a tail; ThresholdUndefined when the
/// denominator is not positive.
Rational tail_threshold(const RamificationProfile& ram, const std::string& a, const std::string& b);
Regime tail_regime(const RamificationProfile& ram, const std::string& a, const std::string& b, const Rational& epsilon);

/// Formula mode when `exact` is empty: one model, or every admissible
/// partition model in the NEAR regime. Exact mode uses the given partition
/// (ignored outside NEAR).
std::vector<TailModel> classify_tail(const RamificationProfile& ram, const std::string& a, const std::string& b,
                                     const Rational& epsilon, const std::optional<PartitionPair>& exact = std::nullopt);

/// All aligned partitions of two profiles into s >= 2 groups with equal sums
/// d_i and n_i1 + n_i2 = d_i + 1, canonical and deduplicated.
std::vector<PartitionPair> admissible_partitions(const std::vector<int>& profile1, const std::vector<int>& profile2, long p);
bool is_admissible(const PartitionPair& pp, const std::vector<int>& profile1, const std::vector<int>& profile2, long p);

/// Grafts all ordinary stars and tail subtrees onto C -> D. Formula mode
/// (exact == nullptr) returns the cartesian product over NEAR partition
/// choices; exact mode needs a partition for every NEAR tail.
std::vector<FullModel> assemble_full_model(const RamificationProfile& ram, const BranchLayout& layout,
                                           const PartitionChoice* exact = nullptr);

/// Bridges from concrete covers: branch value names are Element::str().
RamificationProfile profile_of(const RamificationData& ram);
BranchLayout layout_of(const MetricTree& t, const BranchClassification& bc);

}  // namespace semistab
