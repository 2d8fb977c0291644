#pragma once

// Independent construction of the separating model by iterated blow-ups of
// the fundamental model. Every decision is taken from coefficient
// reductions of local polynomials; fiber points are never computed.

#include <optional>
#include <string>
#include <vector>

#include "semistab/classifier.hpp"
#include "semistab/cover.hpp"
#include "semistab/dual_graph.hpp"

namespace semistab {

/// One ramified fiber followed through the charts: the squarefree part of
/// beta - lambda and beta - lambda itself, both in the current chart.
struct TrackedFiber {
  std::string name;
  Element lambda;
  int n = 0;  // number of distinct fiber points
  PolynomialV radical;
  PolynomialV full;
};

struct ChartStep {
  Element center;  // residue lift in the previous chart's coordinate
  Rational nu;     // scaling exponent of this step (0 for pure translation)
};

/// Chart X = (x - center) / pi^radius around a disc of the generic fiber.
struct ModelState {
  FieldContext ctx;
  Element center;
  Rational radius;
  std::vector<ChartStep> charts;
  PolynomialV beta_local;  // beta(center + pi^radius X)
  std::vector<TrackedFiber> fibers;
};

/// Initial chart on the unit disc. Verifies that beta reduces to X^p and that
/// gamma(X) = X^p beta(1/X) reduces to 1; Lemma31Failed otherwise. Tracks
/// the named branch values (all of them when `names` is empty).
ModelState fundamental_model(const Cover& c, const std::vector<std::string>& names = {});

/// Translate by the lift of w and rescale by pi^nu. CenterNotRoot when w is
/// not a residual root of a tracked fiber; NotRepresentable when nu is not in
/// (1/e)Z.
ModelState blow_up(const ModelState& s, long w, const Rational& nu);

/// Smallest positive valuation of a tracked fiber point relative to the lift
/// of w: the thickness of the minimal blow-up centered at w.
std::optional<Rational> next_thickness(const ModelState& s, long w);

struct SeparationStatus {
  bool separated = false;
  int count = 0;  // distinct specializations of the fiber on this chart
};

/// Distinct residual roots of beta - lambda on the current chart, compared
/// with the fiber size.
SeparationStatus separation_status(const ModelState& s, const std::string& fiber);

/// A blow-up stage, as emitted by --trace.
struct OracleStage {
  std::string disc;      // name of the component being reached
  std::string center;    // center of the chart, in original coordinates
  Rational nu;           // thickness added by this stage
  std::string residual;  // reduction of the product of the fiber radicals
  bool pure = false;     // single residue class: recentre and continue
};

struct OracleDisc {
  std::string name;
  std::string center;
  Rational radius;
  std::string image;
  Rational image_radius;
};

struct OracleResult {
  DualGraphPair graph;
  std::vector<OracleStage> stages;
  std::vector<OracleDisc> discs;
};

struct OracleOptions {
  std::vector<std::string> fibers;  // empty: every finite branch value
  int max_stages = 512;
};

/// Builds both intersection trees from discs: the upstairs tree is the
/// cluster tree of the tracked fibers, the downstairs tree consists of the
/// images of those discs under beta.
OracleResult run_oracle(const Cover& c, const OracleOptions& opts = {});

/// The model separating the fibers over two branch values.
DualGraphPair separate_fibers(const Cover& c, const std::string& lambda1, const std::string& lambda2);

/// Partition pair realized below each tail component: groups are the
/// components hanging from the component that first holds both fibers.
PartitionChoice realized_partitions(const DualGraphPair& g, const BranchLayout& layout);

std::string stage_json(const OracleStage& s);

}  // namespace semistab
