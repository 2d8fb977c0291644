#pragma once

// Generators of concrete covers with planted critical points, and a runner
// that pushes them through both the classifier and the blow-up oracle.

#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "semistab/report.hpp"

namespace semistab::testing {

struct PlantedCover {
  std::string family;
  Cover cover;
};

/// Degree 5 with critical points 0 (index 3), a and b (index 2), where a
/// runs over 1..a_max and b = u * pi^j approaches 0.
std::vector<PlantedCover> quintic_family(long e, int max_j, long a_max, long b_max);

/// Degree 3 with critical points 0 and a (index 2 each).
std::vector<PlantedCover> cubic_family(long e, long a_max);

/// Degree 5 with four simple critical points 0, 1, a, b.
std::vector<PlantedCover> quintic_four_point_family(long e, int max_j, long a_max);

/// Degree 7 with critical points 0 (index 4), a (index 3), b (index 2).
std::vector<PlantedCover> septic_family(long e, int max_j, long a_max);

/// A random critical divisor with integral points in Q(pi).
CriticalDivisor random_divisor(std::mt19937_64& rng, long p, long e);

InstanceSpec exact_spec(const Cover& c);

struct PlantedOutcome {
  bool rejected = false;
  std::string reason;  // rejection message
  std::optional<Report> report;
};

/// cmd_verify with automatic base change; instances whose residual
/// structure leaves F_p are reported as rejected, anything else propagates.
PlantedOutcome verify_planted(const Cover& c, long max_e = 64);

/// Regime key of a verified report: "GOOD", "FAR", "CRITICAL" or "NEAR"
/// (the first tail decides when there are several).
std::string regime_key(const Report& r);

/// Sum of upstairs thicknesses from the root to each component.
std::map<std::string, Rational> x_depths(const DualGraphPair& g);
std::map<std::string, Rational> y_depths(const DualGraphPair& g);

/// Independent restatement of the thickness law: for every upstairs edge the
/// downstairs edge between the images has thickness deg(child) times it.
std::vector<std::string> thickness_law_violations(const DualGraphPair& g);

}  // namespace semistab::testing
