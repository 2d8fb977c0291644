#pragma once

#include <string>
#include <vector>

#include "semistab/valued_field.hpp"

namespace semistab {

/// Metric tree of the stable model of (P^1, S + infinity). Vertex 0 is the
/// root D, which carries infinity; every other vertex is a cluster of S of
/// size >= 2 at depth = smallest pairwise valuation inside it.
struct MetricTree {
  struct Vertex {
    int parent = -1;
    Rational depth;
    Rational thickness;          // length of the edge to the parent; 0 at the root
    std::vector<std::size_t> marked;  // indices into points
    std::vector<int> children;
  };

  std::vector<Element> points;
  std::vector<Vertex> vertices;

  static constexpr int root = 0;
  int vertex_of(std::size_t point) const;
};

struct SimpleTail {
  std::size_t a;  // indices into MetricTree::points, a < b
  std::size_t b;
  Rational epsilon;
  int vertex;
};

struct BranchClassification {
  std::vector<std::size_t> ordinary;
  std::vector<SimpleTail> tails;
  bool simple = true;
  /// Vertices that are not simple tails, for diagnostics.
  std::vector<int> offending;
};

MetricTree build_branch_tree(const std::vector<Element>& S);
BranchClassification classify_points(const MetricTree& t);
Rational distance(const MetricTree& t, int c1, int c2);
bool is_simple_reduction(const std::vector<Element>& S);

/// DOT rendering; edge labels are the thicknesses as "a/b".
std::string branch_tree_dot(const MetricTree& t);

}  // namespace semistab
