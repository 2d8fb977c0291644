#pragma once

// Paired intersection trees of X_k (upstairs) and Y_k (downstairs) with the
// specialized morphism between them.

#include <string>
#include <vector>

#include "semistab/rational.hpp"

namespace semistab {

/// Behaviour of the specialized map on one component of X_k.
struct MapLabel {
  enum class Kind { Inseparable, Etale };
  Kind kind = Kind::Inseparable;
  int degree = 0;
  /// Etale only: branch points of the map P^1_k -> P^1_k, infinity included.
  int branch_points = 0;
  /// Etale only: branch points with wild ramification.
  int wild_points = 0;

  friend bool operator==(const MapLabel&, const MapLabel&) = default;
  std::string str() const;
};

/// A point of a ramified fiber (or infinity) specializing to a component.
struct FiberMark {
  std::string fiber;  // branch value name, "inf" for infinity
  int e = 1;          // ramification index of the point
  friend auto operator<=>(const FiberMark&, const FiberMark&) = default;
};

struct XComponent {
  std::string name;
  MapLabel label;
  std::string image;  // name of a YComponent
  std::vector<FiberMark> marks;
};

struct YComponent {
  std::string name;
  std::vector<std::string> marks;  // branch values specializing here
};

struct TreeEdge {
  std::string parent;
  std::string child;
  Rational thickness;
};

struct DualGraphPair {
  long p = 2;
  std::vector<XComponent> upstairs;
  std::vector<YComponent> downstairs;
  std::vector<TreeEdge> x_edges;
  std::vector<TreeEdge> y_edges;
  std::string x_root = "C";
  std::string y_root = "D";

  const XComponent& x(const std::string& name) const;
  const YComponent& y(const std::string& name) const;
  XComponent& x(const std::string& name);
  YComponent& y(const std::string& name);
  const TreeEdge* x_edge_to(const std::string& child) const;
  const TreeEdge* y_edge_to(const std::string& child) const;
  std::vector<std::string> x_children(const std::string& name) const;
  std::vector<std::string> y_children(const std::string& name) const;

  /// Sorts marks and edge lists into a canonical order.
  void canonicalize();
};

/// Name-independent canonical form; equal strings iff the pairs are
/// isomorphic as labelled rooted trees with compatible vertical maps.
std::string canonical_form(const DualGraphPair& g);
bool isomorphic(const DualGraphPair& a, const DualGraphPair& b);

/// Human-readable differences between two pairs (empty when isomorphic).
std::vector<std::string> structural_diff(const DualGraphPair& a, const DualGraphPair& b);

/// Structural checks: both sides are trees rooted at the roots, every
/// upstairs edge maps onto a downstairs edge whose thickness is the local
/// degree times the upstairs thickness, and degrees over each downstairs
/// component sum to p. Returns the violations.
std::vector<std::string> check_invariants(const DualGraphPair& g);

std::string to_json(const DualGraphPair& g);
DualGraphPair dual_graph_from_json(const std::string& text);
std::string to_dot(const DualGraphPair& g, const std::string& title = "model");

}  // namespace semistab
