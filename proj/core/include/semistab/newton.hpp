#pragma once

#include <optional>
#include <string>
#include <vector>

#include "semistab/polynomial.hpp"

namespace semistab {

struct NewtonVertex {
  int index;
  Rational value;
  friend bool operator==(const NewtonVertex&, const NewtonVertex&) = default;
};

struct NewtonSegment {
  Rational slope;
  int length;
  friend bool operator==(const NewtonSegment&, const NewtonSegment&) = default;
};

/// Lower convex hull of {(i, v(a_i)) : a_i != 0}. Collinear runs are merged,
/// so consecutive slopes are strictly increasing.
struct NewtonPolygon {
  std::vector<NewtonVertex> vertices;
  std::vector<NewtonSegment> segments;
};

NewtonPolygon newton_polygon(const PolynomialV& f);

/// Valuations of all deg(f) roots with multiplicity, ascending; roots at 0
/// are reported as infinity.
std::vector<Valuation> root_valuations(const PolynomialV& f);

/// Smallest strictly positive finite root valuation, if any.
std::optional<Rational> min_positive_root_valuation(const PolynomialV& f);

/// Number of roots (with multiplicity) of valuation >= 0: the last index
/// where the minimal coefficient valuation is attained.
int integral_root_count(const PolynomialV& f);

struct Lemma31Result {
  bool integral = false;
  /// Index of the first coefficient with negative valuation, if any.
  std::optional<int> bad_coefficient;
  /// Reduction of f when integral.
  std::optional<ResidualPoly> reduction;
};

/// Monic f of degree p with f(0) = 0: integral with reduction X^p, or the witness.
Lemma31Result check_lemma31(const PolynomialV& f);

std::string newton_json(const NewtonPolygon& np);

}  // namespace semistab
