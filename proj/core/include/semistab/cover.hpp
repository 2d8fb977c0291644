#pragma once

#include <string>
#include <vector>

#include "semistab/polynomial.hpp"

namespace semistab {

struct CriticalPoint {
  Element x;
  int m;  // ramification index e_x >= 2
};

/// Finite critical points of a degree-p polynomial cover with their indices.
/// Invariant: points pairwise distinct, sum of (m - 1) equals p - 1.
class CriticalDivisor {
 public:
  CriticalDivisor(const FieldContext& ctx, std::vector<CriticalPoint> points);
  const FieldContext& context() const { return ctx_; }
  const std::vector<CriticalPoint>& points() const { return points_; }

 private:
  FieldContext ctx_;
  std::vector<CriticalPoint> points_;
};

/// A polynomial cover P^1 -> P^1 of degree p: beta monic of degree p with
/// beta(0) = 0, together with its (known) finite critical points.
class Cover {
 public:
  Cover(PolynomialV beta, CriticalDivisor critical);

  const FieldContext& context() const { return beta_.context(); }
  long p() const { return beta_.context().p; }
  const PolynomialV& beta() const { return beta_; }
  const CriticalDivisor& critical() const { return critical_; }

  /// Same cover over the field with ramification index k*e.
  Cover lifted(long k) const;

 private:
  PolynomialV beta_;
  CriticalDivisor critical_;
};

struct BranchValue {
  Element lambda;
  /// Ramification indices of the fiber, sorted descending; sums to p.
  std::vector<int> profile;
  /// Ramified points over lambda.
  std::vector<CriticalPoint> ramified;
  int fiber_size() const { return static_cast<int>(profile.size()); }
};

/// Finite branch values with their fiber profiles. Infinity is implicit with
/// profile {p}. Riemann-Hurwitz: sum of fiber sizes = (r - 2) p + 1.
struct RamificationData {
  long p = 2;
  std::vector<BranchValue> branch;
  int r() const { return static_cast<int>(branch.size()) + 1; }
  const BranchValue* find(const Element& lambda) const;
};

Cover from_critical_divisor(const CriticalDivisor& d);

/// Raw coefficients accepted only together with the critical points; the
/// derivative identity beta' = p prod (X - x)^(m-1) is verified.
Cover cover_from_coefficients(PolynomialV beta, const CriticalDivisor& d);

RamificationData branch_data(const Cover& c);

/// Checks sum n_lambda = (r-2)p + 1 and that every profile sums to p.
bool riemann_hurwitz_holds(const RamificationData& ram);

/// beta_new(X) = scale^{-p} (beta(scale X + shift) - beta(shift)).
struct AffineChange {
  Element shift;
  Element scale;
};

struct Normalization {
  Cover cover;
  AffineChange change;
  /// 1 is a branch value (normalized); otherwise semi-normalized with a unit
  /// branch value.
  bool fully_normalized = false;
};

/// Brings the cover to (semi-)normalized form inside the given field. Throws
/// NeedsExtension with the required ramification index when the rescaling
/// is not available, NotEnoughBranchPoints with fewer than two finite branch values.
Normalization normalize(const Cover& c);

/// Squarefree part of beta - lambda, using the known ramified points.
PolynomialV fiber_radical(const Cover& c, const BranchValue& b);

}  // namespace semistab
