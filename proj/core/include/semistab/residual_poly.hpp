#pragma once

// Dense polynomials over the residue field F_p.

#include <string>
#include <vector>

namespace semistab {

class ResidualPoly {
 public:
  ResidualPoly() = default;
  ResidualPoly(long p, std::vector<long> coeffs);
  static ResidualPoly monomial(long p, long coeff, int degree);
  static ResidualPoly constant(long p, long c) { return ResidualPoly(p, {c}); }

  long prime() const { return p_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c_.empty(); }
  long operator[](int i) const { return i >= 0 && i < static_cast<int>(c_.size()) ? c_[static_cast<std::size_t>(i)] : 0; }
  long leading() const { return c_.empty() ? 0 : c_.back(); }
  const std::vector<long>& coeffs() const { return c_; }

  ResidualPoly derivative() const;
  ResidualPoly monic() const;
  long eval(long x) const;

  friend ResidualPoly operator+(const ResidualPoly& a, const ResidualPoly& b);
  friend ResidualPoly operator-(const ResidualPoly& a, const ResidualPoly& b);
  friend ResidualPoly operator*(const ResidualPoly& a, const ResidualPoly& b);
  friend bool operator==(const ResidualPoly& a, const ResidualPoly& b) = default;

  /// "X^5+4*X" style rendering with coefficients in [0, p).
  std::string str() const;

 private:
  void normalize();
  long p_ = 2;
  std::vector<long> c_;
};

long mod_inverse(long a, long p);

std::pair<ResidualPoly, ResidualPoly> divmod(const ResidualPoly& a, const ResidualPoly& b);
ResidualPoly gcd(ResidualPoly a, ResidualPoly b);  // monic, or zero

/// Product of the distinct irreducible factors; correct in characteristic p.
ResidualPoly radical(const ResidualPoly& f);

/// Number of distinct roots over an algebraic closure of F_p.
int squarefree_degree(const ResidualPoly& f);

struct RootMultiplicity {
  long root;
  int multiplicity;
};

/// Roots lying in F_p, found by trial evaluation, with multiplicities.
std::vector<RootMultiplicity> roots_in_fp(const ResidualPoly& f);

/// Multiset of root multiplicities over the algebraic closure, sorted
/// descending. Requires every multiplicity to be < p except when f is a
/// single p-th power of a linear factor.
std::vector<int> multiplicity_profile(const ResidualPoly& f);

long resultant(const ResidualPoly& a, const ResidualPoly& b);

/// Number of distinct finite critical values of f over the algebraic closure.
int critical_value_count(const ResidualPoly& f);

/// Lagrange interpolation through (xs[i], ys[i]) with distinct xs.
ResidualPoly interpolate(long p, const std::vector<long>& xs, const std::vector<long>& ys);

}  // namespace semistab
