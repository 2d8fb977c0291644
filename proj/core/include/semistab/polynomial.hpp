#pragma once

#include <string>
#include <vector>

#include "semistab/residual_poly.hpp"
#include "semistab/valued_field.hpp"

namespace semistab {

/// Dense univariate polynomial over K; coeffs()[i] multiplies X^i.
/// The zero polynomial has no coefficients and degree -1.
class PolynomialV {
 public:
  explicit PolynomialV(const FieldContext& ctx) : ctx_(ctx) {}
  PolynomialV(const FieldContext& ctx, std::vector<Element> coeffs);
  static PolynomialV from_rationals(const FieldContext& ctx, const std::vector<Rational>& coeffs);
  static PolynomialV constant(const Element& c);
  static PolynomialV x(const FieldContext& ctx);
  /// X - root
  static PolynomialV linear(const Element& root);

  const FieldContext& context() const { return ctx_; }
  const std::vector<Element>& coeffs() const { return c_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_monic() const;
  Element coeff(int i) const;
  const Element& leading() const;

  PolynomialV operator-() const;
  friend PolynomialV operator+(const PolynomialV& a, const PolynomialV& b);
  friend PolynomialV operator-(const PolynomialV& a, const PolynomialV& b);
  friend PolynomialV operator*(const PolynomialV& a, const PolynomialV& b);
  friend PolynomialV operator*(const PolynomialV& a, const Element& s);
  friend bool operator==(const PolynomialV& a, const PolynomialV& b);

  PolynomialV pow(unsigned n) const;
  PolynomialV derivative() const;
  /// Antiderivative with zero constant term.
  PolynomialV antiderivative() const;
  Element operator()(const Element& x) const;

  /// f(X + t) for rational t (cheap scalar Taylor shift).
  PolynomialV shifted(const Rational& t) const;
  /// f(X + t) for a field element t.
  PolynomialV shifted(const Element& t) const;
  /// f(s X) for a field element s.
  PolynomialV scaled(const Element& s) const;
  /// f(u X) where u = uniformizer_power(q); monomial multiplications only.
  PolynomialV scaled_by_uniformizer_power(const Rational& q) const;
  /// X^deg f(1/X).
  PolynomialV reversed() const;

  /// Exact quotient by (X - root)^k; throws PreconditionViolated on remainder.
  PolynomialV divided_by_root(const Element& root, int k = 1) const;

  /// Minimal coefficient valuation (infinite for zero).
  Valuation content_valuation() const;
  /// Coefficientwise residue; every coefficient must have val >= 0.
  ResidualPoly reduction() const;
  /// Residue of f / u where u is the canonical element of valuation
  /// content_valuation(): the reduction of f up to a unit.
  ResidualPoly normalized_reduction() const;

  std::string str() const;

 private:
  void trim();
  FieldContext ctx_;
  std::vector<Element> c_;
};

}  // namespace semistab
