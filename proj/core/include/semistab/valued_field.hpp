#pragma once

// Exact arithmetic in K = Q(pi), pi^e = p, with the valuation normalized by
// v(p) = 1. Elements are stored as sum_i c_i pi^i with rational c_i, i < e.

#include <compare>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "semistab/rational.hpp"

namespace semistab {

/// The ambient field: a prime p and the absolute ramification index e.
/// X^e - p is Eisenstein at p, so the representation is always a field.
struct FieldContext {
  long p = 2;
  long e = 1;

  FieldContext() = default;
  FieldContext(long prime, long ramification);

  /// The context with ramification index k*e; elements embed via lift_to().
  FieldContext extended(long k) const { return FieldContext(p, e * k); }

  friend bool operator==(const FieldContext&, const FieldContext&) = default;
};

bool is_prime(long n);

/// Value of v: a rational, or +infinity for zero.
class Valuation {
 public:
  Valuation() = default;  // infinity
  explicit Valuation(Rational value) : value_(std::move(value)) {}
  static Valuation infinity() { return Valuation(); }

  bool is_infinite() const { return !value_.has_value(); }
  const Rational& value() const;

  friend bool operator==(const Valuation&, const Valuation&) = default;
  friend std::strong_ordering operator<=>(const Valuation& a, const Valuation& b);
  friend Valuation operator+(const Valuation& a, const Valuation& b);

  std::string str() const { return is_infinite() ? "inf" : to_string(*value_); }

 private:
  std::optional<Rational> value_;
};

/// Element of F_p.
struct ResidueElement {
  long value = 0;
  long p = 2;
  friend bool operator==(const ResidueElement&, const ResidueElement&) = default;
};

class Element {
 public:
  explicit Element(const FieldContext& ctx);  // zero
  Element(const FieldContext& ctx, const Rational& c);
  Element(const FieldContext& ctx, std::vector<Rational> coeffs);

  static Element zero(const FieldContext& ctx) { return Element(ctx); }
  static Element one(const FieldContext& ctx) { return Element(ctx, Rational(1)); }
  static Element pi(const FieldContext& ctx);

  const FieldContext& context() const { return ctx_; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  bool is_zero() const;
  bool is_rational() const;

  Element operator-() const;
  Element& operator+=(const Element& o);
  Element& operator-=(const Element& o);
  Element& operator*=(const Element& o);
  Element& operator/=(const Element& o);
  Element& operator*=(const Rational& q);

  friend Element operator+(Element a, const Element& b) { return a += b; }
  friend Element operator-(Element a, const Element& b) { return a -= b; }
  friend Element operator*(Element a, const Element& b) { return a *= b; }
  friend Element operator/(Element a, const Element& b) { return a /= b; }
  friend Element operator*(Element a, const Rational& q) { return a *= q; }
  friend Element operator*(const Rational& q, Element a) { return a *= q; }
  friend bool operator==(const Element& a, const Element& b);

  Element inverse() const;
  Element pow(unsigned long n) const;

  /// Multiplication by p^a pi^b, the canonical element of valuation q.
  Element times_uniformizer_power(const Rational& q) const;

  /// Image in the context with ramification index k*e (pi_e = pi_{ke}^k).
  Element lift_to(const FieldContext& larger) const;

  /// Human readable form with pi^i written as p^(i/e), e.g. "3/25+5^(1/2)" or
  /// "-1+2*5^(3/4)"; canonical per element and unchanged by lift_to().
  std::string str() const;

 private:
  void check_same(const Element& o) const;

  FieldContext ctx_;
  std::vector<Rational> coeffs_;
};

Valuation val(const Element& x);
ResidueElement residue(const Element& x);
Element uniformizer_power(const Rational& q, const FieldContext& ctx);

/// True when q is a multiple of 1/e.
bool representable(const Rational& q, const FieldContext& ctx);

/// Smallest multiple of ctx.e in which q becomes representable.
long required_ramification(const Rational& q, const FieldContext& ctx);

/// Parses "3/25" style rationals, or a JSON-like list of coefficient strings
/// given separately; see io for the JSON entry points.
Element element_from_coeffs(const FieldContext& ctx, std::span<const std::string> coeffs);

}  // namespace semistab
