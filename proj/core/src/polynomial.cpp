#include "semistab/polynomial.hpp"

#include <sstream>

#include "semistab/error.hpp"

namespace semistab {

PolynomialV::PolynomialV(const FieldContext& ctx, std::vector<Element> coeffs) : ctx_(ctx), c_(std::move(coeffs)) {
  for (const auto& c : c_) {
    if (!(c.context() == ctx_)) throw Error(Errc::ContextMismatch, "coefficient from a different field context");
  }
  trim();
}

PolynomialV PolynomialV::from_rationals(const FieldContext& ctx, const std::vector<Rational>& coeffs) {
  std::vector<Element> c;
  c.reserve(coeffs.size());
  for (const auto& q : coeffs) c.emplace_back(ctx, q);
  return PolynomialV(ctx, std::move(c));
}

PolynomialV PolynomialV::constant(const Element& c) { return PolynomialV(c.context(), {c}); }

PolynomialV PolynomialV::x(const FieldContext& ctx) { return PolynomialV(ctx, {Element::zero(ctx), Element::one(ctx)}); }

PolynomialV PolynomialV::linear(const Element& root) {
  return PolynomialV(root.context(), {-root, Element::one(root.context())});
}

void PolynomialV::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

bool PolynomialV::is_monic() const { return !c_.empty() && c_.back() == Element::one(ctx_); }

Element PolynomialV::coeff(int i) const {
  if (i < 0 || i > degree()) return Element::zero(ctx_);
  return c_[static_cast<std::size_t>(i)];
}

const Element& PolynomialV::leading() const {
  if (c_.empty()) throw Error(Errc::ZeroPolynomial, "leading coefficient of zero");
  return c_.back();
}

PolynomialV PolynomialV::operator-() const {
  PolynomialV r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

PolynomialV operator+(const PolynomialV& a, const PolynomialV& b) {
  std::vector<Element> r;
  const int n = std::max(a.degree(), b.degree()) + 1;
  r.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) r.push_back(a.coeff(i) + b.coeff(i));
  return PolynomialV(a.ctx_, std::move(r));
}

PolynomialV operator-(const PolynomialV& a, const PolynomialV& b) { return a + (-b); }

PolynomialV operator*(const PolynomialV& a, const PolynomialV& b) {
  if (a.is_zero() || b.is_zero()) return PolynomialV(a.ctx_);
  std::vector<Element> r(a.c_.size() + b.c_.size() - 1, Element::zero(a.ctx_));
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
  }
  return PolynomialV(a.ctx_, std::move(r));
}

PolynomialV operator*(const PolynomialV& a, const Element& s) {
  PolynomialV r = a;
  for (auto& c : r.c_) c *= s;
  r.trim();
  return r;
}

bool operator==(const PolynomialV& a, const PolynomialV& b) { return a.ctx_ == b.ctx_ && a.c_ == b.c_; }

PolynomialV PolynomialV::pow(unsigned n) const {
  PolynomialV r = constant(Element::one(ctx_));
  for (unsigned i = 0; i < n; ++i) r = r * *this;
  return r;
}

PolynomialV PolynomialV::derivative() const {
  if (c_.size() <= 1) return PolynomialV(ctx_);
  std::vector<Element> d;
  d.reserve(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * Rational(static_cast<long>(i)));
  return PolynomialV(ctx_, std::move(d));
}

PolynomialV PolynomialV::antiderivative() const {
  std::vector<Element> r;
  r.reserve(c_.size() + 1);
  r.push_back(Element::zero(ctx_));
  for (std::size_t i = 0; i < c_.size(); ++i) r.push_back(c_[i] * Rational(1, static_cast<long>(i + 1)));
  return PolynomialV(ctx_, std::move(r));
}

Element PolynomialV::operator()(const Element& x) const {
  Element acc = Element::zero(ctx_);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    acc *= x;
    acc += *it;
  }
  return acc;
}

PolynomialV PolynomialV::shifted(const Rational& t) const {
  std::vector<Element> a = c_;
  const int n = degree();
  for (int i = 0; i < n; ++i)
    for (int j = n - 1; j >= i; --j) a[static_cast<std::size_t>(j)] += a[static_cast<std::size_t>(j) + 1] * t;
  return PolynomialV(ctx_, std::move(a));
}

PolynomialV PolynomialV::shifted(const Element& t) const {
  if (t.is_rational()) return shifted(t.coeffs()[0]);
  std::vector<Element> a = c_;
  const int n = degree();
  for (int i = 0; i < n; ++i)
    for (int j = n - 1; j >= i; --j) a[static_cast<std::size_t>(j)] += a[static_cast<std::size_t>(j) + 1] * t;
  return PolynomialV(ctx_, std::move(a));
}

PolynomialV PolynomialV::scaled(const Element& s) const {
  std::vector<Element> a = c_;
  Element power = Element::one(ctx_);
  for (auto& c : a) {
    c *= power;
    power *= s;
  }
  return PolynomialV(ctx_, std::move(a));
}

PolynomialV PolynomialV::scaled_by_uniformizer_power(const Rational& q) const {
  std::vector<Element> a;
  a.reserve(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) a.push_back(c_[i].times_uniformizer_power(q * static_cast<long>(i)));
  return PolynomialV(ctx_, std::move(a));
}

PolynomialV PolynomialV::reversed() const {
  std::vector<Element> a(c_.rbegin(), c_.rend());
  return PolynomialV(ctx_, std::move(a));
}

PolynomialV PolynomialV::divided_by_root(const Element& root, int k) const {
  std::vector<Element> cur = c_;
  for (int step = 0; step < k; ++step) {
    if (cur.empty()) throw Error(Errc::PreconditionViolated, "division of the zero polynomial");
    // Synthetic division by X - root.
    const std::size_t n = cur.size() - 1;
    std::vector<Element> q(n, Element::zero(ctx_));
    Element carry = Element::zero(ctx_);
    for (std::size_t i = n + 1; i-- > 1;) {
      carry = cur[i] + carry * root;
      q[i - 1] = carry;
    }
    const Element remainder = cur[0] + carry * root;
    if (!remainder.is_zero()) {
      throw Error(Errc::PreconditionViolated, root.str() + " is not a root of multiplicity " + std::to_string(k));
    }
    cur = std::move(q);
  }
  return PolynomialV(ctx_, std::move(cur));
}

Valuation PolynomialV::content_valuation() const {
  Valuation best = Valuation::infinity();
  for (const auto& c : c_) best = std::min(best, val(c));
  return best;
}

ResidualPoly PolynomialV::reduction() const {
  std::vector<long> r;
  r.reserve(c_.size());
  for (const auto& c : c_) {
    if (const Valuation v = val(c); !v.is_infinite() && v.value() < 0) {
      throw Error(Errc::NonIntegral, "coefficient " + c.str() + " has negative valuation");
    }
    r.push_back(residue(c).value);
  }
  return ResidualPoly(ctx_.p, std::move(r));
}

ResidualPoly PolynomialV::normalized_reduction() const {
  if (is_zero()) throw Error(Errc::ZeroPolynomial, "normalized reduction of zero");
  const Rational m = content_valuation().value();
  std::vector<long> r;
  r.reserve(c_.size());
  for (const auto& c : c_) r.push_back(residue(c.times_uniformizer_power(-m)).value);
  return ResidualPoly(ctx_.p, std::move(r));
}

std::string PolynomialV::str() const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const Element& c = c_[static_cast<std::size_t>(i)];
    if (c.is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    const std::string cs = c.str();
    if (i == 0) {
      os << cs;
      continue;
    }
    if (cs != "1") os << '(' << cs << ")*";
    os << 'X';
    if (i > 1) os << '^' << i;
  }
  return os.str();
}

}  // namespace semistab
