#include "semistab/valued_field.hpp"

#include <algorithm>
#include <sstream>

#include "semistab/error.hpp"

namespace semistab {

namespace {

using QPoly = std::vector<Rational>;  // dense, index = degree

void trim(QPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

// Division with remainder in Q[X].
std::pair<QPoly, QPoly> divmod(QPoly a, const QPoly& b) {
  trim(a);
  QPoly q;
  if (a.size() < b.size()) return {q, a};
  q.assign(a.size() - b.size() + 1, Rational(0));
  const Rational& lead = b.back();
  while (a.size() >= b.size()) {
    const std::size_t shift = a.size() - b.size();
    Rational c = a.back() / lead;
    q[shift] = c;
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= c * b[i];
    a.pop_back();
    trim(a);
  }
  return {q, a};
}

QPoly mul(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  QPoly r(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  trim(r);
  return r;
}

QPoly sub(QPoly a, const QPoly& b) {
  if (a.size() < b.size()) a.resize(b.size(), Rational(0));
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  trim(a);
  return a;
}

}  // namespace

bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

FieldContext::FieldContext(long prime, long ramification) : p(prime), e(ramification) {
  if (!is_prime(prime)) throw Error(Errc::PreconditionViolated, "p = " + std::to_string(prime) + " is not prime");
  if (ramification < 1) throw Error(Errc::PreconditionViolated, "ramification index must be >= 1");
}

const Rational& Valuation::value() const {
  if (!value_) throw Error(Errc::PreconditionViolated, "infinite valuation has no finite value");
  return *value_;
}

std::strong_ordering operator<=>(const Valuation& a, const Valuation& b) {
  if (a.is_infinite() || b.is_infinite()) {
    return static_cast<int>(a.is_infinite()) <=> static_cast<int>(b.is_infinite());
  }
  const int c = cmp(*a.value_, *b.value_);
  return c <=> 0;
}

Valuation operator+(const Valuation& a, const Valuation& b) {
  if (a.is_infinite() || b.is_infinite()) return Valuation::infinity();
  return Valuation(*a.value_ + *b.value_);
}

Element::Element(const FieldContext& ctx) : ctx_(ctx), coeffs_(static_cast<std::size_t>(ctx.e), Rational(0)) {}

Element::Element(const FieldContext& ctx, const Rational& c) : Element(ctx) { coeffs_[0] = c; }

Element::Element(const FieldContext& ctx, std::vector<Rational> coeffs) : ctx_(ctx), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() > static_cast<std::size_t>(ctx.e)) {
    throw Error(Errc::Schema, "element has more than e coefficients");
  }
  coeffs_.resize(static_cast<std::size_t>(ctx.e), Rational(0));
}

Element Element::pi(const FieldContext& ctx) {
  Element x(ctx);
  if (ctx.e == 1) {
    x.coeffs_[0] = ctx.p;
  } else {
    x.coeffs_[1] = 1;
  }
  return x;
}

bool Element::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return c == 0; });
}

bool Element::is_rational() const {
  return std::all_of(coeffs_.begin() + 1, coeffs_.end(), [](const Rational& c) { return c == 0; });
}

void Element::check_same(const Element& o) const {
  if (!(ctx_ == o.ctx_)) throw Error(Errc::ContextMismatch, "elements from different field contexts");
}

Element Element::operator-() const {
  Element r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

Element& Element::operator+=(const Element& o) {
  check_same(o);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  return *this;
}

Element& Element::operator-=(const Element& o) {
  check_same(o);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  return *this;
}

Element& Element::operator*=(const Element& o) {
  check_same(o);
  const std::size_t e = coeffs_.size();
  std::vector<Rational> r(e, Rational(0));
  for (std::size_t i = 0; i < e; ++i) {
    if (coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < e; ++j) {
      if (o.coeffs_[j] == 0) continue;
      const std::size_t k = i + j;
      // pi^k = p * pi^(k-e) once k wraps.
      if (k < e) {
        r[k] += coeffs_[i] * o.coeffs_[j];
      } else {
        r[k - e] += coeffs_[i] * o.coeffs_[j] * ctx_.p;
      }
    }
  }
  coeffs_ = std::move(r);
  return *this;
}

Element& Element::operator*=(const Rational& q) {
  for (auto& c : coeffs_) c *= q;
  return *this;
}

Element& Element::operator/=(const Element& o) {
  check_same(o);
  return *this *= o.inverse();
}

bool operator==(const Element& a, const Element& b) { return a.ctx_ == b.ctx_ && a.coeffs_ == b.coeffs_; }

Element Element::inverse() const {
  if (is_zero()) throw Error(Errc::DivisionByZero, "inverse of zero");
  if (is_rational()) return Element(ctx_, Rational(1) / coeffs_[0]);
  // Extended Euclid of a(X) against the modulus X^e - p in Q[X].
  QPoly modulus(static_cast<std::size_t>(ctx_.e) + 1, Rational(0));
  modulus[0] = -ctx_.p;
  modulus.back() = 1;
  QPoly a = coeffs_;
  trim(a);
  QPoly r0 = modulus, r1 = a;
  QPoly s0{}, s1{Rational(1)};  // coefficients of a
  while (!(r1.size() == 1)) {
    auto [q, r] = divmod(r0, r1);
    QPoly s2 = sub(s0, mul(q, s1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    if (r1.empty()) throw Error(Errc::DivisionByZero, "element is a zero divisor");  // unreachable for Eisenstein moduli
  }
  const Rational c = r1[0];
  auto [unused, rem] = divmod(s1, modulus);
  std::vector<Rational> out(static_cast<std::size_t>(ctx_.e), Rational(0));
  for (std::size_t i = 0; i < rem.size(); ++i) out[i] = rem[i] / c;
  return Element(ctx_, std::move(out));
}

Element Element::pow(unsigned long n) const {
  Element result = one(ctx_);
  Element base = *this;
  while (n) {
    if (n & 1UL) result *= base;
    n >>= 1;
    if (n) base *= base;
  }
  return result;
}

Element Element::times_uniformizer_power(const Rational& q) const {
  if (!representable(q, ctx_)) {
    throw Error(Errc::NotRepresentable, to_string(q) + " is not in (1/" + std::to_string(ctx_.e) + ")Z",
                required_ramification(q, ctx_));
  }
  const Rational scaled = q * ctx_.e;
  const Integer total = scaled.get_num();  // q = total / e
  Integer a;
  Integer b;
  mpz_fdiv_qr_ui(a.get_mpz_t(), b.get_mpz_t(), total.get_mpz_t(), static_cast<unsigned long>(ctx_.e));
  const long shift = b.get_si();
  Rational pa = 1;
  {
    Integer pp;
    mpz_pow_ui(pp.get_mpz_t(), Integer(ctx_.p).get_mpz_t(), static_cast<unsigned long>(Integer(abs(a)).get_ui()));
    pa = a >= 0 ? Rational(pp) : Rational(1) / Rational(pp);
  }
  const std::size_t e = coeffs_.size();
  std::vector<Rational> r(e, Rational(0));
  for (std::size_t i = 0; i < e; ++i) {
    if (coeffs_[i] == 0) continue;
    const std::size_t k = i + static_cast<std::size_t>(shift);
    if (k < e) {
      r[k] = coeffs_[i] * pa;
    } else {
      r[k - e] = coeffs_[i] * pa * ctx_.p;
    }
  }
  Element out(ctx_);
  out.coeffs_ = std::move(r);
  return out;
}

Element Element::lift_to(const FieldContext& larger) const {
  if (larger.p != ctx_.p || larger.e % ctx_.e != 0) {
    throw Error(Errc::ContextMismatch, "target context does not contain the source field");
  }
  const long k = larger.e / ctx_.e;
  std::vector<Rational> r(static_cast<std::size_t>(larger.e), Rational(0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) r[i * static_cast<std::size_t>(k)] = coeffs_[i];
  return Element(larger, std::move(r));
}

std::string Element::str() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    const Rational& c = coeffs_[i];
    if (c == 0) continue;
    std::string term;
    if (i == 0) {
      term = to_string(c);
    } else {
      if (c == 1) {
        term = "";
      } else if (c == -1) {
        term = "-";
      } else {
        term = to_string(c) + "*";
      }
      // pi^i = p^(i/e); the reduced exponent keeps names stable under lift_to().
      const Rational expo = ratio(static_cast<long>(i), ctx_.e);
      term += std::to_string(ctx_.p) + "^(" + to_string(expo) + ")";
    }
    if (!first && term.front() != '-') os << '+';
    os << term;
    first = false;
  }
  return os.str();
}

Valuation val(const Element& x) {
  const auto& c = x.coeffs();
  const long e = x.context().e;
  std::optional<Rational> best;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] == 0) continue;
    Rational v = Rational(padic_valuation(c[i], x.context().p)) + ratio(static_cast<long>(i), e);
    v.canonicalize();
    if (!best || v < *best) best = v;
  }
  return best ? Valuation(*best) : Valuation::infinity();
}

ResidueElement residue(const Element& x) {
  const Valuation v = val(x);
  if (!v.is_infinite() && v.value() < 0) {
    throw Error(Errc::NegativeValuation, "residue of " + x.str() + " with valuation " + v.str());
  }
  const long p = x.context().p;
  const Rational& c0 = x.coeffs()[0];
  if (c0 == 0) return {0, p};
  return {residue_mod(c0, p), p};
}

bool representable(const Rational& q, const FieldContext& ctx) {
  const Rational scaled = q * ctx.e;
  return scaled.get_den() == 1;
}

long required_ramification(const Rational& q, const FieldContext& ctx) {
  const long den = Integer(q.get_den()).get_si();
  return lcm(ctx.e, den);
}

Element uniformizer_power(const Rational& q, const FieldContext& ctx) {
  return Element::one(ctx).times_uniformizer_power(q);
}

Element element_from_coeffs(const FieldContext& ctx, std::span<const std::string> coeffs) {
  std::vector<Rational> c;
  c.reserve(coeffs.size());
  for (const auto& s : coeffs) c.push_back(parse_rational(s));
  return Element(ctx, std::move(c));
}

}  // namespace semistab
