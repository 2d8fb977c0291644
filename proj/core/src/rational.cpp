#include "semistab/rational.hpp"

#include <numeric>

#include "semistab/error.hpp"

namespace semistab {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::NegativeValuation: return "NegativeValuation";
    case Errc::NotRepresentable: return "NotRepresentable";
    case Errc::ContextMismatch: return "ContextMismatch";
    case Errc::ZeroPolynomial: return "ZeroPolynomial";
    case Errc::PreconditionViolated: return "PreconditionViolated";
    case Errc::InvalidDivisor: return "InvalidDivisor";
    case Errc::RHViolation: return "RHViolation";
    case Errc::NeedsExtension: return "NeedsExtension";
    case Errc::NotEnoughBranchPoints: return "NotEnoughBranchPoints";
    case Errc::AllPointsCoalesce: return "AllPointsCoalesce";
    case Errc::NonIntegral: return "NonIntegral";
    case Errc::VertexNotFound: return "VertexNotFound";
    case Errc::NotOrdinary: return "NotOrdinary";
    case Errc::BadReduction: return "BadReduction";
    case Errc::TooFewBranchPoints: return "TooFewBranchPoints";
    case Errc::NotSimpleTail: return "NotSimpleTail";
    case Errc::ThresholdUndefined: return "ThresholdUndefined";
    case Errc::InadmissiblePartition: return "InadmissiblePartition";
    case Errc::NotSimpleReduction: return "NotSimpleReduction";
    case Errc::Lemma31Failed: return "Lemma31Failed";
    case Errc::CenterNotRoot: return "CenterNotRoot";
    case Errc::ResidualRootOutsideFp: return "ResidualRootOutsideFp";
    case Errc::NonTermination: return "NonTermination";
    case Errc::Schema: return "Schema";
  }
  return "Unknown";
}

std::string to_string(const Rational& q) { return q.get_str(); }

Rational parse_rational(std::string_view text) {
  std::string s(text);
  // Strip blanks and a leading '+', tolerated in hand-written files.
  std::erase_if(s, [](char c) { return c == ' ' || c == '\t'; });
  if (!s.empty() && s.front() == '+') s.erase(s.begin());
  if (s.empty()) throw Error(Errc::Schema, "empty rational");
  for (char c : s) {
    if (!((c >= '0' && c <= '9') || c == '-' || c == '/')) {
      throw Error(Errc::Schema, "not a rational: '" + std::string(text) + "'");
    }
  }
  Rational q;
  if (q.set_str(s, 10) != 0) throw Error(Errc::Schema, "not a rational: '" + std::string(text) + "'");
  if (q.get_den() == 0) throw Error(Errc::Schema, "zero denominator: '" + std::string(text) + "'");
  q.canonicalize();
  return q;
}

long padic_valuation(const Integer& n, long p) {
  if (n == 0) throw Error(Errc::PreconditionViolated, "valuation of zero integer");
  Integer m = abs(n);
  long v = 0;
  const Integer pp = p;
  while (mpz_divisible_p(m.get_mpz_t(), pp.get_mpz_t())) {
    m /= pp;
    ++v;
  }
  return v;
}

long padic_valuation(const Rational& q, long p) {
  return padic_valuation(q.get_num(), p) - padic_valuation(q.get_den(), p);
}

Integer floor(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

long residue_mod(const Rational& q, long p) {
  const Integer pp = p;
  Integer num = q.get_num() % pp;
  Integer den = q.get_den() % pp;
  if (den == 0) throw Error(Errc::NegativeValuation, "residue of " + to_string(q) + " mod " + std::to_string(p));
  Integer inv;
  mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), pp.get_mpz_t());
  Integer r = (num * inv) % pp;
  if (r < 0) r += pp;
  return r.get_si();
}

Rational ratio(long num, long den) {
  if (den == 0) throw Error(Errc::DivisionByZero, "ratio with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

long lcm(long a, long b) { return std::lcm(a, b); }

}  // namespace semistab
