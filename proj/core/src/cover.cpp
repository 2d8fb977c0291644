#include "semistab/cover.hpp"

#include <algorithm>

#include "semistab/error.hpp"
#include "semistab/newton.hpp"

namespace semistab {

CriticalDivisor::CriticalDivisor(const FieldContext& ctx, std::vector<CriticalPoint> points)
    : ctx_(ctx), points_(std::move(points)) {
  long total = 0;
  for (std::size_t i = 0; i < points_.size(); ++i) {
    const auto& pt = points_[i];
    if (!(pt.x.context() == ctx_)) throw Error(Errc::ContextMismatch, "critical point from a different field");
    if (pt.m < 2 || pt.m > ctx_.p) {
      throw Error(Errc::InvalidDivisor, "ramification index " + std::to_string(pt.m) + " outside [2, p]");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (points_[j].x == pt.x) throw Error(Errc::InvalidDivisor, "repeated critical point " + pt.x.str());
    }
    total += pt.m - 1;
  }
  if (total != ctx_.p - 1) {
    throw Error(Errc::InvalidDivisor,
                "sum of (m - 1) is " + std::to_string(total) + ", expected p - 1 = " + std::to_string(ctx_.p - 1));
  }
}

Cover::Cover(PolynomialV beta, CriticalDivisor critical) : beta_(std::move(beta)), critical_(std::move(critical)) {
  const long p = beta_.context().p;
  if (!beta_.is_monic() || beta_.degree() != p || !beta_.coeff(0).is_zero()) {
    throw Error(Errc::PreconditionViolated, "cover must be monic of degree p with beta(0) = 0");
  }
}

Cover Cover::lifted(long k) const {
  const FieldContext big = context().extended(k);
  std::vector<Element> c;
  for (const auto& x : beta_.coeffs()) c.push_back(x.lift_to(big));
  std::vector<CriticalPoint> pts;
  for (const auto& pt : critical_.points()) pts.push_back({pt.x.lift_to(big), pt.m});
  return Cover(PolynomialV(big, std::move(c)), CriticalDivisor(big, std::move(pts)));
}

const BranchValue* RamificationData::find(const Element& lambda) const {
  for (const auto& b : branch)
    if (b.lambda == lambda) return &b;
  return nullptr;
}

namespace {

PolynomialV derivative_from_divisor(const CriticalDivisor& d) {
  const FieldContext& ctx = d.context();
  PolynomialV prod = PolynomialV::constant(Element(ctx, Rational(ctx.p)));
  for (const auto& pt : d.points()) prod = prod * PolynomialV::linear(pt.x).pow(static_cast<unsigned>(pt.m - 1));
  return prod;
}

}  // namespace

Cover from_critical_divisor(const CriticalDivisor& d) {
  return Cover(derivative_from_divisor(d).antiderivative(), d);
}

Cover cover_from_coefficients(PolynomialV beta, const CriticalDivisor& d) {
  if (!(beta.derivative() == derivative_from_divisor(d))) {
    throw Error(Errc::InvalidDivisor, "beta' does not match p * prod (X - x)^(m-1)");
  }
  return Cover(std::move(beta), d);
}

RamificationData branch_data(const Cover& c) {
  RamificationData ram;
  ram.p = c.p();
  for (const auto& pt : c.critical().points()) {
    const Element lambda = c.beta()(pt.x);
    auto it = std::find_if(ram.branch.begin(), ram.branch.end(), [&](const BranchValue& b) { return b.lambda == lambda; });
    if (it == ram.branch.end()) {
      ram.branch.push_back({lambda, {}, {}});
      it = std::prev(ram.branch.end());
    }
    it->ramified.push_back(pt);
  }
  for (auto& b : ram.branch) {
    int used = 0;
    for (const auto& pt : b.ramified) {
      b.profile.push_back(pt.m);
      used += pt.m;
    }
    if (used > c.p()) throw Error(Errc::RHViolation, "fiber over " + b.lambda.str() + " exceeds degree p");
    for (int i = used; i < c.p(); ++i) b.profile.push_back(1);
    std::sort(b.profile.begin(), b.profile.end(), std::greater<>());
  }
  if (!riemann_hurwitz_holds(ram)) throw Error(Errc::RHViolation, "Riemann-Hurwitz count fails");
  return ram;
}

bool riemann_hurwitz_holds(const RamificationData& ram) {
  long total = 0;
  for (const auto& b : ram.branch) {
    long sum = 0;
    for (int e : b.profile) sum += e;
    if (sum != ram.p) return false;
    total += b.fiber_size();
  }
  return total == (ram.r() - 2) * ram.p + 1;
}

PolynomialV fiber_radical(const Cover& c, const BranchValue& b) {
  PolynomialV f = c.beta() - PolynomialV::constant(b.lambda);
  for (const auto& pt : b.ramified) f = f.divided_by_root(pt.x, pt.m - 1);
  return f;
}

Normalization normalize(const Cover& c) {
  const FieldContext& ctx = c.context();
  const long p = c.p();
  const RamificationData ram = branch_data(c);
  if (ram.branch.size() < 2) {
    throw Error(Errc::NotEnoughBranchPoints, "need at least two finite branch values, have " + std::to_string(ram.branch.size()));
  }
  // Translate so that a ramified point sits at 0 and its branch value is 0.
  Element shift = Element::zero(ctx);
  if (ram.find(Element::zero(ctx)) == nullptr) shift = c.critical().points().front().x;
  const Element base = c.beta()(shift);

  std::optional<Rational> min_val;
  for (const auto& b : ram.branch) {
    const Element moved = b.lambda - base;
    if (moved.is_zero()) continue;
    const Rational v = val(moved).value();
    if (!min_val || v < *min_val) min_val = v;
  }
  const Rational scale_val = *min_val / Rational(p);
  if (!representable(scale_val, ctx)) {
    throw Error(Errc::NeedsExtension,
                "rescaling needs an element of valuation " + to_string(scale_val) + "; enlarge e to " +
                    std::to_string(required_ramification(scale_val, ctx)),
                required_ramification(scale_val, ctx));
  }
  const Element scale = uniformizer_power(scale_val, ctx);
  const Element scale_inv_p = scale.pow(static_cast<unsigned long>(p)).inverse();

  PolynomialV beta = (c.beta().shifted(shift) - PolynomialV::constant(base)).scaled(scale) * scale_inv_p;
  std::vector<CriticalPoint> pts;
  const Element scale_inv = scale.inverse();
  for (const auto& pt : c.critical().points()) pts.push_back({(pt.x - shift) * scale_inv, pt.m});
  Cover out(std::move(beta), CriticalDivisor(ctx, std::move(pts)));

  bool full = false;
  for (const auto& b : branch_data(out).branch) full = full || b.lambda == Element::one(ctx);
  return {std::move(out), {shift, scale}, full};
}

}  // namespace semistab
