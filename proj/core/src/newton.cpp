#include "semistab/newton.hpp"

#include <algorithm>
#include <nlohmann/json.hpp>

#include "semistab/error.hpp"

namespace semistab {

NewtonPolygon newton_polygon(const PolynomialV& f) {
  if (f.is_zero()) throw Error(Errc::ZeroPolynomial, "Newton polygon of the zero polynomial");
  std::vector<NewtonVertex> pts;
  for (int i = 0; i <= f.degree(); ++i) {
    const Valuation v = val(f.coeffs()[static_cast<std::size_t>(i)]);
    if (!v.is_infinite()) pts.push_back({i, v.value()});
  }
  // Monotone chain, lower hull; pop on non-strict turns so collinear points merge.
  std::vector<NewtonVertex> hull;
  for (const auto& pt : pts) {
    while (hull.size() >= 2) {
      const auto& a = hull[hull.size() - 2];
      const auto& b = hull.back();
      const Rational cross = (b.value - a.value) * (pt.index - a.index) - (pt.value - a.value) * (b.index - a.index);
      if (cross >= 0) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(pt);
  }
  NewtonPolygon np;
  np.vertices = hull;
  for (std::size_t i = 1; i < hull.size(); ++i) {
    const int len = hull[i].index - hull[i - 1].index;
    Rational slope = (hull[i].value - hull[i - 1].value) / Rational(len);
    slope.canonicalize();
    np.segments.push_back({slope, len});
  }
  return np;
}

std::vector<Valuation> root_valuations(const PolynomialV& f) {
  const NewtonPolygon np = newton_polygon(f);
  std::vector<Valuation> out;
  for (int i = 0; i < np.vertices.front().index; ++i) out.push_back(Valuation::infinity());
  for (const auto& s : np.segments)
    for (int i = 0; i < s.length; ++i) out.emplace_back(-s.slope);
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<Rational> min_positive_root_valuation(const PolynomialV& f) {
  const NewtonPolygon np = newton_polygon(f);
  std::optional<Rational> best;
  for (const auto& s : np.segments) {
    const Rational v = -s.slope;
    if (v > 0 && (!best || v < *best)) best = v;
  }
  return best;
}

int integral_root_count(const PolynomialV& f) {
  if (f.is_zero()) throw Error(Errc::ZeroPolynomial, "root count of the zero polynomial");
  const Valuation m = f.content_valuation();
  int last = 0;
  for (int i = 0; i <= f.degree(); ++i)
    if (val(f.coeffs()[static_cast<std::size_t>(i)]) == m) last = i;
  return last;
}

Lemma31Result check_lemma31(const PolynomialV& f) {
  const long p = f.context().p;
  if (!f.is_monic() || f.degree() != p || !f.coeff(0).is_zero()) {
    throw Error(Errc::PreconditionViolated, "expected a monic polynomial of degree p with f(0) = 0, got " + f.str());
  }
  Lemma31Result r;
  for (int i = 0; i <= f.degree(); ++i) {
    const Valuation v = val(f.coeffs()[static_cast<std::size_t>(i)]);
    if (!v.is_infinite() && v.value() < 0) {
      r.bad_coefficient = i;
      return r;
    }
  }
  r.reduction = f.reduction();
  r.integral = (*r.reduction == ResidualPoly::monomial(p, 1, static_cast<int>(p)));
  return r;
}

std::string newton_json(const NewtonPolygon& np) {
  nlohmann::json j;
  j["vertices"] = nlohmann::json::array();
  for (const auto& v : np.vertices) j["vertices"].push_back({v.index, to_string(v.value)});
  j["segments"] = nlohmann::json::array();
  for (const auto& s : np.segments) j["segments"].push_back({{"slope", to_string(s.slope)}, {"len", s.length}});
  return j.dump();
}

}  // namespace semistab
