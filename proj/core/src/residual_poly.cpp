#include "semistab/residual_poly.hpp"

#include <algorithm>
#include <sstream>

#include "semistab/error.hpp"

namespace semistab {

namespace {

long md(long a, long p) {
  a %= p;
  return a < 0 ? a + p : a;
}

void check_same(const ResidualPoly& a, const ResidualPoly& b) {
  if (a.prime() != b.prime()) throw Error(Errc::ContextMismatch, "residual polynomials over different primes");
}

}  // namespace

long mod_inverse(long a, long p) {
  a = md(a, p);
  if (a == 0) throw Error(Errc::DivisionByZero, "inverse of 0 in F_p");
  long t = 0, nt = 1, r = p, nr = a;
  while (nr != 0) {
    const long q = r / nr;
    t = std::exchange(nt, t - q * nt);
    r = std::exchange(nr, r - q * nr);
  }
  return md(t, p);
}

ResidualPoly::ResidualPoly(long p, std::vector<long> coeffs) : p_(p), c_(std::move(coeffs)) {
  for (auto& c : c_) c = md(c, p_);
  normalize();
}

ResidualPoly ResidualPoly::monomial(long p, long coeff, int degree) {
  std::vector<long> c(static_cast<std::size_t>(degree) + 1, 0);
  c.back() = coeff;
  return ResidualPoly(p, std::move(c));
}

void ResidualPoly::normalize() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

ResidualPoly ResidualPoly::derivative() const {
  if (c_.size() <= 1) return ResidualPoly(p_, {});
  std::vector<long> d(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = md(c_[i] * static_cast<long>(i % static_cast<std::size_t>(p_)), p_);
  return ResidualPoly(p_, std::move(d));
}

ResidualPoly ResidualPoly::monic() const {
  if (c_.empty()) return *this;
  const long inv = mod_inverse(c_.back(), p_);
  std::vector<long> d = c_;
  for (auto& x : d) x = md(x * inv, p_);
  return ResidualPoly(p_, std::move(d));
}

long ResidualPoly::eval(long x) const {
  long acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = md(acc * x + *it, p_);
  return acc;
}

ResidualPoly operator+(const ResidualPoly& a, const ResidualPoly& b) {
  check_same(a, b);
  std::vector<long> r(std::max(a.c_.size(), b.c_.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = a[static_cast<int>(i)] + b[static_cast<int>(i)];
  return ResidualPoly(a.p_, std::move(r));
}

ResidualPoly operator-(const ResidualPoly& a, const ResidualPoly& b) {
  check_same(a, b);
  std::vector<long> r(std::max(a.c_.size(), b.c_.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = a[static_cast<int>(i)] - b[static_cast<int>(i)];
  return ResidualPoly(a.p_, std::move(r));
}

ResidualPoly operator*(const ResidualPoly& a, const ResidualPoly& b) {
  check_same(a, b);
  if (a.is_zero() || b.is_zero()) return ResidualPoly(a.p_, {});
  std::vector<long> r(a.c_.size() + b.c_.size() - 1, 0);
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] = md(r[i + j] + a.c_[i] * b.c_[j], a.p_);
  return ResidualPoly(a.p_, std::move(r));
}

std::string ResidualPoly::str() const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const long c = c_[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    if (!first) os << '+';
    first = false;
    if (i == 0) {
      os << c;
      continue;
    }
    if (c != 1) os << c << '*';
    os << 'X';
    if (i > 1) os << '^' << i;
  }
  return os.str();
}

std::pair<ResidualPoly, ResidualPoly> divmod(const ResidualPoly& a, const ResidualPoly& b) {
  check_same(a, b);
  if (b.is_zero()) throw Error(Errc::DivisionByZero, "division by the zero polynomial over F_p");
  const long p = a.prime();
  std::vector<long> rem = a.coeffs();
  const int db = b.degree();
  if (a.degree() < db) return {ResidualPoly(p, {}), a};
  std::vector<long> quo(static_cast<std::size_t>(a.degree() - db) + 1, 0);
  const long inv = mod_inverse(b.leading(), p);
  for (int i = a.degree(); i >= db; --i) {
    const long c = md(rem[static_cast<std::size_t>(i)] * inv, p);
    quo[static_cast<std::size_t>(i - db)] = c;
    if (c == 0) continue;
    for (int j = 0; j <= db; ++j) {
      auto& slot = rem[static_cast<std::size_t>(i - db + j)];
      slot = md(slot - c * b[j], p);
    }
  }
  rem.resize(static_cast<std::size_t>(db));
  return {ResidualPoly(p, std::move(quo)), ResidualPoly(p, std::move(rem))};
}

ResidualPoly gcd(ResidualPoly a, ResidualPoly b) {
  check_same(a, b);
  while (!b.is_zero()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

ResidualPoly radical(const ResidualPoly& f) {
  const long p = f.prime();
  if (f.degree() <= 0) return ResidualPoly::constant(p, 1);
  const ResidualPoly d = f.derivative();
  if (d.is_zero()) {
    // f(X) = g(X^p) = g(X)^p since Frobenius fixes F_p.
    std::vector<long> root;
    for (int i = 0; i <= f.degree(); i += static_cast<int>(p)) root.push_back(f[i]);
    return radical(ResidualPoly(p, std::move(root)));
  }
  const ResidualPoly g = gcd(f, d);
  // f/g collects every factor whose multiplicity is prime to p; the others
  // survive in g with their full multiplicity.
  const ResidualPoly a = divmod(f, g).first.monic();
  const ResidualPoly rg = radical(g);
  const ResidualPoly common = gcd(a, rg);
  return (a * divmod(rg, common).first).monic();
}

int squarefree_degree(const ResidualPoly& f) {
  if (f.is_zero()) throw Error(Errc::ZeroPolynomial, "squarefree degree of zero");
  return radical(f).degree();
}

std::vector<RootMultiplicity> roots_in_fp(const ResidualPoly& f) {
  if (f.is_zero()) throw Error(Errc::ZeroPolynomial, "roots of the zero polynomial");
  std::vector<RootMultiplicity> out;
  const long p = f.prime();
  for (long w = 0; w < p; ++w) {
    ResidualPoly g = f;
    int m = 0;
    const ResidualPoly lin(p, {-w, 1});
    while (g.degree() >= 1 && g.eval(w) == 0) {
      g = divmod(g, lin).first;
      ++m;
    }
    if (m > 0) out.push_back({w, m});
  }
  return out;
}

std::vector<int> multiplicity_profile(const ResidualPoly& f) {
  if (f.is_zero()) throw Error(Errc::ZeroPolynomial, "multiplicities of the zero polynomial");
  const long p = f.prime();
  std::vector<int> out;
  if (f.degree() <= 0) return out;
  if (squarefree_degree(f) == 1) {
    out.push_back(f.degree());
    return out;
  }
  // Yun's algorithm; valid because every multiplicity is below p here.
  ResidualPoly fm = f.monic();
  const ResidualPoly d = fm.derivative();
  const ResidualPoly a0 = gcd(fm, d);
  ResidualPoly b = divmod(fm, a0).first;
  ResidualPoly c = divmod(d, a0).first;
  ResidualPoly dd = c - b.derivative();
  int i = 1;
  while (b.degree() >= 1) {
    const ResidualPoly a = gcd(b, dd);
    for (int k = 0; k < a.degree(); ++k) out.push_back(i);
    b = divmod(b, a).first;
    c = divmod(dd, a).first;
    dd = c - b.derivative();
    ++i;
    if (i > f.degree() + 1) throw Error(Errc::PreconditionViolated, "multiplicity profile did not converge (multiplicity divisible by p)");
  }
  int total = 0;
  for (int m : out) total += m;
  if (total != f.degree()) throw Error(Errc::PreconditionViolated, "multiplicity divisible by " + std::to_string(p));
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

long resultant(const ResidualPoly& a0, const ResidualPoly& b0) {
  check_same(a0, b0);
  const long p = a0.prime();
  if (a0.is_zero() || b0.is_zero()) return 0;
  ResidualPoly a = a0, b = b0;
  long res = 1;
  // res(a, b) = (-1)^{deg a deg b} res(b, a);  res(a, b) = lc(b)^{deg a - deg r} res(a, r) style recursion
  while (true) {
    const int da = a.degree(), db = b.degree();
    if (db == 0) {
      long t = 1;
      for (int i = 0; i < da; ++i) t = md(t * b.leading(), p);
      return md(res * t, p);
    }
    if (da == 0) {
      long t = 1;
      for (int i = 0; i < db; ++i) t = md(t * a.leading(), p);
      return md(res * t, p);
    }
    if (da < db) {
      if ((da * db) % 2 == 1) res = md(-res, p);
      std::swap(a, b);
      continue;
    }
    // res(a, b) = (-1)^{da db} lc(b)^{da - dr} res(b, r) where r = a mod b
    ResidualPoly r = divmod(a, b).second;
    if (r.is_zero()) return 0;
    const int dr = r.degree();
    long t = 1;
    for (int i = 0; i < da - dr; ++i) t = md(t * b.leading(), p);
    res = md(res * t, p);
    if ((static_cast<long>(da) * db) % 2 == 1) res = md(-res, p);
    a = std::move(b);
    b = std::move(r);
  }
}

ResidualPoly interpolate(long p, const std::vector<long>& xs, const std::vector<long>& ys) {
  ResidualPoly acc(p, {});
  for (std::size_t i = 0; i < xs.size(); ++i) {
    ResidualPoly basis = ResidualPoly::constant(p, 1);
    long denom = 1;
    for (std::size_t j = 0; j < xs.size(); ++j) {
      if (j == i) continue;
      basis = basis * ResidualPoly(p, {-xs[j], 1});
      denom = md(denom * (xs[i] - xs[j]), p);
    }
    const long scale = md(ys[i] * mod_inverse(denom, p), p);
    acc = acc + basis * ResidualPoly::constant(p, scale);
  }
  return acc;
}

int critical_value_count(const ResidualPoly& f) {
  const long p = f.prime();
  const ResidualPoly d = f.derivative();
  if (d.is_zero()) throw Error(Errc::PreconditionViolated, "critical values of an inseparable map");
  const int m = d.degree();
  if (m == 0) return 0;
  // R(T) = Res_X(f(X) - T, f'(X)) has degree m < p in T; sample it on F_p.
  std::vector<long> xs, ys;
  for (long t = 0; t < p; ++t) {
    xs.push_back(t);
    ys.push_back(resultant(f - ResidualPoly::constant(p, t), d));
  }
  const ResidualPoly r = interpolate(p, xs, ys);
  if (r.degree() != m) throw Error(Errc::PreconditionViolated, "critical-value resultant has unexpected degree");
  return squarefree_degree(r);
}

}  // namespace semistab
