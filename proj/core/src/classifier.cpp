#include "semistab/classifier.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

#include "semistab/error.hpp"

namespace semistab {

const BranchPoint& RamificationProfile::find(const std::string& name) const {
  for (const auto& b : branch)
    if (b.name == name) return b;
  throw Error(Errc::VertexNotFound, "no branch value named " + name);
}

std::string regime_name(Regime r) {
  switch (r) {
    case Regime::Good:
      return "GOOD";
    case Regime::Far:
      return "FAR";
    case Regime::Critical:
      return "CRITICAL";
    case Regime::Near:
      return "NEAR";
  }
  return "?";
}

void PartitionPair::canonicalize() {
  for (auto& g : groups) {
    std::sort(g.part1.begin(), g.part1.end(), std::greater<>());
    std::sort(g.part2.begin(), g.part2.end(), std::greater<>());
  }
  std::sort(groups.begin(), groups.end());
}

std::string PartitionPair::str() const {
  auto parts = [](const std::vector<int>& v) {
    std::string s = "{";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + "}";
  };
  std::string d = "d=(";
  std::string s1 = "S1={";
  std::string s2 = "S2={";
  for (std::size_t i = 0; i < groups.size(); ++i) {
    const char* sep = i ? "," : "";
    d += sep + std::to_string(groups[i].d);
    s1 += sep + parts(groups[i].part1);
    s2 += sep + parts(groups[i].part2);
  }
  return d + ") " + s1 + "} " + s2 + "}";
}

std::string ordinary_component(char side, const std::string& lambda) { return std::string(1, side) + "[" + lambda + "]"; }

std::string tail_component(char side, const std::string& a, const std::string& b) {
  return std::string(1, side) + "'[" + a + "," + b + "]";
}

DualGraphPair root_pair(long p) {
  DualGraphPair g;
  g.p = p;
  g.upstairs.push_back({g.x_root, {MapLabel::Kind::Inseparable, static_cast<int>(p), 0, 0}, g.y_root, {{"inf", static_cast<int>(p)}}});
  g.downstairs.push_back({g.y_root, {"inf"}});
  return g;
}

namespace {

std::vector<FiberMark> fiber_marks(const std::string& name, const std::vector<int>& es) {
  std::vector<FiberMark> out;
  for (int e : es) out.push_back({name, e});
  return out;
}

MapLabel etale(int degree, int branch, int wild) { return {MapLabel::Kind::Etale, degree, branch, wild}; }
MapLabel inseparable(long p) { return {MapLabel::Kind::Inseparable, static_cast<int>(p), 0, 0}; }
// The point at infinity is totally, hence wildly, ramified under a degree-p map.
constexpr int kWildAtInfinity = 1;

void graft_ordinary(DualGraphPair& g, const BranchPoint& b) {
  const long p = g.p;
  if (b.n() < 2) throw Error(Errc::PreconditionViolated, "ordinary value " + b.name + " needs at least two fiber points");
  const Rational t = ratio(1, b.n() - 1);
  const std::string xc = ordinary_component('C', b.name);
  const std::string yc = ordinary_component('D', b.name);
  g.downstairs.push_back({yc, {b.name}});
  g.upstairs.push_back({xc, etale(static_cast<int>(p), 2, kWildAtInfinity), yc, fiber_marks(b.name, b.profile)});
  g.x_edges.push_back({g.x_root, xc, t});
  g.y_edges.push_back({g.y_root, yc, t * p});
}

void graft_tail(DualGraphPair& g, const BranchPoint& b1, const BranchPoint& b2, const Rational& eps, Regime regime,
                const Rational& threshold, const PartitionPair* partition) {
  const long p = g.p;
  const std::string cp = tail_component('C', b1.name, b2.name);
  const std::string dp = tail_component('D', b1.name, b2.name);
  switch (regime) {
    case Regime::Far: {
      const long u = b1.n() + b2.n() - p - 1;
      g.downstairs.push_back({dp, {}});
      g.upstairs.push_back({cp, inseparable(p), dp, {}});
      g.x_edges.push_back({g.x_root, cp, eps / p});
      g.y_edges.push_back({g.y_root, dp, eps});
      for (const BranchPoint* b : {&b1, &b2}) {
        const Rational nu = (Rational(p) - u * eps) / Rational(p * (b->n() - 1));
        const std::string xc = ordinary_component('C', b->name);
        const std::string yc = ordinary_component('D', b->name);
        g.downstairs.push_back({yc, {b->name}});
        g.upstairs.push_back({xc, etale(static_cast<int>(p), 2, kWildAtInfinity), yc, fiber_marks(b->name, b->profile)});
        g.x_edges.push_back({cp, xc, nu});
        g.y_edges.push_back({dp, yc, nu * p});
      }
      break;
    }
    case Regime::Critical: {
      g.downstairs.push_back({dp, {b1.name, b2.name}});
      auto marks = fiber_marks(b1.name, b1.profile);
      for (const auto& m : fiber_marks(b2.name, b2.profile)) marks.push_back(m);
      g.upstairs.push_back({cp, etale(static_cast<int>(p), 3, kWildAtInfinity), dp, marks});
      g.x_edges.push_back({g.x_root, cp, eps / p});
      g.y_edges.push_back({g.y_root, dp, eps});
      break;
    }
    case Regime::Near: {
      const Rational eps0 = threshold;
      const Rational eps1 = eps - eps0;
      const std::string d1 = "D1[" + b1.name + "," + b2.name + "]";
      g.downstairs.push_back({dp, {}});
      g.downstairs.push_back({d1, {b1.name, b2.name}});
      g.upstairs.push_back({cp, etale(static_cast<int>(p), 2, kWildAtInfinity), dp, {}});
      g.x_edges.push_back({g.x_root, cp, eps0 / p});
      g.y_edges.push_back({g.y_root, dp, eps0});
      g.y_edges.push_back({dp, d1, eps1});
      int i = 0;
      for (const auto& grp : partition->groups) {
        ++i;
        const std::string ci = "C" + std::to_string(i) + "[" + b1.name + "," + b2.name + "]";
        const int branch = (grp.d >= 2 ? 1 : 0) + (grp.n1() < grp.d ? 1 : 0) + (grp.n2() < grp.d ? 1 : 0);
        auto marks = fiber_marks(b1.name, grp.part1);
        for (const auto& m : fiber_marks(b2.name, grp.part2)) marks.push_back(m);
        g.upstairs.push_back({ci, etale(grp.d, branch, grp.d % p == 0 ? 1 : 0), d1, marks});
        g.x_edges.push_back({cp, ci, eps1 / grp.d});
      }
      break;
    }
    case Regime::Good:
      throw Error(Errc::PreconditionViolated, "a tail is never in the GOOD regime");
  }
}

}  // namespace

DualGraphPair single_branch_model(const RamificationProfile& ram) {
  if (ram.branch.size() != 1) throw Error(Errc::PreconditionViolated, "expected exactly one finite branch value");
  DualGraphPair g = root_pair(ram.p);
  const BranchPoint& b = ram.branch.front();
  for (const auto& m : fiber_marks(b.name, b.profile)) g.x(g.x_root).marks.push_back(m);
  g.y(g.y_root).marks.push_back(b.name);
  g.canonicalize();
  return g;
}

DualGraphPair classify_ordinary(const RamificationProfile& ram, const std::string& lambda, const BranchLayout* layout) {
  if (layout != nullptr && std::find(layout->ordinary.begin(), layout->ordinary.end(), lambda) == layout->ordinary.end()) {
    throw Error(Errc::NotOrdinary, lambda + " is not an ordinary branch value");
  }
  const BranchPoint* b = nullptr;
  for (const auto& x : ram.branch)
    if (x.name == lambda) b = &x;
  if (b == nullptr) throw Error(Errc::NotOrdinary, lambda + " is not a branch value");
  DualGraphPair g = root_pair(ram.p);
  graft_ordinary(g, *b);
  g.canonicalize();
  return g;
}

DualGraphPair classify_good_reduction(const RamificationProfile& ram, const BranchLayout* layout) {
  if (ram.r() < 3) throw Error(Errc::TooFewBranchPoints, "good reduction model needs r >= 3, have r = " + std::to_string(ram.r()));
  if (layout != nullptr && (!layout->tails.empty() || !layout->simple)) {
    throw Error(Errc::BadReduction, "branch locus does not have good reduction");
  }
  DualGraphPair g = root_pair(ram.p);
  for (const auto& b : ram.branch) graft_ordinary(g, b);
  g.canonicalize();
  return g;
}

Rational tail_threshold(const RamificationProfile& ram, const std::string& a, const std::string& b) {
  const long u = ram.find(a).n() + ram.find(b).n() - ram.p - 1;
  if (u <= 0) {
    throw Error(Errc::ThresholdUndefined, "n1 + n2 - p - 1 = " + std::to_string(u) + " for the tail {" + a + ", " + b + "}");
  }
  return ratio(ram.p, u);
}

Regime tail_regime(const RamificationProfile& ram, const std::string& a, const std::string& b, const Rational& epsilon) {
  const Rational t = tail_threshold(ram, a, b);
  if (epsilon < t) return Regime::Far;
  if (epsilon == t) return Regime::Critical;
  return Regime::Near;
}

std::vector<TailModel> classify_tail(const RamificationProfile& ram, const std::string& a, const std::string& b,
                                     const Rational& epsilon, const std::optional<PartitionPair>& exact) {
  if (a == b || epsilon <= 0) throw Error(Errc::NotSimpleTail, "{" + a + ", " + b + "} with thickness " + to_string(epsilon));
  const BranchPoint& b1 = ram.find(a);
  const BranchPoint& b2 = ram.find(b);
  const Rational t = tail_threshold(ram, a, b);
  const Regime regime = tail_regime(ram, a, b, epsilon);
  std::vector<TailModel> out;
  if (regime != Regime::Near) {
    DualGraphPair g = root_pair(ram.p);
    graft_tail(g, b1, b2, epsilon, regime, t, nullptr);
    g.canonicalize();
    out.push_back({regime, t, std::move(g), std::nullopt});
    return out;
  }
  std::vector<PartitionPair> parts;
  if (exact) {
    PartitionPair pp = *exact;
    pp.canonicalize();
    if (!is_admissible(pp, b1.profile, b2.profile, ram.p)) {
      throw Error(Errc::InadmissiblePartition, pp.str() + " for profiles of " + a + " and " + b);
    }
    parts.push_back(pp);
  } else {
    parts = admissible_partitions(b1.profile, b2.profile, ram.p);
  }
  for (const auto& pp : parts) {
    DualGraphPair g = root_pair(ram.p);
    graft_tail(g, b1, b2, epsilon, regime, t, &pp);
    g.canonicalize();
    out.push_back({regime, t, std::move(g), pp});
  }
  return out;
}

bool is_admissible(const PartitionPair& pp, const std::vector<int>& profile1, const std::vector<int>& profile2, long p) {
  if (pp.s() < 2) return false;
  std::vector<int> all1;
  std::vector<int> all2;
  long total = 0;
  for (const auto& g : pp.groups) {
    const int s1 = std::accumulate(g.part1.begin(), g.part1.end(), 0);
    const int s2 = std::accumulate(g.part2.begin(), g.part2.end(), 0);
    if (s1 != g.d || s2 != g.d || g.n1() + g.n2() != g.d + 1) return false;
    if (g.n1() < 1 || g.n2() < 1 || g.n1() > g.d || g.n2() > g.d) return false;
    total += g.d;
    all1.insert(all1.end(), g.part1.begin(), g.part1.end());
    all2.insert(all2.end(), g.part2.begin(), g.part2.end());
  }
  auto sorted = [](std::vector<int> v) {
    std::sort(v.begin(), v.end());
    return v;
  };
  return total == p && sorted(all1) == sorted(profile1) && sorted(all2) == sorted(profile2);
}

std::vector<PartitionPair> admissible_partitions(const std::vector<int>& profile1, const std::vector<int>& profile2, long p) {
  std::set<PartitionPair> found;
  std::vector<int> left1 = profile1;
  std::vector<int> left2 = profile2;
  std::vector<PartitionGroup> groups;

  // Every group contains the first remaining element of the first profile;
  // subsets are chosen by bitmask over the remaining elements.
  std::function<void(std::vector<int>, std::vector<int>)> rec = [&](std::vector<int> r1, std::vector<int> r2) {
    if (r1.empty() && r2.empty()) {
      if (groups.size() >= 2) {
        PartitionPair pp{groups};
        pp.canonicalize();
        found.insert(pp);
      }
      return;
    }
    if (r1.empty() || r2.empty()) return;
    const std::size_t n1 = r1.size();
    const std::size_t n2 = r2.size();
    for (unsigned m1 = 1; m1 < (1u << n1); m1 += 2) {  // bit 0 always set
      int d = 0;
      std::vector<int> a;
      std::vector<int> rest1;
      for (std::size_t i = 0; i < n1; ++i) {
        if (m1 >> i & 1u) {
          d += r1[i];
          a.push_back(r1[i]);
        } else {
          rest1.push_back(r1[i]);
        }
      }
      for (unsigned m2 = 1; m2 < (1u << n2); ++m2) {
        int d2 = 0;
        std::vector<int> b;
        std::vector<int> rest2;
        for (std::size_t i = 0; i < n2; ++i) {
          if (m2 >> i & 1u) {
            d2 += r2[i];
            b.push_back(r2[i]);
          } else {
            rest2.push_back(r2[i]);
          }
        }
        if (d2 != d || static_cast<int>(a.size() + b.size()) != d + 1) continue;
        groups.push_back({d, a, b});
        rec(rest1, rest2);
        groups.pop_back();
      }
    }
  };
  std::sort(left1.begin(), left1.end(), std::greater<>());
  std::sort(left2.begin(), left2.end(), std::greater<>());
  const long s1 = std::accumulate(left1.begin(), left1.end(), 0L);
  const long s2 = std::accumulate(left2.begin(), left2.end(), 0L);
  if (s1 != p || s2 != p) throw Error(Errc::PreconditionViolated, "profiles must each sum to p");
  rec(left1, left2);
  return {found.begin(), found.end()};
}

std::vector<FullModel> assemble_full_model(const RamificationProfile& ram, const BranchLayout& layout,
                                           const PartitionChoice* exact) {
  if (!layout.simple) throw Error(Errc::NotSimpleReduction, "branch tree has a non-simple tail");
  std::vector<std::string> seen = layout.ordinary;
  for (const auto& t : layout.tails) {
    seen.push_back(t.a);
    seen.push_back(t.b);
  }
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end() || seen.size() != ram.branch.size()) {
    throw Error(Errc::PreconditionViolated, "layout must place every branch value exactly once");
  }
  for (const auto& name : seen) (void)ram.find(name);

  // Per-tail alternatives; the model set is their cartesian product.
  struct Alternative {
    TailOutcome outcome;
  };
  std::vector<std::vector<Alternative>> per_tail;
  for (const auto& t : layout.tails) {
    std::optional<PartitionPair> chosen;
    const Regime regime = tail_regime(ram, t.a, t.b, t.epsilon);
    if (exact != nullptr && regime == Regime::Near) {
      auto it = exact->find({t.a, t.b});
      if (it == exact->end()) throw Error(Errc::PreconditionViolated, "exact mode needs a partition for tail {" + t.a + ", " + t.b + "}");
      chosen = it->second;
    }
    std::vector<Alternative> alts;
    for (auto& m : classify_tail(ram, t.a, t.b, t.epsilon, chosen)) alts.push_back({{t, m.regime, m.threshold, m.partition}});
    per_tail.push_back(std::move(alts));
  }

  std::vector<FullModel> out;
  std::vector<std::size_t> pick(per_tail.size(), 0);
  while (true) {
    bool empty_choice = false;
    for (const auto& alts : per_tail) empty_choice = empty_choice || alts.empty();
    if (empty_choice) break;
    FullModel fm;
    fm.graph = root_pair(ram.p);
    for (const auto& name : layout.ordinary) graft_ordinary(fm.graph, ram.find(name));
    for (std::size_t i = 0; i < per_tail.size(); ++i) {
      const TailOutcome& o = per_tail[i][pick[i]].outcome;
      graft_tail(fm.graph, ram.find(o.tail.a), ram.find(o.tail.b), o.tail.epsilon, o.regime, o.threshold,
                 o.partition ? &*o.partition : nullptr);
      fm.tails.push_back(o);
    }
    fm.graph.canonicalize();
    out.push_back(std::move(fm));
    std::size_t k = 0;
    while (k < pick.size() && ++pick[k] == per_tail[k].size()) pick[k++] = 0;
    if (k == pick.size()) break;
  }
  return out;
}

RamificationProfile profile_of(const RamificationData& ram) {
  RamificationProfile out;
  out.p = ram.p;
  for (const auto& b : ram.branch) out.branch.push_back({b.lambda.str(), b.profile});
  return out;
}

BranchLayout layout_of(const MetricTree& t, const BranchClassification& bc) {
  BranchLayout out;
  out.simple = bc.simple;
  for (std::size_t i : bc.ordinary) out.ordinary.push_back(t.points[i].str());
  for (const auto& tail : bc.tails) out.tails.push_back({t.points[tail.a].str(), t.points[tail.b].str(), tail.epsilon});
  return out;
}

}  // namespace semistab
