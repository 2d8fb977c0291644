// End-to-end acceptance run: one PASS/FAIL line per criterion.

#include <algorithm>
#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>

#include "planted.hpp"
#include "semistab/error.hpp"
#include "semistab/newton.hpp"
#include "semistab/report.hpp"

using namespace semistab;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  std::vector<std::string> problems;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (problems.size() < 5) problems.push_back(what);
    }
  }
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Every graph produced anywhere in this run, for the thickness law.
std::vector<std::pair<std::string, DualGraphPair>> g_all_graphs;

void record(const std::string& origin, const DualGraphPair& g) { g_all_graphs.emplace_back(origin, g); }

RamificationProfile example_profile() {
  RamificationProfile ram;
  ram.p = 5;
  ram.branch = {{"0", {3, 1, 1}}, {"1", {2, 1, 1, 1}}, {"lambda", {2, 1, 1, 1}}};
  return ram;
}

std::vector<Rational> x_child_thicknesses(const DualGraphPair& g, const std::string& parent) {
  std::vector<Rational> out;
  for (const auto& c : g.x_children(parent)) out.push_back(g.x_edge_to(c)->thickness);
  std::sort(out.begin(), out.end());
  return out;
}

using Groups = std::multiset<std::pair<std::multiset<int>, std::multiset<int>>>;

Groups groups_of(const PartitionPair& pp) {
  Groups out;
  for (const auto& g : pp.groups) {
    out.insert({std::multiset<int>(g.part1.begin(), g.part1.end()), std::multiset<int>(g.part2.begin(), g.part2.end())});
  }
  return out;
}

// 1. The explicit degree-5 example.
Outcome criterion_example() {
  Outcome o;
  const auto t0 = Clock::now();
  const auto models = cmd_example8();
  for (const auto& m : models) record("example " + m.id, m.graph);
  o.require(models.size() == 9, "expected nine models, got " + std::to_string(models.size()));
  o.require(example8_json(models) == slurp(std::string(SEMISTAB_GOLDEN_DIR) + "/example8.json"), "JSON differs from golden");
  o.require(example8_dot(models) == slurp(std::string(SEMISTAB_GOLDEN_DIR) + "/example8.dot"), "DOT differs from golden");

  const RamificationProfile ram = example_profile();
  const DualGraphPair good = classify_good_reduction(ram);
  record("good", good);
  o.require(x_child_thicknesses(good, "C") == std::vector<Rational>{ratio(1, 3), ratio(1, 3), ratio(1, 2)},
            "good reduction upstairs thicknesses");
  std::vector<Rational> ys;
  for (const auto& e : good.y_edges) ys.push_back(e.thickness);
  std::sort(ys.begin(), ys.end());
  o.require(ys == std::vector<Rational>{ratio(5, 3), ratio(5, 3), ratio(5, 2)}, "good reduction downstairs thicknesses");

  o.require(tail_threshold(ram, "0", "lambda") == 5, "threshold of {0, lambda}");
  o.require(tail_threshold(ram, "1", "lambda") == ratio(5, 2), "threshold of {1, lambda}");
  for (int eps : {1, 2, 4}) {
    const auto far = classify_tail(ram, "0", "lambda", Rational(eps));
    record("far eps=" + std::to_string(eps), far[0].graph);
    o.require(far[0].regime == Regime::Far, "eps < 5 is far");
    o.require(far[0].graph.x_edge_to("C[0]")->thickness == ratio(5 - eps, 10), "nu_0 = (5 - eps)/10");
    o.require(far[0].graph.x_edge_to("C[lambda]")->thickness == ratio(5 - eps, 15), "nu_lambda = (5 - eps)/15");
  }
  o.require(classify_tail(ram, "0", "lambda", Rational(5))[0].regime == Regime::Critical, "eps = 5 is critical");
  o.require(classify_tail(ram, "1", "lambda", ratio(5, 2))[0].regime == Regime::Critical, "eps = 5/2 is critical");

  // Partitions exactly as printed for the example.
  std::set<Groups> near0, near1;
  for (const auto& m : models) {
    if (!m.partition) continue;
    if (m.id.rfind("tail0", 0) == 0) near0.insert(groups_of(*m.partition));
    if (m.id.rfind("tail1", 0) == 0) near1.insert(groups_of(*m.partition));
  }
  o.require(near0 == std::set<Groups>{Groups{{{1, 3}, {1, 1, 2}}, {{1}, {1}}}, Groups{{{3}, {1, 1, 1}}, {{1, 1}, {2}}}},
            "partitions for {0, lambda}");
  o.require(near1 == std::set<Groups>{Groups{{{1, 2}, {1, 2}}, {{1}, {1}}, {{1}, {1}}},
                                      Groups{{{2}, {1, 1}}, {{1, 1}, {2}}, {{1}, {1}}}},
            "partitions for {1, lambda}");
  const double secs = seconds_since(t0);
  o.require(secs < 1.0, "runtime " + std::to_string(secs) + " s");
  o.detail = "9 models, goldens identical, " + std::to_string(secs) + " s";
  return o;
}

// 2. Integrality of the normalized cover on the fundamental chart.
Outcome criterion_integrality() {
  Outcome o;
  std::mt19937_64 rng(2024);
  int checked = 0;
  int draws = 0;
  while (checked < 200 && draws < 5000) {
    ++draws;
    const long p = draws % 2 ? 3 : 5;
    const long e = 1 + draws % 3;
    std::optional<Normalization> norm;
    try {
      norm = normalize(from_critical_divisor(testing::random_divisor(rng, p, e)));
    } catch (const Error& err) {
      if (err.code() == Errc::NotEnoughBranchPoints || err.code() == Errc::NeedsExtension) continue;
      throw;
    }
    const Normalization& n = *norm;
    // Hypotheses: integral critical points and a unit branch value.
    bool hyp = true;
    for (const auto& pt : n.cover.critical().points()) hyp = hyp && val(pt.x) >= Valuation(Rational(0));
    bool unit = false;
    for (const auto& b : branch_data(n.cover).branch) unit = unit || (!b.lambda.is_zero() && val(b.lambda).value() == 0);
    if (!hyp || !unit) continue;
    ++checked;
    const Lemma31Result r = check_lemma31(n.cover.beta());
    o.require(r.integral && r.reduction && *r.reduction == ResidualPoly::monomial(p, 1, static_cast<int>(p)),
              "not integral: " + n.cover.beta().str());
  }
  o.require(checked == 200, "only " + std::to_string(checked) + " covers met the hypotheses");
  o.detail = std::to_string(checked) + " covers";
  return o;
}

long fiber_sum(const RamificationData& ram) {
  long total = 0;
  for (const auto& b : ram.branch) total += b.fiber_size();
  return total;
}

// 3. Riemann-Hurwitz.
Outcome criterion_riemann_hurwitz() {
  Outcome o;
  long exhaustive = 0;
  for (long p : {2L, 3L, 5L, 7L}) {
    const FieldContext k(p, 1);
    // Every multiset of indices with sum (m - 1) = p - 1 on at most three points.
    std::vector<std::vector<int>> shapes;
    std::function<void(int, int, std::vector<int>&)> gen = [&](int left, int max_m, std::vector<int>& cur) {
      if (left == 0) {
        if (cur.size() <= 3) shapes.push_back(cur);
        return;
      }
      for (int m = std::min(left + 1, max_m); m >= 2; --m) {
        cur.push_back(m);
        gen(left - (m - 1), m, cur);
        cur.pop_back();
      }
    };
    std::vector<int> cur;
    gen(static_cast<int>(p - 1), static_cast<int>(p), cur);
    for (const auto& shape : shapes) {
      // Place the points on every injective choice from {0, 1, 2, 3, p, 2p}.
      const std::vector<long> spots{0, 1, 2, 3, p, 2 * p};
      std::function<void(std::size_t, std::vector<long>&)> place = [&](std::size_t i, std::vector<long>& xs) {
        if (i == shape.size()) {
          std::vector<CriticalPoint> pts;
          for (std::size_t j = 0; j < xs.size(); ++j) pts.push_back({Element(k, Rational(xs[j])), shape[j]});
          const RamificationData ram = branch_data(from_critical_divisor(CriticalDivisor(k, pts)));
          if (ram.r() > 4) return;
          ++exhaustive;
          for (const auto& b : ram.branch) {
            long s = 0;
            for (int e : b.profile) s += e;
            o.require(s == p, "profile does not sum to p");
          }
          o.require(fiber_sum(ram) == (ram.r() - 2) * p + 1, "count fails for p = " + std::to_string(p));
          return;
        }
        for (long x : spots) {
          if (std::find(xs.begin(), xs.end(), x) != xs.end()) continue;
          xs.push_back(x);
          place(i + 1, xs);
          xs.pop_back();
        }
      };
      std::vector<long> xs;
      place(0, xs);
    }
    // Every profile combination in the atlas as well.
    if (p >= 3) {
      for (const auto& row : cmd_atlas(p, 4)) {
        long total = 0;
        for (const auto& pr : row.profiles) total += static_cast<long>(pr.size());
        o.require(total == (row.r - 2) * p + 1, "atlas row violates the count");
      }
    }
  }
  std::mt19937_64 rng(77);
  for (int i = 0; i < 1000; ++i) {
    const long p = std::vector<long>{2, 3, 5, 7}[static_cast<std::size_t>(i % 4)];
    const RamificationData ram = branch_data(from_critical_divisor(testing::random_divisor(rng, p, 1 + i % 3)));
    o.require(fiber_sum(ram) == (ram.r() - 2) * p + 1, "random cover violates the count");
  }
  o.detail = std::to_string(exhaustive) + " exhaustive + 1000 random";
  return o;
}

struct OracleRun {
  Cover cover;
  Report report;
};

std::vector<OracleRun> g_oracle_runs;

// 4. Oracle and closed formulas agree.
Outcome criterion_oracle() {
  Outcome o;
  const auto t0 = Clock::now();
  std::vector<testing::PlantedCover> pool;
  for (auto& c : testing::cubic_family(1, 8)) pool.push_back(c);
  for (auto& c : testing::quintic_family(1, 6, 6, 2)) pool.push_back(c);
  for (auto& c : testing::quintic_family(2, 5, 4, 3)) pool.push_back(c);
  for (auto& c : testing::quintic_four_point_family(1, 2, 4)) pool.push_back(c);
  std::map<std::string, int> agree;
  int disagree = 0;
  int rejected = 0;
  int near_partitions = 0;
  for (const auto& pc : pool) {
    testing::PlantedOutcome out;
    try {
      out = testing::verify_planted(pc.cover);
    } catch (const Error& err) {
      o.require(false, pc.family + ": " + err.what());
      continue;
    }
    if (out.rejected) {
      ++rejected;
      continue;
    }
    const Report& r = *out.report;
    record("oracle " + pc.family, r.verdict->oracle);
    for (const auto& m : r.models) record("classifier " + pc.family, m.graph);
    if (!r.verdict->agree) {
      ++disagree;
      o.require(false, pc.family + " disagrees: " + (r.verdict->diff.empty() ? "" : r.verdict->diff.front()));
      continue;
    }
    ++agree[testing::regime_key(r)];
    for (const auto& t : r.tails) near_partitions += t.regime == Regime::Near && t.partitions.size() == 1;
    g_oracle_runs.push_back({pc.cover, r});
  }
  int total = 0;
  for (const auto& [k, v] : agree) total += v;
  o.require(total >= 50, "only " + std::to_string(total) + " agreements");
  for (const char* regime : {"GOOD", "FAR", "CRITICAL", "NEAR"}) o.require(agree[regime] > 0, std::string("no ") + regime + " instance");
  o.require(near_partitions > 0, "no realized near partition");
  const double secs = seconds_since(t0);
  o.require(secs < 30.0, "runtime " + std::to_string(secs) + " s");
  std::ostringstream d;
  d << total << " AGREE (";
  for (const auto& [k, v] : agree) d << k << " " << v << ", ";
  d << "rejected " << rejected << ", DISAGREE " << disagree << "), " << secs << " s";
  o.detail = d.str();
  return o;
}

// 6. Behaviour at the threshold.
Outcome criterion_trichotomy() {
  Outcome o;
  int pairs = 0;
  for (long p : {3L, 5L, 7L}) {
    for (const auto& row : cmd_atlas(p, 4)) {
      for (const auto& ap : row.pairs) {
        if (ap.u <= 0) continue;
        ++pairs;
        RamificationProfile ram;
        ram.p = p;
        ram.branch = {{"a", row.profiles[ap.i]}, {"b", row.profiles[ap.j]}};
        const Rational threshold(p, ap.u);
        std::map<std::string, Rational> previous;
        for (long n : {10L, 100L, 1000L}) {
          const Rational eps = threshold - ratio(1, n);
          if (eps <= 0) continue;
          const auto m = classify_tail(ram, "a", "b", eps);
          record("trichotomy", m[0].graph);
          o.require(m.size() == 1 && m[0].regime == Regime::Far, "not far below the threshold");
          for (const auto& [name, prof] : std::vector<std::pair<std::string, std::vector<int>>>{{"a", row.profiles[ap.i]},
                                                                                                 {"b", row.profiles[ap.j]}}) {
            const Rational nu = m[0].graph.x_edge_to("C[" + name + "]")->thickness;
            const long nm1 = static_cast<long>(prof.size()) - 1;
            o.require(nu > 0, "nu not positive");
            o.require(nu == ratio(ap.u, n * p * nm1), "nu differs from u / (N p (n - 1))");
            if (previous.count(name)) o.require(nu < previous[name], "nu not decreasing in N");
            previous[name] = nu;
          }
        }
        o.require(classify_tail(ram, "a", "b", threshold)[0].regime == Regime::Critical, "not critical at the threshold");
      }
    }
  }
  o.detail = std::to_string(pairs) + " tail pairs, N = 10, 100, 1000";
  return o;
}

/// Deepest upstairs component whose subtree holds every point of both fibers.
std::string joint_component(const DualGraphPair& g, const std::string& a, const std::string& b) {
  std::function<int(const std::string&)> count = [&](const std::string& node) {
    int n = 0;
    for (const auto& m : g.x(node).marks) n += m.fiber == a || m.fiber == b;
    for (const auto& c : g.x_children(node)) n += count(c);
    return n;
  };
  const int total = count(g.x_root);
  std::string cur = g.x_root;
  while (true) {
    bool moved = false;
    for (const auto& c : g.x_children(cur)) {
      if (count(c) == total) {
        cur = c;
        moved = true;
        break;
      }
    }
    if (!moved) return cur;
  }
}

// 7. Inequality on the first tail blow-up and the valuation identities.
Outcome criterion_traces() {
  Outcome o;
  int tails = 0;
  for (const auto& run : g_oracle_runs) {
    const Report& r = run.report;
    const DualGraphPair& g = r.verdict->oracle;
    const auto xd = testing::x_depths(g);
    const auto yd = testing::y_depths(g);
    RamificationProfile ram;
    ram.p = g.p;
    for (const auto& [name, prof] : r.branch_values) ram.branch.push_back({name, prof});
    // Branch values recomputed from the cover, for v(lambda_a - lambda_b).
    const Normalization nrm = normalize(run.cover);
    std::map<std::string, Element> lambdas;
    for (const auto& b : branch_data(nrm.cover).branch) lambdas.emplace(b.lambda.str(), b.lambda);
    for (const auto& t : r.tails) {
      ++tails;
      const long u = static_cast<long>(ram.find(t.tail.a).profile.size() + ram.find(t.tail.b).profile.size()) - g.p - 1;
      const std::string joint = joint_component(g, t.tail.a, t.tail.b);
      // The thickness added by the recorded stages that reached this component.
      Rational staged = 0;
      for (const auto& s : r.verdict->stages)
        if (s.disc == joint) staged += s.nu;
      const Rational nu = xd.at(joint);
      o.require(staged == g.x_edge_to(joint)->thickness, "stages do not add up to the edge of " + joint);
      const Rational bound(1, u);
      o.require(nu <= bound, "nu exceeds 1/(n1 + n2 - p - 1)");
      o.require((nu == bound) == (t.regime != Regime::Far), "equality case does not match the regime");
      const Rational v_lambda = val(lambdas.at(t.tail.a) - lambdas.at(t.tail.b)).value();
      o.require(v_lambda == t.tail.epsilon, "tail thickness differs from v(lambda)");
      if (t.regime == Regime::Far) o.require(v_lambda == g.p * nu, "v(lambda) != p nu");
      if (t.regime == Regime::Near) {
        const Rational eps0 = yd.at(g.x(joint).image);
        Rational eps1 = -1;
        for (const auto& c : g.x_children(joint)) eps1 = yd.at(g.x(c).image) - eps0;
        o.require(eps0 == ratio(g.p, u), "eps0 differs from the threshold");
        o.require(eps0 + eps1 == v_lambda, "eps0 + eps1 != v(lambda)");
      }
    }
  }
  o.require(tails > 0, "no tails in the oracle runs");
  o.detail = std::to_string(tails) + " tails on " + std::to_string(g_oracle_runs.size()) + " traces";
  return o;
}

// 5. Thickness law on everything produced above.
Outcome criterion_thickness_law() {
  Outcome o;
  for (const auto& [origin, g] : g_all_graphs) {
    for (const auto& v : testing::thickness_law_violations(g)) o.require(false, origin + ": " + v);
    for (const auto& v : check_invariants(g)) o.require(false, origin + ": " + v);
  }
  o.detail = std::to_string(g_all_graphs.size()) + " graphs";
  return o;
}

// 8. Newton polygons with planted roots.
Outcome criterion_newton() {
  Outcome o;
  std::mt19937_64 rng(8);
  for (int i = 0; i < 100; ++i) {
    const long p = i % 2 ? 3 : 5;
    const long e = 1 + i % 4;
    const FieldContext k(p, e);
    std::uniform_int_distribution<int> count(1, 6);
    std::uniform_int_distribution<int> expo(-static_cast<int>(e), static_cast<int>(4 * e));
    std::uniform_int_distribution<long> unit(1, 40);
    PolynomialV f = PolynomialV::constant(Element::one(k));
    std::vector<Valuation> planted;
    const int n = count(rng);
    for (int j = 0; j < n; ++j) {
      long u = unit(rng);
      while (u % p == 0) ++u;
      const int x = expo(rng);
      Element root = Element(k, Rational(u));
      root = x >= 0 ? root * Element::pi(k).pow(static_cast<unsigned long>(x))
                    : root / Element::pi(k).pow(static_cast<unsigned long>(-x));
      f = f * PolynomialV::linear(root);
      planted.emplace_back(ratio(x, e));
    }
    std::sort(planted.begin(), planted.end());
    o.require(root_valuations(f) == planted, "mismatch on " + f.str());
  }
  o.detail = "100 polynomials";
  return o;
}

void print(int id, const std::string& name, const Outcome& o) {
  std::cout << (o.pass ? "PASS" : "FAIL") << "  " << id << ". " << name << " — " << o.detail << "\n";
  for (const auto& p : o.problems) std::cout << "      " << p << "\n";
}

}  // namespace

int main() {
  bool all = true;
  auto run = [&](int id, const std::string& name, const std::function<Outcome()>& f) {
    Outcome o;
    try {
      o = f();
    } catch (const std::exception& ex) {
      o.pass = false;
      o.detail = std::string("exception: ") + ex.what();
    }
    all = all && o.pass;
    return std::make_pair(id, std::make_pair(name, o));
  };
  // The thickness law is checked last so that it sees every graph.
  std::vector<std::pair<int, std::pair<std::string, Outcome>>> results;
  results.push_back(run(1, "degree-5 example goldens", criterion_example));
  results.push_back(run(2, "integrality on the fundamental chart", criterion_integrality));
  results.push_back(run(3, "Riemann-Hurwitz count", criterion_riemann_hurwitz));
  results.push_back(run(4, "oracle agrees with closed formulas", criterion_oracle));
  results.push_back(run(6, "threshold trichotomy", criterion_trichotomy));
  results.push_back(run(7, "tail inequality and valuation identities on traces", criterion_traces));
  results.push_back(run(8, "Newton polygons with planted roots", criterion_newton));
  results.push_back(run(5, "thickness scaling law", criterion_thickness_law));
  std::sort(results.begin(), results.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  for (const auto& [id, rest] : results) print(id, rest.first, rest.second);
  return all ? 0 : 1;
}
