#include <doctest.h>

#include <algorithm>
#include <set>

#include "semistab/classifier.hpp"
#include "semistab/error.hpp"

using namespace semistab;

namespace {

Rational q(const char* s) { return parse_rational(s); }

RamificationProfile example_profile() {
  RamificationProfile ram;
  ram.p = 5;
  ram.branch = {{"0", {3, 1, 1}}, {"1", {2, 1, 1, 1}}, {"lambda", {2, 1, 1, 1}}};
  return ram;
}

Rational x_edge(const DualGraphPair& g, const std::string& child) { return g.x_edge_to(child)->thickness; }
Rational y_edge(const DualGraphPair& g, const std::string& child) { return g.y_edge_to(child)->thickness; }

/// Groups as unordered pairs of multisets, for comparison with hand-written partitions.
std::multiset<std::pair<std::multiset<int>, std::multiset<int>>> groups_of(const PartitionPair& pp) {
  std::multiset<std::pair<std::multiset<int>, std::multiset<int>>> out;
  for (const auto& g : pp.groups) {
    out.insert({std::multiset<int>(g.part1.begin(), g.part1.end()), std::multiset<int>(g.part2.begin(), g.part2.end())});
  }
  return out;
}

}  // namespace

TEST_SUITE("classifier") {
  TEST_CASE("ordinary branch values") {
    const auto ram = example_profile();
    const DualGraphPair g = classify_ordinary(ram, "0");
    CHECK(g.upstairs.size() == 2);
    CHECK(g.downstairs.size() == 2);
    CHECK(x_edge(g, "C[0]") == q("1/2"));
    CHECK(y_edge(g, "D[0]") == q("5/2"));
    const MapLabel& l = g.x("C[0]").label;
    CHECK(l.kind == MapLabel::Kind::Etale);
    CHECK(l.degree == 5);
    CHECK(l.branch_points == 2);
    CHECK(l.wild_points == 1);
    CHECK(g.x("C").label.kind == MapLabel::Kind::Inseparable);

    RamificationProfile cubic{3, {{"0", {2, 1}}, {"1", {2, 1}}}};
    const DualGraphPair c = classify_ordinary(cubic, "1");
    CHECK(x_edge(c, "C[1]") == 1);
    CHECK(y_edge(c, "D[1]") == 3);

    // A value whose fiber has p points.
    RamificationProfile simple{5, {{"a", {1, 1, 1, 1, 1}}}};
    CHECK(x_edge(classify_ordinary(simple, "a"), "C[a]") == q("1/4"));
  }

  TEST_CASE("good reduction star") {
    const DualGraphPair g = classify_good_reduction(example_profile());
    CHECK(g.upstairs.size() == 4);
    CHECK(g.downstairs.size() == 4);
    CHECK(x_edge(g, "C[0]") == q("1/2"));
    CHECK(x_edge(g, "C[1]") == q("1/3"));
    CHECK(x_edge(g, "C[lambda]") == q("1/3"));
    CHECK(y_edge(g, "D[0]") == q("5/2"));
    CHECK(y_edge(g, "D[1]") == q("5/3"));
    CHECK(y_edge(g, "D[lambda]") == q("5/3"));
    CHECK(check_invariants(g).empty());

    RamificationProfile cubic{3, {{"0", {2, 1}}, {"1", {2, 1}}}};
    const DualGraphPair c = classify_good_reduction(cubic);
    CHECK(x_edge(c, "C[0]") == 1);
    CHECK(y_edge(c, "D[1]") == 3);
  }

  TEST_CASE("thresholds and regimes") {
    const auto ram = example_profile();
    CHECK(tail_threshold(ram, "0", "lambda") == 5);
    CHECK(tail_threshold(ram, "1", "lambda") == q("5/2"));
    CHECK(tail_regime(ram, "0", "lambda", Rational(1)) == Regime::Far);
    CHECK(tail_regime(ram, "0", "lambda", Rational(5)) == Regime::Critical);
    CHECK(tail_regime(ram, "0", "lambda", Rational(7)) == Regime::Near);
    RamificationProfile cubic{3, {{"0", {2, 1}}, {"1", {2, 1}}}};
    try {
      tail_threshold(cubic, "0", "1");
      FAIL("expected ThresholdUndefined");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::ThresholdUndefined);
    }
  }

  TEST_CASE("far tail") {
    const auto models = classify_tail(example_profile(), "0", "lambda", Rational(1));
    REQUIRE(models.size() == 1);
    const DualGraphPair& g = models[0].graph;
    CHECK(models[0].regime == Regime::Far);
    CHECK(x_edge(g, "C'[0,lambda]") == q("1/5"));
    CHECK(y_edge(g, "D'[0,lambda]") == 1);
    CHECK(x_edge(g, "C[0]") == q("2/5"));
    CHECK(x_edge(g, "C[lambda]") == q("4/15"));
    CHECK(y_edge(g, "D[0]") == 2);
    CHECK(g.x("C'[0,lambda]").label.kind == MapLabel::Kind::Inseparable);
    CHECK(check_invariants(g).empty());
    for (const Rational& eps : {Rational(2), Rational(4)}) {
      const DualGraphPair h = classify_tail(example_profile(), "0", "lambda", eps)[0].graph;
      CHECK(x_edge(h, "C[0]") == (5 - eps) / 10);
      CHECK(x_edge(h, "C[lambda]") == (5 - eps) / 15);
    }
  }

  TEST_CASE("critical tail") {
    const auto models = classify_tail(example_profile(), "1", "lambda", q("5/2"));
    REQUIRE(models.size() == 1);
    const DualGraphPair& g = models[0].graph;
    CHECK(models[0].regime == Regime::Critical);
    CHECK(g.upstairs.size() == 2);
    CHECK(x_edge(g, "C'[1,lambda]") == q("1/2"));
    CHECK(y_edge(g, "D'[1,lambda]") == q("5/2"));
    const MapLabel& l = g.x("C'[1,lambda]").label;
    CHECK(l.kind == MapLabel::Kind::Etale);
    CHECK(l.branch_points == 3);
    CHECK(l.wild_points == 1);
  }

  TEST_CASE("near tail lists both partitions") {
    const auto models = classify_tail(example_profile(), "0", "lambda", Rational(7));
    REQUIRE(models.size() == 2);
    std::set<std::vector<Rational>> thicknesses;
    for (const auto& m : models) {
      CHECK(m.regime == Regime::Near);
      REQUIRE(m.partition);
      CHECK(y_edge(m.graph, "D'[0,lambda]") == 5);
      CHECK(y_edge(m.graph, "D1[0,lambda]") == 2);
      std::vector<Rational> t;
      for (const auto& c : m.graph.x_children("C'[0,lambda]")) t.push_back(x_edge(m.graph, c));
      std::sort(t.begin(), t.end());
      thicknesses.insert(t);
      CHECK(check_invariants(m.graph).empty());
    }
    CHECK(thicknesses == std::set<std::vector<Rational>>{{q("1/2"), Rational(2)}, {q("2/3"), Rational(1)}});
  }

  TEST_CASE("exact mode uses the given partition only") {
    const auto all = admissible_partitions({3, 1, 1}, {2, 1, 1, 1}, 5);
    REQUIRE(all.size() == 2);
    const auto one = classify_tail(example_profile(), "0", "lambda", Rational(7), all[1]);
    REQUIRE(one.size() == 1);
    CHECK(one[0].partition == all[1]);
  }

  TEST_CASE("admissible partitions") {
    using Groups = std::multiset<std::pair<std::multiset<int>, std::multiset<int>>>;
    const auto a = admissible_partitions({3, 1, 1}, {2, 1, 1, 1}, 5);
    std::set<Groups> got_a;
    for (const auto& pp : a) got_a.insert(groups_of(pp));
    CHECK(got_a == std::set<Groups>{Groups{{{1, 3}, {1, 1, 2}}, {{1}, {1}}}, Groups{{{3}, {1, 1, 1}}, {{1, 1}, {2}}}});

    const auto b = admissible_partitions({2, 1, 1, 1}, {2, 1, 1, 1}, 5);
    std::set<Groups> got_b;
    for (const auto& pp : b) got_b.insert(groups_of(pp));
    CHECK(got_b == std::set<Groups>{Groups{{{1, 2}, {1, 2}}, {{1}, {1}}, {{1}, {1}}},
                                    Groups{{{2}, {1, 1}}, {{1, 1}, {2}}, {{1}, {1}}}});

    CHECK(admissible_partitions({5}, {5}, 5).empty());
    for (const auto& pp : a) CHECK(is_admissible(pp, {3, 1, 1}, {2, 1, 1, 1}, 5));
    PartitionPair broken = a[0];
    std::swap(broken.groups[0].part1, broken.groups[1].part1);
    CHECK_FALSE(is_admissible(broken, {3, 1, 1}, {2, 1, 1, 1}, 5));
  }

  TEST_CASE("partition text form") {
    PartitionPair pp;
    pp.groups = {{4, {3, 1}, {2, 1, 1}}, {1, {1}, {1}}};
    pp.canonicalize();
    CHECK(pp.str() == "d=(1,4) S1={{1},{3,1}} S2={{1},{2,1,1}}");
  }

  TEST_CASE("assembly grafts tails and ordinary stars") {
    const auto ram = example_profile();
    const auto far = assemble_full_model(ram, {{"1"}, {{"0", "lambda", Rational(1)}}, true});
    REQUIRE(far.size() == 1);
    CHECK(x_edge(far[0].graph, "C[1]") == q("1/3"));
    CHECK(y_edge(far[0].graph, "D[1]") == q("5/3"));
    CHECK(x_edge(far[0].graph, "C'[0,lambda]") == q("1/5"));
    CHECK(check_invariants(far[0].graph).empty());

    const auto good = assemble_full_model(ram, {{"0", "1", "lambda"}, {}, true});
    REQUIRE(good.size() == 1);
    CHECK(isomorphic(good[0].graph, classify_good_reduction(ram)));

    CHECK_THROWS_AS(assemble_full_model(ram, {{"0", "1"}, {}, true}), Error);
    CHECK_THROWS_AS(assemble_full_model(ram, {{"0", "1", "lambda"}, {{"0", "lambda", Rational(1)}}, true}), Error);

    PartitionChoice none;
    CHECK_THROWS_AS(assemble_full_model(ram, {{"1"}, {{"0", "lambda", Rational(7)}}, true}, &none), Error);
  }

  TEST_CASE("far thicknesses shrink to zero at the threshold") {
    const auto ram = example_profile();
    Rational previous = 1;
    for (int n : {10, 100, 1000}) {
      const Rational eps = 5 - ratio(1, n);
      const auto m = classify_tail(ram, "0", "lambda", eps);
      REQUIRE(m[0].regime == Regime::Far);
      const Rational nu = x_edge(m[0].graph, "C[0]");
      CHECK(nu > 0);
      CHECK(nu < previous);
      previous = nu;
    }
    CHECK(classify_tail(ram, "0", "lambda", Rational(5))[0].regime == Regime::Critical);
  }

  TEST_CASE("single branch value") {
    RamificationProfile ram{3, {{"0", {3}}}};
    const DualGraphPair g = single_branch_model(ram);
    CHECK(g.upstairs.size() == 1);
    CHECK(g.downstairs.size() == 1);
    CHECK(check_invariants(g).empty());
  }
}
