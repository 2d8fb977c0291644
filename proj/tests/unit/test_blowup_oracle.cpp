#include <doctest.h>

#include "planted.hpp"
#include "semistab/blowup_oracle.hpp"
#include "semistab/error.hpp"

using namespace semistab;

namespace {

Element el(const FieldContext& k, long x) { return Element(k, Rational(x)); }

/// beta = X^5 - 5X^4 = X^4 (X - 5): critical points 0 (index 4) and 4.
Cover quartic_point_cover() {
  const FieldContext k(5, 1);
  return from_critical_divisor(CriticalDivisor(k, {{el(k, 0), 4}, {el(k, 4), 2}}));
}

Cover cover_of(long p, long e, std::vector<std::pair<long, int>> pts) {
  const FieldContext k(p, e);
  std::vector<CriticalPoint> cps;
  for (auto [x, m] : pts) cps.push_back({el(k, x), m});
  return from_critical_divisor(CriticalDivisor(k, std::move(cps)));
}

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::Schema;
}

}  // namespace

TEST_SUITE("blowup_oracle") {
  TEST_CASE("fundamental model") {
    const Cover c = quartic_point_cover();
    CHECK(c.beta() == PolynomialV::from_rationals(c.context(), {0, 0, 0, 0, -5, 1}));
    const ModelState s = fundamental_model(c);
    CHECK(s.radius == 0);
    REQUIRE(s.fibers.size() == 2);
    CHECK(s.fibers[0].name == "0");
    CHECK(s.fibers[1].name == "-256");

    const FieldContext k(5, 1);
    CHECK_NOTHROW(fundamental_model(from_critical_divisor(CriticalDivisor(k, {{el(k, 0), 5}}))));

    const Cover bad(PolynomialV::x(k).pow(5) + PolynomialV::x(k), CriticalDivisor(k, {{el(k, 0), 5}}));
    CHECK(code_of([&] { fundamental_model(bad); }) == Errc::Lemma31Failed);
    CHECK(code_of([&] { fundamental_model(c, {"7"}); }) == Errc::VertexNotFound);
  }

  TEST_CASE("one blow-up separates the fiber over 0") {
    const ModelState s = fundamental_model(quartic_point_cover(), {"0"});
    CHECK(separation_status(s, "0").count == 1);
    CHECK_FALSE(separation_status(s, "0").separated);
    CHECK(next_thickness(s, 0) == Rational(1));
    const ModelState t = blow_up(s, 0, Rational(1));
    CHECK(t.radius == 1);
    const SeparationStatus st = separation_status(t, "0");
    CHECK(st.separated);
    CHECK(st.count == 2);
    CHECK(code_of([&] { separation_status(t, "1"); }) == Errc::VertexNotFound);
  }

  TEST_CASE("blow-up preconditions") {
    const ModelState s = fundamental_model(quartic_point_cover(), {"0"});
    CHECK(code_of([&] { blow_up(s, 0, ratio(1, 3)); }) == Errc::NotRepresentable);
    CHECK(code_of([&] { blow_up(s, 2, Rational(1)); }) == Errc::CenterNotRoot);
    try {
      blow_up(fundamental_model(quartic_point_cover().lifted(2), {"0"}), 0, ratio(1, 5));
      FAIL("expected NotRepresentable");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::NotRepresentable);
      REQUIRE(e.required_e());
      CHECK(*e.required_e() == 10);
    }
  }

  TEST_CASE("separation counts from residual squarefree degree") {
    const Cover c = cover_of(5, 1, {{0, 3}, {1, 2}, {2, 2}});
    const ModelState s = fundamental_model(c);
    for (const auto& f : s.fibers) {
      const SeparationStatus st = separation_status(s, f.name);
      CHECK(st.count == 1);
      CHECK_FALSE(st.separated);
    }
  }

  TEST_CASE("oracle agrees with the closed formulas on planted covers") {
    const Cover c = cover_of(3, 1, {{0, 2}, {1, 2}});
    const OracleResult r = run_oracle(c);
    CHECK(check_invariants(r.graph).empty());
    RamificationProfile ram{3, {{"0", {2, 1}}, {"-1/2", {2, 1}}}};
    CHECK(isomorphic(r.graph, classify_good_reduction(ram)));
    CHECK_FALSE(r.stages.empty());
    CHECK(stage_json(r.stages.front()).find("\"nu\":\"1\"") != std::string::npos);

    for (const auto& [pts, e] : std::vector<std::pair<std::vector<std::pair<long, int>>, long>>{
             {{{0, 3}, {5, 2}, {1, 2}}, 3},    // critical tail
             {{{0, 3}, {1, 2}, {25, 2}}, 3},   // near tail
             {{{0, 3}, {1, 2}, {2, 2}}, 6}}) {  // good reduction
      const testing::PlantedOutcome o = testing::verify_planted(cover_of(5, 1, pts));
      REQUIRE_FALSE(o.rejected);
      CHECK(o.report->verdict->agree);
      CHECK(o.report->e_used == e);
    }
  }

  TEST_CASE("separating a single pair") {
    const Cover c = cover_of(3, 1, {{0, 2}, {1, 2}});
    const DualGraphPair g = separate_fibers(c, "0", "-1/2");
    CHECK(g.upstairs.size() == 3);
    CHECK(g.downstairs.size() == 3);
  }

  TEST_CASE("realized partitions of a near tail") {
    const testing::PlantedOutcome o = testing::verify_planted(cover_of(5, 1, {{0, 3}, {1, 2}, {25, 2}}));
    REQUIRE_FALSE(o.rejected);
    REQUIRE(o.report->tails.size() == 1);
    CHECK(o.report->tails[0].regime == Regime::Near);
    REQUIRE(o.report->tails[0].partitions.size() == 1);
    const PartitionPair& pp = o.report->tails[0].partitions[0];
    CHECK((is_admissible(pp, {3, 1, 1}, {2, 1, 1, 1}, 5) || is_admissible(pp, {2, 1, 1, 1}, {3, 1, 1}, 5)));
  }

  TEST_CASE("residual roots outside the prime field are rejected") {
    const testing::PlantedOutcome o = testing::verify_planted(cover_of(5, 1, {{0, 3}, {6, 2}, {1, 2}}));
    CHECK(o.rejected);
    CHECK(o.reason.find("ResidualRootOutsideFp") != std::string::npos);
  }

  TEST_CASE("stage limit") {
    OracleOptions opts;
    opts.max_stages = 0;
    CHECK(code_of([&] { run_oracle(cover_of(3, 1, {{0, 2}, {1, 2}}), opts); }) == Errc::NonTermination);
  }
}
