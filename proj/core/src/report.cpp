#include "semistab/report.hpp"

#include <algorithm>
#include <functional>
#include <nlohmann/json.hpp>
#include <numeric>
#include <set>
#include <sstream>

#include "semistab/error.hpp"
#include "semistab/newton.hpp"

namespace semistab {

using nlohmann::json;

namespace {

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& ex) {
    throw Error(Errc::Schema, std::string("invalid JSON: ") + ex.what());
  }
}

template <typename F>
auto schema_guard(const std::string& what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const json::exception& ex) {
    throw Error(Errc::Schema, what + ": " + ex.what());
  }
}

long get_prime(const json& j) {
  const long p = j.at("p").get<long>();
  if (!is_prime(p)) throw Error(Errc::Schema, "p = " + std::to_string(p) + " is not prime");
  return p;
}

Element parse_point(const FieldContext& ctx, const json& x) {
  if (x.is_string()) return Element(ctx, parse_rational(x.get<std::string>()));
  if (x.is_array()) {
    const auto coeffs = x.get<std::vector<std::string>>();
    return element_from_coeffs(ctx, coeffs);
  }
  throw Error(Errc::Schema, "critical point must be a rational string or a list of coefficient strings");
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

void check_profiles(const RamificationProfile& ram) {
  std::set<std::string> names;
  for (const auto& b : ram.branch) {
    if (!names.insert(b.name).second) throw Error(Errc::Schema, "repeated branch value name " + b.name);
    if (b.profile.empty() || std::any_of(b.profile.begin(), b.profile.end(), [](int e) { return e < 1; })) {
      throw Error(Errc::Schema, "profile of " + b.name + " must list positive ramification indices");
    }
    if (std::accumulate(b.profile.begin(), b.profile.end(), 0L) != ram.p) {
      throw Error(Errc::RHViolation, "profile of " + b.name + " does not sum to p");
    }
    if (b.n() == ram.p) throw Error(Errc::Schema, b.name + " is not a branch value (fiber of size p)");
  }
  long total = 0;
  for (const auto& b : ram.branch) total += b.n();
  if (total != (ram.r() - 2) * ram.p + 1) {
    throw Error(Errc::RHViolation, "fiber sizes sum to " + std::to_string(total) + ", Riemann-Hurwitz needs " +
                                       std::to_string((ram.r() - 2) * ram.p + 1));
  }
}

BranchLayout layout_from_tails(const RamificationProfile& ram, const std::vector<TailSpec>& tails) {
  BranchLayout layout;
  layout.tails = tails;
  std::set<std::string> used;
  for (const auto& t : tails) {
    for (const auto& n : {t.a, t.b}) {
      (void)ram.find(n);
      if (!used.insert(n).second) throw Error(Errc::Schema, n + " appears in two tails");
    }
    if (t.epsilon <= 0) throw Error(Errc::Schema, "tail thickness must be positive");
  }
  for (const auto& b : ram.branch)
    if (!used.count(b.name)) layout.ordinary.push_back(b.name);
  return layout;
}

/// Everything the classifier needs, derived from either input mode.
struct Prepared {
  RamificationProfile profile;
  BranchLayout layout;
  std::optional<Cover> normalized;
  std::string tree_dot;
  std::vector<std::string> newton;
};

Prepared prepare(const InstanceSpec& spec, const std::optional<Cover>& cover) {
  Prepared out;
  if (spec.mode == InstanceSpec::Mode::Formula) {
    out.profile = spec.profile;
    check_profiles(out.profile);
    out.layout = layout_from_tails(out.profile, spec.tails);
    return out;
  }
  const Normalization nm = normalize(*cover);
  const RamificationData ram = branch_data(nm.cover);
  out.profile = profile_of(ram);
  for (const auto& b : ram.branch) {
    json j;
    j["lambda"] = b.lambda.str();
    j["newton"] = json::parse(newton_json(newton_polygon(nm.cover.beta() - PolynomialV::constant(b.lambda))));
    out.newton.push_back(j.dump());
  }
  if (ram.branch.size() >= 2) {
    std::vector<Element> S;
    for (const auto& b : ram.branch) S.push_back(b.lambda);
    const MetricTree t = build_branch_tree(S);
    const BranchClassification bc = classify_points(t);
    out.tree_dot = branch_tree_dot(t);
    if (!bc.simple) {
      std::vector<std::string> msgs;
      for (int v : bc.offending) {
        std::vector<std::string> pts;
        std::function<void(int)> collect = [&](int u) {
          for (std::size_t m : t.vertices[static_cast<std::size_t>(u)].marked) pts.push_back(t.points[m].str());
          for (int c : t.vertices[static_cast<std::size_t>(u)].children) collect(c);
        };
        collect(v);
        msgs.push_back("{" + join(pts, ", ") + "} at thickness " + to_string(t.vertices[static_cast<std::size_t>(v)].thickness));
      }
      throw Error(Errc::NotSimpleReduction, "offending cluster " + join(msgs, "; "));
    }
    out.layout = layout_of(t, bc);
  }
  out.normalized = nm.cover;
  return out;
}

std::vector<FullModel> models_for(const Prepared& prep, const PartitionChoice* exact) {
  if (prep.profile.branch.size() == 1) return {FullModel{single_branch_model(prep.profile), {}}};
  return assemble_full_model(prep.profile, prep.layout, exact);
}

void fill_common(Report& rep, const InstanceSpec& spec, const Prepared& prep) {
  rep.mode = spec.mode == InstanceSpec::Mode::Exact ? "exact" : "formula";
  rep.input = spec.echo;
  for (const auto& b : prep.profile.branch) rep.branch_values.push_back({b.name, b.profile});
  rep.branch_tree_dot = prep.tree_dot;
  rep.newton = prep.newton;
}

std::string regime_summary(const std::vector<TailReport>& tails) {
  if (tails.empty()) return "GOOD";
  std::vector<std::string> parts;
  for (const auto& t : tails) parts.push_back(regime_name(t.regime));
  return join(parts, ",");
}

}  // namespace

InstanceSpec parse_cover_spec(const std::string& json_text) {
  const json j = parse_json(json_text);
  return schema_guard("cover instance", [&] {
    InstanceSpec spec;
    spec.mode = InstanceSpec::Mode::Exact;
    spec.p = get_prime(j);
    spec.e = j.value("e", 1L);
    if (spec.e < 1) throw Error(Errc::Schema, "e must be positive");
    const FieldContext ctx(spec.p, spec.e);
    std::vector<CriticalPoint> pts;
    for (const auto& c : j.at("critical")) pts.push_back({parse_point(ctx, c.at("x")), c.at("m").get<int>()});
    spec.cover = from_critical_divisor(CriticalDivisor(ctx, std::move(pts)));
    spec.echo = j.dump();
    return spec;
  });
}

InstanceSpec parse_profile_spec(const std::string& json_text) {
  const json j = parse_json(json_text);
  return schema_guard("profile instance", [&] {
    InstanceSpec spec;
    spec.mode = InstanceSpec::Mode::Formula;
    spec.p = get_prime(j);
    spec.profile.p = spec.p;
    for (const auto& b : j.at("branch")) {
      BranchPoint bp{b.at("name").get<std::string>(), b.at("profile").get<std::vector<int>>()};
      std::sort(bp.profile.begin(), bp.profile.end(), std::greater<>());
      spec.profile.branch.push_back(std::move(bp));
    }
    if (j.contains("tails")) {
      for (const auto& t : j.at("tails")) {
        const auto pair = t.at("pair").get<std::vector<std::string>>();
        if (pair.size() != 2) throw Error(Errc::Schema, "a tail pair has exactly two names");
        spec.tails.push_back({pair[0], pair[1], parse_rational(t.at("epsilon").get<std::string>())});
      }
    }
    spec.echo = j.dump();
    return spec;
  });
}

void apply_pair_override(InstanceSpec& spec, const std::string& pair, const std::optional<std::string>& epsilon) {
  const auto comma = pair.find(',');
  if (comma == std::string::npos) throw Error(Errc::Schema, "--pair expects two names separated by a comma");
  const std::string a = pair.substr(0, comma);
  const std::string b = pair.substr(comma + 1);
  spec.pair = std::make_pair(a, b);
  if (spec.mode == InstanceSpec::Mode::Exact) {
    if (epsilon) throw Error(Errc::Schema, "--epsilon is a formula-mode flag; exact mode reads thicknesses from the cover");
    return;
  }
  if (!epsilon) throw Error(Errc::Schema, "--pair in formula mode needs --epsilon");
  std::erase_if(spec.tails, [&](const TailSpec& t) { return t.a == a || t.b == a || t.a == b || t.b == b; });
  spec.tails.push_back({a, b, parse_rational(*epsilon)});
}

int exit_code_for(Errc code) {
  switch (code) {
    case Errc::NotSimpleReduction:
      return 2;
    case Errc::Schema:
    case Errc::InvalidDivisor:
    case Errc::RHViolation:
    case Errc::ContextMismatch:
    case Errc::NotEnoughBranchPoints:
    case Errc::VertexNotFound:
    case Errc::NotSimpleTail:
    case Errc::InadmissiblePartition:
      return 3;
    default:
      return 4;
  }
}

std::string advice_for(const Error& err) {
  if (err.required_e()) return "enlarge e to " + std::to_string(*err.required_e());
  switch (err.code()) {
    case Errc::ResidualRootOutsideFp:
      return "choose an instance whose coalescing residual roots lie in the prime field";
    case Errc::NonTermination:
      return "the blow-up recursion exceeded its stage limit";
    case Errc::NotSimpleReduction:
      return "only simple reduction is classified";
    default:
      return "";
  }
}

Report cmd_classify(const InstanceSpec& spec) {
  const Prepared prep = prepare(spec, spec.cover);
  Report rep;
  rep.command = "classify";
  rep.e_used = spec.e;
  fill_common(rep, spec, prep);

  std::vector<TailSpec> tails = prep.layout.tails;
  if (spec.pair) {
    const auto& [a, b] = *spec.pair;
    auto it = std::find_if(tails.begin(), tails.end(), [&](const TailSpec& t) {
      return (t.a == a && t.b == b) || (t.a == b && t.b == a);
    });
    if (it == tails.end()) throw Error(Errc::NotSimpleTail, "{" + a + ", " + b + "} is not a tail of the branch tree");
    const TailSpec t = *it;
    tails = {t};
    for (auto& m : classify_tail(prep.profile, t.a, t.b, t.epsilon)) {
      rep.models.push_back({m.graph, {{t, m.regime, m.threshold, m.partition}}});
    }
  } else {
    rep.models = models_for(prep, nullptr);
  }
  for (const auto& t : tails) {
    TailReport tr{t, tail_regime(prep.profile, t.a, t.b, t.epsilon), tail_threshold(prep.profile, t.a, t.b), {}};
    if (tr.regime == Regime::Near) {
      tr.partitions = admissible_partitions(prep.profile.find(t.a).profile, prep.profile.find(t.b).profile, prep.profile.p);
    }
    rep.tails.push_back(std::move(tr));
  }
  rep.regime = regime_summary(rep.tails);
  return rep;
}

Report cmd_verify(const InstanceSpec& spec, const VerifyOptions& opts) {
  if (spec.mode != InstanceSpec::Mode::Exact || !spec.cover) {
    throw Error(Errc::Schema, "verify needs an exact-mode instance (--cover)");
  }
  Cover cover = *spec.cover;
  while (true) {
    try {
      const Prepared prep = prepare(spec, cover);
      const OracleResult oracle = run_oracle(*prep.normalized);
      Report rep;
      rep.command = "verify";
      rep.e_used = cover.context().e;
      fill_common(rep, spec, prep);

      Verdict v;
      v.oracle = oracle.graph;
      v.stages = oracle.stages;
      const PartitionChoice realized = realized_partitions(oracle.graph, prep.layout);
      try {
        rep.models = models_for(prep, &realized);
      } catch (const Error& err) {
        if (err.code() != Errc::PreconditionViolated && err.code() != Errc::InadmissiblePartition) throw;
        v.diff.push_back(std::string("oracle does not realize an admissible partition: ") + err.what());
      }
      for (const auto& t : prep.layout.tails) {
        TailReport tr{t, tail_regime(prep.profile, t.a, t.b, t.epsilon), tail_threshold(prep.profile, t.a, t.b), {}};
        if (auto it = realized.find({t.a, t.b}); it != realized.end() && tr.regime == Regime::Near) tr.partitions = {it->second};
        rep.tails.push_back(std::move(tr));
      }
      rep.regime = regime_summary(rep.tails);
      if (!rep.models.empty()) {
        v.expected = rep.models.front().graph;
        if (opts.tamper) {
          opts.tamper(v.expected);
          rep.models.front().graph = v.expected;
        }
        for (const auto& d : structural_diff(v.oracle, v.expected)) v.diff.push_back(d);
      }
      for (const auto& s : check_invariants(v.oracle)) v.invariant_violations.push_back("oracle: " + s);
      for (const auto& s : check_invariants(v.expected)) v.invariant_violations.push_back("classifier: " + s);
      v.agree = v.diff.empty() && v.invariant_violations.empty();
      rep.verdict = std::move(v);
      return rep;
    } catch (const Error& err) {
      if (!opts.auto_extend || !err.required_e() || *err.required_e() > opts.max_e) throw;
      cover = cover.lifted(*err.required_e() / cover.context().e);
    }
  }
}

std::vector<AtlasRow> cmd_atlas(long p, int r_max) {
  // Ramified fiber profiles: partitions of p with fewer than p parts.
  std::vector<std::vector<int>> parts;
  std::function<void(int, int, std::vector<int>&)> gen = [&](int left, int max_part, std::vector<int>& cur) {
    if (left == 0) {
      if (static_cast<long>(cur.size()) < p) parts.push_back(cur);
      return;
    }
    for (int k = std::min(left, max_part); k >= 1; --k) {
      cur.push_back(k);
      gen(left - k, k, cur);
      cur.pop_back();
    }
  };
  std::vector<int> cur;
  gen(static_cast<int>(p), static_cast<int>(p), cur);
  std::sort(parts.begin(), parts.end());

  std::vector<AtlasRow> rows;
  for (int r = 2; r <= r_max; ++r) {
    const long want = (r - 2) * p + 1;
    std::vector<std::size_t> idx;
    std::function<void(std::size_t, long)> choose = [&](std::size_t from, long sum) {
      if (static_cast<int>(idx.size()) == r - 1) {
        if (sum != want) return;
        AtlasRow row;
        row.r = r;
        for (std::size_t i : idx) row.profiles.push_back(parts[i]);
        for (std::size_t a = 0; a < row.profiles.size(); ++a) {
          for (std::size_t b = a + 1; b < row.profiles.size(); ++b) {
            AtlasPair ap{a, b, std::nullopt, 0, {}};
            ap.u = static_cast<long>(row.profiles[a].size() + row.profiles[b].size()) - p - 1;
            if (ap.u > 0) {
              ap.threshold = ratio(p, ap.u);
              ap.partitions = admissible_partitions(row.profiles[a], row.profiles[b], p);
            }
            row.pairs.push_back(std::move(ap));
          }
        }
        rows.push_back(std::move(row));
        return;
      }
      for (std::size_t i = from; i < parts.size(); ++i) {
        idx.push_back(i);
        choose(i, sum + static_cast<long>(parts[i].size()));
        idx.pop_back();
      }
    };
    choose(0, 0);
  }
  return rows;
}

namespace {

std::string profile_str(const std::vector<int>& v) {
  std::vector<std::string> s;
  for (int x : v) s.push_back(std::to_string(x));
  return "(" + join(s, ",") + ")";
}

/// (p - u*eps) / (p (n - 1)) as text.
std::string nu_formula(long p, long u, std::size_t n) {
  const std::string num = std::to_string(p) + "-" + (u == 1 ? std::string() : std::to_string(u)) + "eps";
  return "(" + num + ")/" + std::to_string(p * static_cast<long>(n - 1));
}

}  // namespace

std::string atlas_markdown(long p, const std::vector<AtlasRow>& rows) {
  std::ostringstream os;
  os << "# Reduction-type atlas, p = " << p << "\n\n";
  os << "| r | profiles | n | pair | u | threshold | FAR: C-C' | FAR: nu_i, nu_j | NEAR partitions |\n";
  os << "|---|---|---|---|---|---|---|---|---|\n";
  for (const auto& row : rows) {
    std::vector<std::string> prof;
    std::vector<std::string> ns;
    for (const auto& pr : row.profiles) {
      prof.push_back(profile_str(pr));
      ns.push_back(std::to_string(pr.size()));
    }
    const std::string head = "| " + std::to_string(row.r) + " | " + join(prof, " ") + " | (" + join(ns, ",") + ") | ";
    if (row.pairs.empty()) {
      os << head << "- | - | - | - | - | - |\n";
      continue;
    }
    for (const auto& ap : row.pairs) {
      os << head << ap.i << "," << ap.j << " | " << ap.u << " | ";
      if (!ap.threshold) {
        os << "undefined | - | - | - |\n";
        continue;
      }
      std::vector<std::string> pp;
      for (const auto& x : ap.partitions) pp.push_back(x.str());
      os << to_string(*ap.threshold) << " | eps/" << p << " | " << nu_formula(p, ap.u, row.profiles[ap.i].size()) << ", "
         << nu_formula(p, ap.u, row.profiles[ap.j].size()) << " | " << ap.partitions.size()
         << (pp.empty() ? "" : ": " + join(pp, "; ")) << " |\n";
    }
  }
  return os.str();
}

std::string atlas_json(long p, const std::vector<AtlasRow>& rows) {
  json out;
  out["p"] = p;
  out["rows"] = json::array();
  for (const auto& row : rows) {
    json jr;
    jr["r"] = row.r;
    jr["profiles"] = row.profiles;
    std::vector<std::size_t> ns;
    for (const auto& pr : row.profiles) ns.push_back(pr.size());
    jr["n"] = ns;
    jr["pairs"] = json::array();
    for (const auto& ap : row.pairs) {
      json jp;
      jp["pair"] = {ap.i, ap.j};
      jp["u"] = ap.u;
      if (ap.threshold) {
        jp["threshold"] = to_string(*ap.threshold);
        jp["far"] = {{"tail_edge", "eps/" + std::to_string(p)},
                     {"nu_i", nu_formula(p, ap.u, row.profiles[ap.i].size())},
                     {"nu_j", nu_formula(p, ap.u, row.profiles[ap.j].size())}};
        jp["critical"] = {{"epsilon", to_string(*ap.threshold)}};
        json parts = json::array();
        for (const auto& x : ap.partitions) parts.push_back(x.str());
        jp["near"] = {{"eps0", to_string(*ap.threshold)}, {"partitions", parts}};
      } else {
        jp["threshold"] = nullptr;
      }
      jr["pairs"].push_back(jp);
    }
    out["rows"].push_back(jr);
  }
  return out.dump(2) + "\n";
}

std::vector<ExampleModel> cmd_example8() {
  RamificationProfile ram;
  ram.p = 5;
  ram.branch = {{"0", {3, 1, 1}}, {"1", {2, 1, 1, 1}}, {"lambda", {2, 1, 1, 1}}};
  std::vector<ExampleModel> out;
  auto add = [&](const std::string& id, const std::string& title, const BranchLayout& layout) {
    const auto models = assemble_full_model(ram, layout);
    for (std::size_t k = 0; k < models.size(); ++k) {
      const auto& fm = models[k];
      ExampleModel em;
      em.id = models.size() > 1 ? id + "-" + std::to_string(k + 1) : id;
      em.title = title;
      em.regime = fm.tails.empty() ? "GOOD" : regime_name(fm.tails.front().regime);
      if (!fm.tails.empty()) em.partition = fm.tails.front().partition;
      em.graph = fm.graph;
      out.push_back(std::move(em));
    }
  };
  add("good", "good reduction: v(lambda) = v(lambda-1) = 0", {{"0", "1", "lambda"}, {}, true});
  add("tail0-far", "v(lambda) = 1 < 5", {{"1"}, {{"0", "lambda", Rational(1)}}, true});
  add("tail0-critical", "v(lambda) = 5", {{"1"}, {{"0", "lambda", Rational(5)}}, true});
  add("tail0-near", "v(lambda) = 7 > 5", {{"1"}, {{"0", "lambda", Rational(7)}}, true});
  add("tail1-far", "v(lambda-1) = 1 < 5/2", {{"0"}, {{"1", "lambda", Rational(1)}}, true});
  add("tail1-critical", "v(lambda-1) = 5/2", {{"0"}, {{"1", "lambda", ratio(5, 2)}}, true});
  add("tail1-near", "v(lambda-1) = 3 > 5/2", {{"0"}, {{"1", "lambda", Rational(3)}}, true});
  return out;
}

std::string example8_json(const std::vector<ExampleModel>& models) {
  json out;
  out["example"] = "degree 5, branched over infinity, 0 (3,1,1), 1 and lambda (2,1,1,1)";
  out["models"] = json::array();
  for (const auto& m : models) {
    json jm;
    jm["id"] = m.id;
    jm["title"] = m.title;
    jm["regime"] = m.regime;
    jm["partition"] = m.partition ? json(m.partition->str()) : json(nullptr);
    jm["graph"] = json::parse(to_json(m.graph));
    out["models"].push_back(jm);
  }
  return out.dump(2) + "\n";
}

std::string example8_dot(const std::vector<ExampleModel>& models) {
  std::string out;
  for (const auto& m : models) out += to_dot(m.graph, m.id);
  return out;
}

std::string report_json(const Report& r) {
  json out;
  out["command"] = r.command;
  out["mode"] = r.mode;
  out["input"] = r.input.empty() ? json(nullptr) : json::parse(r.input);
  out["e"] = r.e_used;
  out["branch_values"] = json::array();
  for (const auto& [name, prof] : r.branch_values) out["branch_values"].push_back({{"name", name}, {"profile", prof}});
  if (!r.branch_tree_dot.empty()) out["branch_tree"] = r.branch_tree_dot;
  if (!r.newton.empty()) {
    out["newton"] = json::array();
    for (const auto& n : r.newton) out["newton"].push_back(json::parse(n));
  }
  out["regime"] = r.regime;
  out["tails"] = json::array();
  for (const auto& t : r.tails) {
    json jt;
    jt["pair"] = {t.tail.a, t.tail.b};
    jt["epsilon"] = to_string(t.tail.epsilon);
    jt["regime"] = regime_name(t.regime);
    jt["threshold"] = t.threshold ? json(to_string(*t.threshold)) : json(nullptr);
    json parts = json::array();
    for (const auto& pp : t.partitions) parts.push_back(pp.str());
    jt["partitions"] = parts;
    out["tails"].push_back(jt);
  }
  out["models"] = json::array();
  for (const auto& m : r.models) {
    json jm;
    jm["graph"] = json::parse(to_json(m.graph));
    json jt = json::array();
    for (const auto& t : m.tails) {
      jt.push_back({{"pair", {t.tail.a, t.tail.b}},
                    {"regime", regime_name(t.regime)},
                    {"partition", t.partition ? json(t.partition->str()) : json(nullptr)}});
    }
    jm["tails"] = jt;
    out["models"].push_back(jm);
  }
  if (r.verdict) {
    json jv;
    jv["result"] = r.verdict->agree ? "AGREE" : "DISAGREE";
    jv["diff"] = r.verdict->diff;
    jv["invariants"] = r.verdict->invariant_violations;
    jv["oracle"] = json::parse(to_json(r.verdict->oracle));
    jv["stages"] = r.verdict->stages.size();
    out["verdict"] = jv;
  }
  return out.dump(2) + "\n";
}

std::string report_text(const Report& r) {
  std::ostringstream os;
  os << r.command << " (" << r.mode << ", e = " << r.e_used << "): " << r.regime << "\n";
  for (const auto& t : r.tails) {
    os << "  tail {" << t.tail.a << ", " << t.tail.b << "} eps = " << to_string(t.tail.epsilon) << " threshold = "
       << (t.threshold ? to_string(*t.threshold) : "undefined") << " -> " << regime_name(t.regime) << "\n";
    for (const auto& pp : t.partitions) os << "    partition " << pp.str() << "\n";
  }
  os << "  models: " << r.models.size() << "\n";
  if (r.verdict) {
    os << "  verdict: " << (r.verdict->agree ? "AGREE" : "DISAGREE") << "\n";
    for (const auto& d : r.verdict->diff) os << "    diff: " << d << "\n";
    for (const auto& d : r.verdict->invariant_violations) os << "    invariant: " << d << "\n";
  }
  return os.str();
}

}  // namespace semistab
