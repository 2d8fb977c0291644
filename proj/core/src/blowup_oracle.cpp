#include "semistab/blowup_oracle.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <nlohmann/json.hpp>

#include "semistab/error.hpp"
#include "semistab/newton.hpp"

namespace semistab {

namespace {

/// Fiber index and number of fiber points in one residue class.
using ClassMembers = std::vector<std::pair<std::size_t, int>>;

/// Specializations of the tracked fiber points on the current chart: classes
/// of F_p-rational residues, plus the ramification indices of points whose
/// residue lies outside F_p. Those must be isolated (one point each, no
/// other fiber sharing the residue); otherwise a blow-up centered outside
/// F_p would be needed and the instance is rejected.
struct ResidualSplit {
  std::map<long, ClassMembers> classes;
  std::vector<std::vector<int>> outside;  // per fiber

  std::size_t distinct() const {
    std::size_t n = classes.size();
    for (const auto& o : outside) n += o.size();
    return n;
  }
};

ResidualPoly power_of_linear(long p, long w, int m) {
  ResidualPoly f = ResidualPoly::constant(p, 1);
  const ResidualPoly lin(p, {(p - w % p) % p, 1});
  for (int i = 0; i < m; ++i) f = f * lin;
  return f;
}

int multiplicity_at(const ResidualPoly& f, long w) {
  for (const auto& rm : roots_in_fp(f))
    if (rm.root == w) return rm.multiplicity;
  return 0;
}

ResidualSplit residual_split(const ModelState& s) {
  const long p = s.ctx.p;
  ResidualSplit out;
  out.outside.resize(s.fibers.size());
  std::vector<ResidualPoly> irrational(s.fibers.size());
  for (std::size_t j = 0; j < s.fibers.size(); ++j) {
    const ResidualPoly r = s.fibers[j].radical.normalized_reduction();
    ResidualPoly rest = r.monic();
    ResidualPoly full = s.fibers[j].full.normalized_reduction().monic();
    for (const auto& rm : roots_in_fp(r)) {
      out.classes[rm.root].push_back({j, rm.multiplicity});
      rest = divmod(rest, power_of_linear(p, rm.root, rm.multiplicity)).first;
      full = divmod(full, power_of_linear(p, rm.root, multiplicity_at(full, rm.root))).first;
    }
    if (rest.degree() > 0) {
      if (squarefree_degree(rest) != rest.degree()) {
        throw Error(Errc::ResidualRootOutsideFp, "fiber " + s.fibers[j].name + " has coalescing points with residues outside F_" +
                                                     std::to_string(p) + " (residual factor " + rest.str() + ")");
      }
      out.outside[j] = multiplicity_profile(full);
    }
    irrational[j] = rest;
  }
  for (std::size_t j = 0; j < irrational.size(); ++j)
    for (std::size_t k = j + 1; k < irrational.size(); ++k)
      if (gcd(irrational[j], irrational[k]).degree() > 0) {
        throw Error(Errc::ResidualRootOutsideFp, "fibers " + s.fibers[j].name + " and " + s.fibers[k].name +
                                                     " share a residue outside F_" + std::to_string(p));
      }
  return out;
}

int class_size(const ClassMembers& m) {
  int n = 0;
  for (const auto& [j, k] : m) n += k;
  return n;
}

ResidualPoly combined_residual(const ModelState& s) {
  ResidualPoly prod = ResidualPoly::constant(s.ctx.p, 1);
  for (const auto& f : s.fibers) prod = prod * f.radical.normalized_reduction().monic();
  return prod;
}

}  // namespace

ModelState fundamental_model(const Cover& c, const std::vector<std::string>& names) {
  const FieldContext& ctx = c.context();
  const Lemma31Result lemma = check_lemma31(c.beta());
  if (!lemma.integral) {
    std::string why = lemma.bad_coefficient ? "coefficient " + std::to_string(*lemma.bad_coefficient) + " is not integral"
                                            : "reduction is " + lemma.reduction->str() + ", not X^" + std::to_string(ctx.p);
    throw Error(Errc::Lemma31Failed, why);
  }
  const ResidualPoly gamma = c.beta().reversed().reduction();
  if (!(gamma == ResidualPoly::constant(ctx.p, 1))) {
    throw Error(Errc::Lemma31Failed, "chart at infinity reduces to " + gamma.str() + ", not 1");
  }

  ModelState s{ctx, Element::zero(ctx), Rational(0), {}, c.beta(), {}};
  for (const auto& b : branch_data(c).branch) {
    const std::string name = b.lambda.str();
    if (!names.empty() && std::find(names.begin(), names.end(), name) == names.end()) continue;
    s.fibers.push_back({name, b.lambda, b.fiber_size(), fiber_radical(c, b), c.beta() - PolynomialV::constant(b.lambda)});
  }
  for (const auto& name : names) {
    if (std::none_of(s.fibers.begin(), s.fibers.end(), [&](const TrackedFiber& f) { return f.name == name; })) {
      throw Error(Errc::VertexNotFound, "no branch value named " + name);
    }
  }
  return s;
}

std::optional<Rational> next_thickness(const ModelState& s, long w) {
  std::optional<Rational> best;
  for (const auto& f : s.fibers) {
    const auto v = min_positive_root_valuation(f.radical.shifted(Rational(w)));
    if (v && (!best || *v < *best)) best = v;
  }
  return best;
}

ModelState blow_up(const ModelState& s, long w, const Rational& nu) {
  const bool is_root = std::any_of(s.fibers.begin(), s.fibers.end(),
                                   [&](const TrackedFiber& f) { return f.radical.normalized_reduction().eval(w) == 0; });
  if (!is_root) throw Error(Errc::CenterNotRoot, std::to_string(w) + " is not a residual root of a tracked fiber");
  if (nu <= 0) throw Error(Errc::PreconditionViolated, "blow-up thickness must be positive, got " + to_string(nu));
  if (!representable(nu, s.ctx)) {
    const long need = required_ramification(nu, s.ctx);
    throw Error(Errc::NotRepresentable, "thickness " + to_string(nu) + " needs e = " + std::to_string(need), need);
  }
  ModelState t = s;
  const Rational lift(w);
  t.center = s.center + uniformizer_power(s.radius, s.ctx) * lift;
  t.radius = s.radius + nu;
  t.charts.push_back({Element(s.ctx, lift), nu});
  t.beta_local = s.beta_local.shifted(lift).scaled_by_uniformizer_power(nu);
  for (auto& f : t.fibers) {
    f.radical = f.radical.shifted(lift).scaled_by_uniformizer_power(nu);
    f.full = f.full.shifted(lift).scaled_by_uniformizer_power(nu);
  }
  return t;
}

SeparationStatus separation_status(const ModelState& s, const std::string& fiber) {
  for (const auto& f : s.fibers) {
    if (f.name != fiber) continue;
    const int count = squarefree_degree(f.full.normalized_reduction());
    return {count == f.n, count};
  }
  throw Error(Errc::VertexNotFound, "fiber " + fiber + " is not tracked");
}

OracleResult run_oracle(const Cover& c, const OracleOptions& opts) {
  const FieldContext& ctx = c.context();
  const long p = ctx.p;
  OracleResult res;
  std::vector<ModelState> states;
  struct XNode {
    int parent;
    Rational thickness;
    std::vector<FiberMark> marks;
  };
  std::vector<XNode> nodes;
  int stage_count = 0;

  auto name_of = [](std::size_t i) { return i == 0 ? std::string("C") : "X" + std::to_string(i); };

  std::function<void(const ModelState&, int, const Rational&)> process = [&](const ModelState& s, int parent,
                                                                             const Rational& thickness) {
    const std::size_t id = states.size();
    states.push_back(s);
    nodes.push_back({parent, thickness, {}});
    const ResidualSplit split = residual_split(s);
    for (std::size_t j = 0; j < split.outside.size(); ++j)
      for (int e : split.outside[j]) nodes[id].marks.push_back({s.fibers[j].name, e});
    for (const auto& [w, members] : split.classes) {
      if (class_size(members) == 1) {
        const TrackedFiber& f = s.fibers[members.front().first];
        nodes[id].marks.push_back({f.name, multiplicity_at(f.full.normalized_reduction(), w)});
        continue;
      }
      // Minimal blow-ups until the class splits into several residues.
      ModelState t = s;
      long center = w;
      Rational added = 0;
      while (true) {
        if (++stage_count > opts.max_stages) {
          throw Error(Errc::NonTermination, "more than " + std::to_string(opts.max_stages) + " blow-up stages");
        }
        const auto nu = next_thickness(t, center);
        if (!nu) throw Error(Errc::PreconditionViolated, "class without a positive root valuation");
        t = blow_up(t, center, *nu);
        added += *nu;
        const ResidualSplit inner = residual_split(t);
        const bool pure = inner.distinct() == 1;
        res.stages.push_back({name_of(states.size()), t.center.str(), *nu, combined_residual(t).str(), pure});
        if (!pure) break;
        center = inner.classes.begin()->first;
      }
      process(t, static_cast<int>(id), added);
    }
  };

  process(fundamental_model(c, opts.fibers), -1, Rational(0));

  // Downstairs: image discs D(beta(a), sigma) with the reduced map on each.
  struct YDisc {
    Element center;
    Rational radius;
  };
  std::vector<YDisc> ydiscs;
  std::vector<std::size_t> image_of(states.size());
  DualGraphPair& g = res.graph;
  g.p = p;
  for (std::size_t i = 0; i < states.size(); ++i) {
    const ModelState& s = states[i];
    const Element base = s.beta_local.coeff(0);
    const PolynomialV moved = s.beta_local - PolynomialV::constant(base);
    const Rational sigma = moved.content_valuation().value();
    const ResidualPoly fbar = moved.normalized_reduction();
    MapLabel label;
    label.degree = fbar.degree();
    if (fbar.derivative().is_zero()) {
      label.kind = MapLabel::Kind::Inseparable;
    } else {
      label.kind = MapLabel::Kind::Etale;
      label.branch_points = (label.degree >= 2 ? 1 : 0) + critical_value_count(fbar);
      label.wild_points = label.degree % p == 0 ? 1 : 0;
    }
    std::size_t k = 0;
    while (k < ydiscs.size() && !(ydiscs[k].radius == sigma && val(ydiscs[k].center - base) >= Valuation(sigma))) ++k;
    if (k == ydiscs.size()) ydiscs.push_back({base, sigma});
    image_of[i] = k;
    g.upstairs.push_back({name_of(i), label, "", nodes[i].marks});
    if (nodes[i].parent >= 0) g.x_edges.push_back({name_of(static_cast<std::size_t>(nodes[i].parent)), name_of(i), nodes[i].thickness});
  }
  auto yname = [](std::size_t k) { return k == 0 ? std::string("D") : "Y" + std::to_string(k); };
  for (std::size_t i = 0; i < states.size(); ++i) g.upstairs[i].image = yname(image_of[i]);

  auto contains = [](const YDisc& outer, const Element& y) { return val(y - outer.center) >= Valuation(outer.radius); };
  for (std::size_t k = 0; k < ydiscs.size(); ++k) {
    g.downstairs.push_back({yname(k), k == 0 ? std::vector<std::string>{"inf"} : std::vector<std::string>{}});
    if (k == 0) continue;
    std::optional<std::size_t> parent;
    for (std::size_t j = 0; j < ydiscs.size(); ++j) {
      if (j == k || ydiscs[j].radius >= ydiscs[k].radius || !contains(ydiscs[j], ydiscs[k].center)) continue;
      if (!parent || ydiscs[j].radius > ydiscs[*parent].radius) parent = j;
    }
    if (!parent) throw Error(Errc::PreconditionViolated, "image disc is not inside the root disc");
    g.y_edges.push_back({yname(*parent), yname(k), ydiscs[k].radius - ydiscs[*parent].radius});
  }
  for (const auto& f : states.front().fibers) {
    std::optional<std::size_t> best;
    for (std::size_t k = 0; k < ydiscs.size(); ++k) {
      if (!contains(ydiscs[k], f.lambda)) continue;
      if (!best || ydiscs[k].radius > ydiscs[*best].radius) best = k;
    }
    if (!best) throw Error(Errc::NonIntegral, "branch value " + f.name + " is outside the unit disc");
    g.downstairs[*best].marks.push_back(f.name);
  }
  g.upstairs.front().marks.push_back({"inf", static_cast<int>(p)});

  for (std::size_t i = 0; i < states.size(); ++i) {
    const auto& y = ydiscs[image_of[i]];
    res.discs.push_back({name_of(i), states[i].center.str(), states[i].radius, yname(image_of[i]), y.radius});
  }
  g.canonicalize();
  return res;
}

DualGraphPair separate_fibers(const Cover& c, const std::string& lambda1, const std::string& lambda2) {
  OracleOptions opts;
  opts.fibers = {lambda1, lambda2};
  return run_oracle(c, opts).graph;
}

PartitionChoice realized_partitions(const DualGraphPair& g, const BranchLayout& layout) {
  PartitionChoice out;
  std::function<void(const std::string&, const std::string&, std::vector<int>&)> collect =
      [&](const std::string& node, const std::string& fiber, std::vector<int>& es) {
        for (const auto& m : g.x(node).marks)
          if (m.fiber == fiber) es.push_back(m.e);
        for (const auto& c : g.x_children(node)) collect(c, fiber, es);
      };
  for (const auto& t : layout.tails) {
    for (const auto& top : g.x_children(g.x_root)) {
      std::vector<int> all1;
      std::vector<int> all2;
      collect(top, t.a, all1);
      collect(top, t.b, all2);
      if (all1.empty() || all2.empty()) continue;
      PartitionPair pp;
      bool valid = true;
      for (const auto& child : g.x_children(top)) {
        PartitionGroup grp;
        collect(child, t.a, grp.part1);
        collect(child, t.b, grp.part2);
        if (grp.part1.empty() || grp.part2.empty()) valid = false;
        for (int e : grp.part1) grp.d += e;
        pp.groups.push_back(std::move(grp));
      }
      if (valid && pp.s() >= 2) {
        pp.canonicalize();
        out[{t.a, t.b}] = pp;
      }
    }
  }
  return out;
}

std::string stage_json(const OracleStage& s) {
  nlohmann::json j;
  j["disc"] = s.disc;
  j["center"] = s.center;
  j["nu"] = to_string(s.nu);
  j["residual"] = s.residual;
  j["pure"] = s.pure;
  return j.dump();
}

}  // namespace semistab
