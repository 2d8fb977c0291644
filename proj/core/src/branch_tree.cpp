#include "semistab/branch_tree.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "semistab/error.hpp"

namespace semistab {

int MetricTree::vertex_of(std::size_t point) const {
  for (std::size_t v = 0; v < vertices.size(); ++v) {
    const auto& m = vertices[v].marked;
    if (std::find(m.begin(), m.end(), point) != m.end()) return static_cast<int>(v);
  }
  throw Error(Errc::VertexNotFound, "point " + std::to_string(point) + " is not marked");
}

namespace {

Rational pair_valuation(const Element& a, const Element& b) { return val(a - b).value(); }

}  // namespace

MetricTree build_branch_tree(const std::vector<Element>& S) {
  MetricTree t;
  t.points = S;
  for (std::size_t i = 0; i < S.size(); ++i) {
    const Valuation v = val(S[i]);
    if (!v.is_infinite() && v.value() < 0) throw Error(Errc::NonIntegral, "branch value " + S[i].str() + " is not integral");
    for (std::size_t j = 0; j < i; ++j)
      if (S[i] == S[j]) throw Error(Errc::PreconditionViolated, "repeated branch value " + S[i].str());
  }

  // Grouping at depth d: x ~ y iff v(x - y) > d. Ultrametricity makes this an
  // equivalence relation on a set whose pairwise valuations are all >= d.
  std::function<void(int, const std::vector<std::size_t>&, const Rational&)> split =
      [&](int vertex, const std::vector<std::size_t>& members, const Rational& depth) {
        std::vector<std::vector<std::size_t>> groups;
        for (std::size_t idx : members) {
          auto it = std::find_if(groups.begin(), groups.end(), [&](const std::vector<std::size_t>& g) {
            return pair_valuation(S[g.front()], S[idx]) > depth;
          });
          if (it == groups.end()) {
            groups.push_back({idx});
          } else {
            it->push_back(idx);
          }
        }
        for (const auto& g : groups) {
          if (g.size() == 1) {
            t.vertices[static_cast<std::size_t>(vertex)].marked.push_back(g.front());
            continue;
          }
          Rational child_depth = pair_valuation(S[g[0]], S[g[1]]);
          for (std::size_t i = 0; i < g.size(); ++i)
            for (std::size_t j = i + 1; j < g.size(); ++j) child_depth = std::min(child_depth, pair_valuation(S[g[i]], S[g[j]]));
          MetricTree::Vertex child;
          child.parent = vertex;
          child.depth = child_depth;
          child.thickness = child_depth - depth;
          const int id = static_cast<int>(t.vertices.size());
          t.vertices.push_back(child);
          t.vertices[static_cast<std::size_t>(vertex)].children.push_back(id);
          split(id, g, child_depth);
        }
      };

  t.vertices.push_back(MetricTree::Vertex{});
  std::vector<std::size_t> all(S.size());
  for (std::size_t i = 0; i < S.size(); ++i) all[i] = i;

  // The root must see at least two distinct residues.
  {
    std::size_t classes = 0;
    std::vector<std::size_t> reps;
    for (std::size_t i : all) {
      if (std::none_of(reps.begin(), reps.end(), [&](std::size_t r) { return pair_valuation(S[r], S[i]) > 0; })) {
        reps.push_back(i);
        ++classes;
      }
    }
    if (classes < 2) throw Error(Errc::AllPointsCoalesce, "fewer than two distinct residues among the branch values");
  }
  split(MetricTree::root, all, Rational(0));
  for (auto& v : t.vertices) std::sort(v.marked.begin(), v.marked.end());
  return t;
}

BranchClassification classify_points(const MetricTree& t) {
  BranchClassification bc;
  bc.ordinary = t.vertices[MetricTree::root].marked;
  for (int c : t.vertices[MetricTree::root].children) {
    const auto& v = t.vertices[static_cast<std::size_t>(c)];
    if (v.children.empty() && v.marked.size() == 2) {
      bc.tails.push_back({v.marked[0], v.marked[1], v.thickness, c});
    } else {
      bc.simple = false;
      bc.offending.push_back(c);
    }
  }
  return bc;
}

Rational distance(const MetricTree& t, int c1, int c2) {
  const int n = static_cast<int>(t.vertices.size());
  if (c1 < 0 || c1 >= n || c2 < 0 || c2 >= n) throw Error(Errc::VertexNotFound, "vertex out of range");
  std::vector<int> up1;
  for (int v = c1; v != -1; v = t.vertices[static_cast<std::size_t>(v)].parent) up1.push_back(v);
  Rational d2 = 0;
  int v = c2;
  while (std::find(up1.begin(), up1.end(), v) == up1.end()) {
    d2 += t.vertices[static_cast<std::size_t>(v)].thickness;
    v = t.vertices[static_cast<std::size_t>(v)].parent;
  }
  Rational d1 = 0;
  for (int u = c1; u != v; u = t.vertices[static_cast<std::size_t>(u)].parent) d1 += t.vertices[static_cast<std::size_t>(u)].thickness;
  return d1 + d2;
}

bool is_simple_reduction(const std::vector<Element>& S) { return classify_points(build_branch_tree(S)).simple; }

std::string branch_tree_dot(const MetricTree& t) {
  std::ostringstream os;
  os << "graph branch_tree {\n";
  for (std::size_t v = 0; v < t.vertices.size(); ++v) {
    std::string label = v == 0 ? "D" : "D" + std::to_string(v);
    std::string marks = v == 0 ? "inf" : "";
    for (std::size_t m : t.vertices[v].marked) {
      if (!marks.empty()) marks += ", ";
      marks += t.points[m].str();
    }
    os << "  v" << v << " [label=\"" << label << "\\n{" << marks << "}\"];\n";
  }
  for (std::size_t v = 1; v < t.vertices.size(); ++v) {
    os << "  v" << t.vertices[v].parent << " -- v" << v << " [label=\"" << to_string(t.vertices[v].thickness) << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace semistab
