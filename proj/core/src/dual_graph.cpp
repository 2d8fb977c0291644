#include "semistab/dual_graph.hpp"

#include <algorithm>
#include <functional>
#include <tuple>
#include <utility>
#include <map>
#include <nlohmann/json.hpp>
#include <set>
#include <sstream>

#include "semistab/error.hpp"

namespace semistab {

std::string MapLabel::str() const {
  if (kind == Kind::Inseparable) return "insep(" + std::to_string(degree) + ")";
  return "etale(" + std::to_string(degree) + ",b=" + std::to_string(branch_points) + ",w=" + std::to_string(wild_points) + ")";
}

const XComponent& DualGraphPair::x(const std::string& name) const {
  for (const auto& c : upstairs)
    if (c.name == name) return c;
  throw Error(Errc::VertexNotFound, "no upstairs component " + name);
}

const YComponent& DualGraphPair::y(const std::string& name) const {
  for (const auto& c : downstairs)
    if (c.name == name) return c;
  throw Error(Errc::VertexNotFound, "no downstairs component " + name);
}

XComponent& DualGraphPair::x(const std::string& name) {
  return const_cast<XComponent&>(std::as_const(*this).x(name));
}

YComponent& DualGraphPair::y(const std::string& name) {
  return const_cast<YComponent&>(std::as_const(*this).y(name));
}

const TreeEdge* DualGraphPair::x_edge_to(const std::string& child) const {
  for (const auto& e : x_edges)
    if (e.child == child) return &e;
  return nullptr;
}

const TreeEdge* DualGraphPair::y_edge_to(const std::string& child) const {
  for (const auto& e : y_edges)
    if (e.child == child) return &e;
  return nullptr;
}

std::vector<std::string> DualGraphPair::x_children(const std::string& name) const {
  std::vector<std::string> out;
  for (const auto& e : x_edges)
    if (e.parent == name) out.push_back(e.child);
  return out;
}

std::vector<std::string> DualGraphPair::y_children(const std::string& name) const {
  std::vector<std::string> out;
  for (const auto& e : y_edges)
    if (e.parent == name) out.push_back(e.child);
  return out;
}

void DualGraphPair::canonicalize() {
  for (auto& c : upstairs) std::sort(c.marks.begin(), c.marks.end());
  for (auto& c : downstairs) std::sort(c.marks.begin(), c.marks.end());
  auto by_child = [](const TreeEdge& a, const TreeEdge& b) { return std::tie(a.parent, a.child) < std::tie(b.parent, b.child); };
  std::sort(x_edges.begin(), x_edges.end(), by_child);
  std::sort(y_edges.begin(), y_edges.end(), by_child);
}

namespace {

std::string marks_key(std::vector<FiberMark> marks) {
  std::sort(marks.begin(), marks.end());
  std::string s;
  for (const auto& m : marks) s += m.fiber + "^" + std::to_string(m.e) + ",";
  return s;
}

std::string marks_key(std::vector<std::string> marks) {
  std::sort(marks.begin(), marks.end());
  std::string s;
  for (const auto& m : marks) s += m + ",";
  return s;
}

struct YCanon {
  std::map<std::string, std::string> subtree;  // bottom-up
  std::map<std::string, std::string> position;  // root path
};

YCanon canon_y(const DualGraphPair& g) {
  YCanon out;
  std::function<std::string(const std::string&)> sub = [&](const std::string& n) {
    std::vector<std::string> kids;
    for (const auto& c : g.y_children(n)) kids.push_back(to_string(g.y_edge_to(c)->thickness) + ":" + sub(c));
    std::sort(kids.begin(), kids.end());
    std::string s = "(" + marks_key(g.y(n).marks) + "|";
    for (const auto& k : kids) s += k + ";";
    s += ")";
    out.subtree[n] = s;
    return s;
  };
  sub(g.y_root);
  std::function<void(const std::string&, const std::string&)> pos = [&](const std::string& n, const std::string& prefix) {
    out.position[n] = prefix;
    for (const auto& c : g.y_children(n)) pos(c, prefix + "/" + to_string(g.y_edge_to(c)->thickness) + ":" + out.subtree[c]);
  };
  pos(g.y_root, "root");
  return out;
}

}  // namespace

std::string canonical_form(const DualGraphPair& g) {
  const YCanon yc = canon_y(g);
  std::function<std::string(const std::string&)> sub = [&](const std::string& n) {
    const XComponent& c = g.x(n);
    std::vector<std::string> kids;
    for (const auto& k : g.x_children(n)) kids.push_back(to_string(g.x_edge_to(k)->thickness) + ":" + sub(k));
    std::sort(kids.begin(), kids.end());
    auto it = yc.position.find(c.image);
    std::string s = "[" + c.label.str() + "|" + (it == yc.position.end() ? "?" : it->second) + "|" + marks_key(c.marks) + "|";
    for (const auto& k : kids) s += k + ";";
    s += "]";
    return s;
  };
  return "p=" + std::to_string(g.p) + " X=" + sub(g.x_root) + " Y=" + yc.subtree.at(g.y_root);
}

bool isomorphic(const DualGraphPair& a, const DualGraphPair& b) { return canonical_form(a) == canonical_form(b); }

std::vector<std::string> structural_diff(const DualGraphPair& a, const DualGraphPair& b) {
  std::vector<std::string> out;
  if (isomorphic(a, b)) return out;
  if (a.upstairs.size() != b.upstairs.size())
    out.push_back("upstairs components: " + std::to_string(a.upstairs.size()) + " vs " + std::to_string(b.upstairs.size()));
  if (a.downstairs.size() != b.downstairs.size())
    out.push_back("downstairs components: " + std::to_string(a.downstairs.size()) + " vs " + std::to_string(b.downstairs.size()));
  auto thicknesses = [](const std::vector<TreeEdge>& es) {
    std::vector<Rational> t;
    for (const auto& e : es) t.push_back(e.thickness);
    std::sort(t.begin(), t.end());
    std::string s;
    for (const auto& q : t) s += to_string(q) + " ";
    return s;
  };
  if (thicknesses(a.x_edges) != thicknesses(b.x_edges))
    out.push_back("upstairs thicknesses: [" + thicknesses(a.x_edges) + "] vs [" + thicknesses(b.x_edges) + "]");
  if (thicknesses(a.y_edges) != thicknesses(b.y_edges))
    out.push_back("downstairs thicknesses: [" + thicknesses(a.y_edges) + "] vs [" + thicknesses(b.y_edges) + "]");
  auto labels = [](const DualGraphPair& g) {
    std::vector<std::string> l;
    for (const auto& c : g.upstairs) l.push_back(c.label.str() + "{" + marks_key(c.marks) + "}");
    std::sort(l.begin(), l.end());
    std::string s;
    for (const auto& x : l) s += x + " ";
    return s;
  };
  if (labels(a) != labels(b)) out.push_back("component labels: [" + labels(a) + "] vs [" + labels(b) + "]");
  if (out.empty()) out.push_back("tree shapes differ: " + canonical_form(a) + " vs " + canonical_form(b));
  return out;
}

std::vector<std::string> check_invariants(const DualGraphPair& g) {
  std::vector<std::string> bad;
  auto check_tree = [&](const std::vector<std::string>& names, const std::vector<TreeEdge>& edges, const std::string& root,
                        const char* side) {
    std::map<std::string, int> indegree;
    for (const auto& n : names) {
      if (indegree.count(n)) bad.push_back(std::string(side) + ": duplicate component " + n);
      indegree[n] = 0;
    }
    for (const auto& e : edges) {
      if (!indegree.count(e.parent) || !indegree.count(e.child)) {
        bad.push_back(std::string(side) + ": edge references unknown component");
        continue;
      }
      ++indegree[e.child];
      if (e.thickness <= 0) bad.push_back(std::string(side) + ": non-positive thickness on " + e.child);
    }
    for (const auto& [n, d] : indegree) {
      if (n == root && d != 0) bad.push_back(std::string(side) + ": root has a parent");
      if (n != root && d != 1) bad.push_back(std::string(side) + ": " + n + " has " + std::to_string(d) + " parents");
    }
    if (edges.size() + 1 != names.size()) bad.push_back(std::string(side) + ": not a tree (edge count)");
  };
  std::vector<std::string> xn, yn;
  for (const auto& c : g.upstairs) xn.push_back(c.name);
  for (const auto& c : g.downstairs) yn.push_back(c.name);
  check_tree(xn, g.x_edges, g.x_root, "X");
  check_tree(yn, g.y_edges, g.y_root, "Y");
  if (!bad.empty()) return bad;

  for (const auto& e : g.x_edges) {
    const XComponent& parent = g.x(e.parent);
    const XComponent& child = g.x(e.child);
    const TreeEdge* ye = g.y_edge_to(child.image);
    if (ye == nullptr || ye->parent != parent.image) {
      bad.push_back("X edge " + e.parent + "-" + e.child + " does not map onto a Y edge");
      continue;
    }
    if (ye->thickness != e.thickness * child.label.degree) {
      bad.push_back("thickness scaling fails on " + e.child + ": " + to_string(ye->thickness) + " != " +
                    std::to_string(child.label.degree) + " * " + to_string(e.thickness));
    }
  }
  for (const auto& y : g.downstairs) {
    long total = 0;
    for (const auto& x : g.upstairs)
      if (x.image == y.name) total += x.label.degree;
    if (total != g.p) bad.push_back("degrees over " + y.name + " sum to " + std::to_string(total));
  }
  return bad;
}

namespace {

nlohmann::json label_json(const MapLabel& l) {
  nlohmann::json j;
  if (l.kind == MapLabel::Kind::Inseparable) {
    j["kind"] = "inseparable";
    j["degree"] = l.degree;
  } else {
    j["kind"] = "etale";
    j["degree"] = l.degree;
    j["branch_points"] = l.branch_points;
    j["wild_points"] = l.wild_points;
  }
  return j;
}

}  // namespace

std::string to_json(const DualGraphPair& g) {
  nlohmann::json j;
  j["p"] = g.p;
  nlohmann::json xs = nlohmann::json::array();
  for (const auto& c : g.upstairs) {
    nlohmann::json marks = nlohmann::json::array();
    for (const auto& m : c.marks) marks.push_back({{"fiber", m.fiber}, {"e", m.e}});
    xs.push_back({{"name", c.name}, {"map", label_json(c.label)}, {"image", c.image}, {"marks", marks}});
  }
  nlohmann::json xe = nlohmann::json::array();
  for (const auto& e : g.x_edges) xe.push_back({{"parent", e.parent}, {"child", e.child}, {"thickness", to_string(e.thickness)}});
  nlohmann::json ys = nlohmann::json::array();
  for (const auto& c : g.downstairs) ys.push_back({{"name", c.name}, {"marks", c.marks}});
  nlohmann::json ye = nlohmann::json::array();
  for (const auto& e : g.y_edges) ye.push_back({{"parent", e.parent}, {"child", e.child}, {"thickness", to_string(e.thickness)}});
  j["X"] = {{"root", g.x_root}, {"components", xs}, {"edges", xe}};
  j["Y"] = {{"root", g.y_root}, {"components", ys}, {"edges", ye}};
  return j.dump();
}

DualGraphPair dual_graph_from_json(const std::string& text) {
  try {
    const auto j = nlohmann::json::parse(text);
    DualGraphPair g;
    g.p = j.at("p").get<long>();
    g.x_root = j.at("X").at("root").get<std::string>();
    g.y_root = j.at("Y").at("root").get<std::string>();
    for (const auto& c : j.at("X").at("components")) {
      XComponent x;
      x.name = c.at("name").get<std::string>();
      x.image = c.at("image").get<std::string>();
      const auto& m = c.at("map");
      x.label.kind = m.at("kind").get<std::string>() == "etale" ? MapLabel::Kind::Etale : MapLabel::Kind::Inseparable;
      x.label.degree = m.at("degree").get<int>();
      if (x.label.kind == MapLabel::Kind::Etale) {
        x.label.branch_points = m.at("branch_points").get<int>();
        x.label.wild_points = m.at("wild_points").get<int>();
      }
      for (const auto& mk : c.at("marks")) x.marks.push_back({mk.at("fiber").get<std::string>(), mk.at("e").get<int>()});
      g.upstairs.push_back(std::move(x));
    }
    for (const auto& c : j.at("Y").at("components")) {
      g.downstairs.push_back({c.at("name").get<std::string>(), c.at("marks").get<std::vector<std::string>>()});
    }
    auto edges = [](const nlohmann::json& arr) {
      std::vector<TreeEdge> out;
      for (const auto& e : arr)
        out.push_back({e.at("parent").get<std::string>(), e.at("child").get<std::string>(), parse_rational(e.at("thickness").get<std::string>())});
      return out;
    };
    g.x_edges = edges(j.at("X").at("edges"));
    g.y_edges = edges(j.at("Y").at("edges"));
    return g;
  } catch (const nlohmann::json::exception& ex) {
    throw Error(Errc::Schema, std::string("dual graph JSON: ") + ex.what());
  }
}

std::string to_dot(const DualGraphPair& g, const std::string& title) {
  std::ostringstream os;
  auto id = [](const std::string& side, const std::string& name) {
    std::string s = "\"" + side + ":" + name + "\"";
    return s;
  };
  os << "graph \"" << title << "\" {\n";
  os << "  subgraph cluster_X {\n    label=\"X_k\";\n";
  for (const auto& c : g.upstairs) {
    std::string marks;
    for (const auto& m : c.marks) marks += (marks.empty() ? "" : " ") + m.fiber + "^" + std::to_string(m.e);
    os << "    " << id("X", c.name) << " [label=\"" << c.name << "\\n" << c.label.str() << "\\n" << marks << "\"];\n";
  }
  for (const auto& e : g.x_edges)
    os << "    " << id("X", e.parent) << " -- " << id("X", e.child) << " [label=\"" << to_string(e.thickness) << "\"];\n";
  os << "  }\n  subgraph cluster_Y {\n    label=\"Y_k\";\n";
  for (const auto& c : g.downstairs) {
    std::string marks;
    for (const auto& m : c.marks) marks += (marks.empty() ? "" : " ") + m;
    os << "    " << id("Y", c.name) << " [label=\"" << c.name << "\\n" << marks << "\"];\n";
  }
  for (const auto& e : g.y_edges)
    os << "    " << id("Y", e.parent) << " -- " << id("Y", e.child) << " [label=\"" << to_string(e.thickness) << "\"];\n";
  os << "  }\n";
  for (const auto& c : g.upstairs)
    os << "  " << id("X", c.name) << " -- " << id("Y", c.image) << " [style=dashed, label=\"" << c.label.degree << "\"];\n";
  os << "}\n";
  return os.str();
}

}  // namespace semistab
