#include "aplab/graphs.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "aplab/errors.hpp"
#include "json.hpp"

namespace aplab {

FiniteGraph::FiniteGraph(int vertices, std::vector<Edge> edges) : vertices_(vertices), edges_(std::move(edges)) {
  if (vertices < 1) throw std::invalid_argument("a graph needs at least one vertex");
  for (const auto& e : edges_) {
    if (e.tail < 0 || e.tail >= vertices || e.head < 0 || e.head >= vertices) {
      throw std::invalid_argument("edge endpoint outside vertex range");
    }
  }
}

FiniteGraph FiniteGraph::rose(int petals) { return FiniteGraph(1, std::vector<Edge>(static_cast<std::size_t>(petals), Edge{0, 0})); }

FiniteGraph FiniteGraph::circle(int length) {
  if (length < 1) throw std::invalid_argument("circle length must be positive");
  std::vector<Edge> es;
  for (int i = 0; i < length; ++i) es.push_back({i, (i + 1) % length});
  return FiniteGraph(length, std::move(es));
}

FiniteGraph FiniteGraph::theta(int strands) {
  return FiniteGraph(2, std::vector<Edge>(static_cast<std::size_t>(strands), Edge{0, 1}));
}

int FiniteGraph::origin(EdgeRef r) const {
  const auto& e = edges_.at(static_cast<std::size_t>(edge_index(r)));
  return r > 0 ? e.tail : e.head;
}

int FiniteGraph::terminus(EdgeRef r) const { return origin(-r); }

int FiniteGraph::valence(int v) const {
  int d = 0;
  for (const auto& e : edges_) d += (e.tail == v) + (e.head == v);
  return d;
}

int FiniteGraph::loops_at(int v) const { return multiplicity(v, v); }

int FiniteGraph::multiplicity(int u, int v) const {
  int m = 0;
  for (const auto& e : edges_) m += (e.tail == u && e.head == v) || (e.tail == v && e.head == u);
  return m;
}

bool FiniteGraph::connected() const {
  std::vector<int> comp(static_cast<std::size_t>(vertices_));
  std::iota(comp.begin(), comp.end(), 0);
  auto find = [&](int v) {
    while (comp[static_cast<std::size_t>(v)] != v) v = comp[static_cast<std::size_t>(v)] = comp[static_cast<std::size_t>(comp[static_cast<std::size_t>(v)])];
    return v;
  };
  int parts = vertices_;
  for (const auto& e : edges_) {
    const int a = find(e.tail), b = find(e.head);
    if (a != b) {
      comp[static_cast<std::size_t>(a)] = b;
      --parts;
    }
  }
  return parts == 1;
}

std::vector<EdgeRef> FiniteGraph::directions_at(int v) const {
  std::vector<EdgeRef> out;
  for (int e = 0; e < edge_count(); ++e) {
    if (edges_[static_cast<std::size_t>(e)].tail == v) out.push_back(forward_ref(e));
    if (edges_[static_cast<std::size_t>(e)].head == v) out.push_back(-forward_ref(e));
  }
  return out;
}

bool GraphAutomorphism::is_identity() const {
  for (std::size_t v = 0; v < vertex.size(); ++v) {
    if (vertex[v] != static_cast<int>(v)) return false;
  }
  for (std::size_t e = 0; e < edge.size(); ++e) {
    if (edge[e] != forward_ref(static_cast<int>(e))) return false;
  }
  return true;
}

GraphAutomorphism identity_automorphism(const FiniteGraph& x) {
  GraphAutomorphism f;
  f.vertex.resize(static_cast<std::size_t>(x.vertex_count()));
  std::iota(f.vertex.begin(), f.vertex.end(), 0);
  for (int e = 0; e < x.edge_count(); ++e) f.edge.push_back(forward_ref(e));
  return f;
}

GraphAutomorphism compose(const GraphAutomorphism& f, const GraphAutomorphism& g) {
  GraphAutomorphism h;
  for (int v : g.vertex) h.vertex.push_back(f.vertex.at(static_cast<std::size_t>(v)));
  for (EdgeRef r : g.edge) h.edge.push_back(f(r));
  return h;
}

GraphAutomorphism inverse(const GraphAutomorphism& f) {
  GraphAutomorphism h;
  h.vertex.resize(f.vertex.size());
  h.edge.resize(f.edge.size());
  for (std::size_t v = 0; v < f.vertex.size(); ++v) h.vertex[static_cast<std::size_t>(f.vertex[v])] = static_cast<int>(v);
  for (std::size_t e = 0; e < f.edge.size(); ++e) {
    const EdgeRef img = f.edge[e];
    const EdgeRef src = forward_ref(static_cast<int>(e));
    h.edge[static_cast<std::size_t>(edge_index(img))] = img > 0 ? src : -src;
  }
  return h;
}

bool is_automorphism(const FiniteGraph& x, const GraphAutomorphism& f) {
  const auto nv = static_cast<std::size_t>(x.vertex_count());
  const auto ne = static_cast<std::size_t>(x.edge_count());
  if (f.vertex.size() != nv || f.edge.size() != ne) return false;
  std::vector<bool> seen_v(nv, false), seen_e(ne, false);
  for (int v : f.vertex) {
    if (v < 0 || static_cast<std::size_t>(v) >= nv || seen_v[static_cast<std::size_t>(v)]) return false;
    seen_v[static_cast<std::size_t>(v)] = true;
  }
  for (std::size_t e = 0; e < ne; ++e) {
    const EdgeRef img = f.edge[e];
    if (img == 0 || static_cast<std::size_t>(edge_index(img)) >= ne || seen_e[static_cast<std::size_t>(edge_index(img))]) return false;
    seen_e[static_cast<std::size_t>(edge_index(img))] = true;
    const auto& src = x.edges()[e];
    if (x.origin(img) != f.vertex[static_cast<std::size_t>(src.tail)]) return false;
    if (x.terminus(img) != f.vertex[static_cast<std::size_t>(src.head)]) return false;
  }
  return true;
}

namespace {

struct AutomorphismSearch {
  const FiniteGraph& x;
  const std::function<bool(const GraphAutomorphism&)>& visit;
  int n;
  std::vector<std::vector<int>> mult;
  std::vector<std::pair<int, int>> invariant;
  std::map<std::pair<int, int>, std::vector<int>> groups;  // sorted endpoints -> edges
  std::vector<std::pair<std::pair<int, int>, std::vector<int>>> group_list;
  GraphAutomorphism current;
  std::vector<bool> used;
  bool stopped = false;

  AutomorphismSearch(const FiniteGraph& graph, const std::function<bool(const GraphAutomorphism&)>& v)
      : x(graph), visit(v), n(graph.vertex_count()) {
    mult.assign(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), 0));
    for (int e = 0; e < x.edge_count(); ++e) {
      const auto& ed = x.edges()[static_cast<std::size_t>(e)];
      ++mult[static_cast<std::size_t>(ed.tail)][static_cast<std::size_t>(ed.head)];
      if (ed.tail != ed.head) ++mult[static_cast<std::size_t>(ed.head)][static_cast<std::size_t>(ed.tail)];
      groups[std::minmax(ed.tail, ed.head)].push_back(e);
    }
    for (int v = 0; v < n; ++v) invariant.emplace_back(x.valence(v), x.loops_at(v));
    group_list.assign(groups.begin(), groups.end());
    current.vertex.assign(static_cast<std::size_t>(n), -1);
    current.edge.assign(static_cast<std::size_t>(x.edge_count()), 0);
    used.assign(static_cast<std::size_t>(n), false);
  }

  void assign_vertex(int i) {
    if (stopped) return;
    if (i == n) {
      assign_group(0);
      return;
    }
    for (int j = 0; j < n && !stopped; ++j) {
      if (used[static_cast<std::size_t>(j)] || invariant[static_cast<std::size_t>(j)] != invariant[static_cast<std::size_t>(i)]) continue;
      bool ok = true;
      for (int k = 0; k < i && ok; ++k) {
        ok = mult[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] ==
             mult[static_cast<std::size_t>(j)][static_cast<std::size_t>(current.vertex[static_cast<std::size_t>(k)])];
      }
      if (!ok) continue;
      used[static_cast<std::size_t>(j)] = true;
      current.vertex[static_cast<std::size_t>(i)] = j;
      assign_vertex(i + 1);
      used[static_cast<std::size_t>(j)] = false;
    }
    current.vertex[static_cast<std::size_t>(i)] = -1;
  }

  void assign_group(std::size_t g) {
    if (stopped) return;
    if (g == group_list.size()) {
      if (!visit(current)) stopped = true;
      return;
    }
    const auto& [ends, src] = group_list[g];
    const int fu = current.vertex[static_cast<std::size_t>(ends.first)];
    const int fv = current.vertex[static_cast<std::size_t>(ends.second)];
    std::vector<int> target = groups.at(std::minmax(fu, fv));
    std::sort(target.begin(), target.end());
    const bool loop = ends.first == ends.second;
    const unsigned flips = loop ? (1u << src.size()) : 1u;
    do {
      for (unsigned mask = 0; mask < flips && !stopped; ++mask) {
        for (std::size_t k = 0; k < src.size(); ++k) {
          const int e = src[k], t = target[k];
          EdgeRef img = forward_ref(t);
          if (loop) {
            if (mask >> k & 1u) img = -img;
          } else if (x.edges()[static_cast<std::size_t>(t)].tail != current.vertex[static_cast<std::size_t>(x.edges()[static_cast<std::size_t>(e)].tail)]) {
            img = -img;
          }
          current.edge[static_cast<std::size_t>(e)] = img;
        }
        assign_group(g + 1);
      }
    } while (!stopped && std::next_permutation(target.begin(), target.end()));
  }
};

}  // namespace

void for_each_automorphism(const FiniteGraph& x, const std::function<bool(const GraphAutomorphism&)>& visit) {
  if (x.edge_count() > kMaxAutomorphismEdges) {
    throw SizeCapExceeded("automorphism enumeration is limited to " + std::to_string(kMaxAutomorphismEdges) + " edges");
  }
  AutomorphismSearch search(x, visit);
  search.assign_vertex(0);
}

std::vector<GraphAutomorphism> enumerate_automorphisms(const FiniteGraph& x, std::size_t cap) {
  std::vector<GraphAutomorphism> out;
  for_each_automorphism(x, [&](const GraphAutomorphism& f) {
    if (out.size() >= cap) throw SizeCapExceeded("more than " + std::to_string(cap) + " automorphisms");
    out.push_back(f);
    return true;
  });
  return out;
}

std::vector<EdgeRef> SpanningTree::path_from_root(int v) const {
  std::vector<EdgeRef> path;
  while (v != root) {
    path.push_back(parent[static_cast<std::size_t>(v)]);
    v = parent_vertex[static_cast<std::size_t>(v)];
  }
  std::reverse(path.begin(), path.end());
  return path;
}

namespace {

SpanningTree grow_tree(const FiniteGraph& x, const std::vector<bool>& allowed) {
  const auto nv = static_cast<std::size_t>(x.vertex_count());
  SpanningTree t;
  t.parent.assign(nv, 0);
  t.parent_vertex.assign(nv, -1);
  t.in_tree.assign(static_cast<std::size_t>(x.edge_count()), false);
  std::vector<bool> seen(nv, false);
  std::deque<int> queue{0};
  seen[0] = true;
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    for (EdgeRef r : x.directions_at(v)) {
      const auto e = static_cast<std::size_t>(edge_index(r));
      const int w = x.terminus(r);
      if (!allowed[e] || seen[static_cast<std::size_t>(w)]) continue;
      seen[static_cast<std::size_t>(w)] = true;
      t.in_tree[e] = true;
      t.parent[static_cast<std::size_t>(w)] = r;
      t.parent_vertex[static_cast<std::size_t>(w)] = v;
      queue.push_back(w);
    }
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end()) throw DisconnectedGraph("graph is not connected");
  t.cotree_position.assign(static_cast<std::size_t>(x.edge_count()), -1);
  for (int e = 0; e < x.edge_count(); ++e) {
    if (t.in_tree[static_cast<std::size_t>(e)]) continue;
    t.cotree_position[static_cast<std::size_t>(e)] = static_cast<int>(t.cotree.size());
    t.cotree.push_back(e);
  }
  return t;
}

}  // namespace

SpanningTree bfs_tree(const FiniteGraph& x) {
  return grow_tree(x, std::vector<bool>(static_cast<std::size_t>(x.edge_count()), true));
}

SpanningTree tree_from_edges(const FiniteGraph& x, const std::vector<int>& tree_edges) {
  std::vector<bool> allowed(static_cast<std::size_t>(x.edge_count()), false);
  for (int e : tree_edges) {
    if (e < 0 || e >= x.edge_count() || allowed[static_cast<std::size_t>(e)]) throw std::invalid_argument("bad tree edge index");
    allowed[static_cast<std::size_t>(e)] = true;
  }
  if (static_cast<int>(tree_edges.size()) != x.vertex_count() - 1) {
    throw std::invalid_argument("a spanning tree has one edge fewer than the vertex count");
  }
  SpanningTree t;
  try {
    t = grow_tree(x, allowed);
  } catch (const DisconnectedGraph&) {
    throw std::invalid_argument("tree edges do not span the graph");
  }
  // |V|-1 edges reaching every vertex: all of them are tree edges.
  return t;
}

std::vector<EdgeRef> fundamental_cycle(const FiniteGraph& x, const SpanningTree& t, int cotree_edge) {
  const EdgeRef r = forward_ref(cotree_edge);
  std::vector<EdgeRef> path = t.path_from_root(x.origin(r));
  path.push_back(r);
  auto back = t.path_from_root(x.terminus(r));
  for (auto it = back.rbegin(); it != back.rend(); ++it) path.push_back(-*it);
  return path;
}

IntVector cycle_coordinates(const SpanningTree& t, const std::vector<EdgeRef>& path) {
  IntVector c(t.cotree.size(), 0);
  for (EdgeRef r : path) {
    const int pos = t.cotree_position[static_cast<std::size_t>(edge_index(r))];
    if (pos >= 0) c[static_cast<std::size_t>(pos)] += r > 0 ? 1 : -1;
  }
  return c;
}

IntegerMatrix h1_action(const FiniteGraph& x, const SpanningTree& t, const GraphAutomorphism& f) {
  const int b = static_cast<int>(t.cotree.size());
  IntegerMatrix m(b);
  for (int j = 0; j < b; ++j) {
    auto cycle = fundamental_cycle(x, t, t.cotree[static_cast<std::size_t>(j)]);
    for (auto& r : cycle) r = f(r);
    const auto col = cycle_coordinates(t, cycle);
    for (int i = 0; i < b; ++i) m(i, j) = col[static_cast<std::size_t>(i)];
  }
  return m;
}

Mod3Matrix h1_action_mod3(const FiniteGraph& x, const GraphAutomorphism& f) {
  return Mod3Matrix::reduce(h1_action(x, bfs_tree(x), f));
}

std::string to_string(IvanovOutcome outcome) {
  switch (outcome) {
    case IvanovOutcome::HypothesisFails:
      return "HypothesisFails";
    case IvanovOutcome::Identity:
      return "Identity";
    case IvanovOutcome::CircleRotation:
      return "CircleRotation";
  }
  return "?";
}

IvanovOutcome ivanov_check(const FiniteGraph& x, const GraphAutomorphism& f) {
  if (!x.connected()) throw DisconnectedGraph("ivanov_check needs a connected graph");
  for (int v = 0; v < x.vertex_count(); ++v) {
    if (x.valence(v) == 1 && f.vertex[static_cast<std::size_t>(v)] != v) return IvanovOutcome::HypothesisFails;
  }
  if (!h1_action_mod3(x, f).is_identity()) return IvanovOutcome::HypothesisFails;
  if (f.is_identity()) return IvanovOutcome::Identity;

  bool circle = x.edge_count() > 0;
  for (int v = 0; v < x.vertex_count() && circle; ++v) circle = x.valence(v) == 2;
  if (circle) {
    // c_0 .. c_{m-1}: the circle read once around from edge 0
    std::vector<EdgeRef> seq{forward_ref(0)};
    while (true) {
      const EdgeRef cur = seq.back();
      EdgeRef next = 0;
      for (EdgeRef r : x.directions_at(x.terminus(cur))) {
        if (r != -cur) next = r;
      }
      if (next == seq.front()) break;
      seq.push_back(next);
    }
    const auto m = seq.size();
    const auto pos = std::find(seq.begin(), seq.end(), f(seq.front()));
    if (static_cast<int>(m) == x.edge_count() && pos != seq.end()) {
      const auto s = static_cast<std::size_t>(pos - seq.begin());
      bool rotation = true;
      for (std::size_t i = 0; i < m && rotation; ++i) rotation = f(seq[i]) == seq[(i + s) % m];
      if (rotation) return IvanovOutcome::CircleRotation;
    }
  }
  throw TheoremViolation("automorphism fixes leaves and H_1 mod 3 but is neither trivial nor a circle rotation: " +
                         to_text(f));
}

std::vector<int> canonical_key(const FiniteGraph& x) {
  const int n = x.vertex_count();
  std::vector<std::pair<std::pair<int, int>, int>> tagged;
  for (int v = 0; v < n; ++v) tagged.push_back({{x.valence(v), x.loops_at(v)}, v});
  std::sort(tagged.begin(), tagged.end());
  std::vector<std::vector<int>> mult(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), 0));
  for (const auto& e : x.edges()) {
    ++mult[static_cast<std::size_t>(e.tail)][static_cast<std::size_t>(e.head)];
    if (e.tail != e.head) ++mult[static_cast<std::size_t>(e.head)][static_cast<std::size_t>(e.tail)];
  }
  // blocks of equal invariant, permuted independently
  std::vector<std::vector<int>> blocks;
  for (std::size_t i = 0; i < tagged.size(); ++i) {
    if (i == 0 || tagged[i].first != tagged[i - 1].first) blocks.emplace_back();
    blocks.back().push_back(tagged[i].second);
  }
  std::vector<int> best;
  std::vector<int> order;
  std::function<void(std::size_t)> go = [&](std::size_t b) {
    if (b == blocks.size()) {
      std::vector<int> key{n};
      for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
          key.push_back(mult[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])][static_cast<std::size_t>(order[static_cast<std::size_t>(j)])]);
        }
      }
      if (best.empty() || key < best) best = std::move(key);
      return;
    }
    auto block = blocks[b];
    std::sort(block.begin(), block.end());
    do {
      order.insert(order.end(), block.begin(), block.end());
      go(b + 1);
      order.resize(order.size() - block.size());
    } while (std::next_permutation(block.begin(), block.end()));
  };
  go(0);
  return best;
}

std::vector<FiniteGraph> connected_graphs(int max_edges) {
  std::vector<FiniteGraph> out{FiniteGraph(1, {})};
  std::vector<FiniteGraph> level{out.front()};
  for (int m = 1; m <= max_edges; ++m) {
    std::map<std::vector<int>, FiniteGraph> next;
    for (const auto& g : level) {
      const int n = g.vertex_count();
      auto add = [&](int u, int v, int vertices) {
        auto es = g.edges();
        es.push_back({u, v});
        FiniteGraph h(vertices, std::move(es));
        next.emplace(canonical_key(h), std::move(h));
      };
      for (int u = 0; u < n; ++u) {
        for (int v = u; v < n; ++v) add(u, v, n);
        add(u, n, n + 1);
      }
    }
    level.clear();
    for (auto& [key, g] : next) level.push_back(std::move(g));
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

namespace {

struct GraphTally {
  std::uint64_t automorphisms = 0, identity = 0, rotations = 0, fails = 0, violations = 0;
  std::vector<std::string> examples;
};

constexpr std::size_t kMaxLemmaExamples = 8;

}  // namespace

LemmaReport graph_lemma_check(int max_edges, Exec exec) {
  const auto start = std::chrono::steady_clock::now();
  const auto graphs = connected_graphs(max_edges);
  const auto tallies = map_indices<GraphTally>(graphs.size(), exec, [&](std::size_t i) {
    GraphTally t;
    const auto& x = graphs[i];
    for_each_automorphism(x, [&](const GraphAutomorphism& f) {
      ++t.automorphisms;
      try {
        switch (ivanov_check(x, f)) {
          case IvanovOutcome::HypothesisFails:
            ++t.fails;
            break;
          case IvanovOutcome::Identity:
            ++t.identity;
            break;
          case IvanovOutcome::CircleRotation:
            ++t.rotations;
            break;
        }
      } catch (const TheoremViolation& e) {
        ++t.violations;
        if (t.examples.size() < kMaxLemmaExamples) t.examples.push_back(to_text(x) + e.what());
      }
      return true;
    });
    return t;
  });
  LemmaReport r;
  r.max_edges = max_edges;
  r.graphs = graphs.size();
  for (const auto& t : tallies) {
    r.automorphisms += t.automorphisms;
    r.identity += t.identity;
    r.rotations += t.rotations;
    r.hypothesis_fails += t.fails;
    r.violations += t.violations;
    for (const auto& ex : t.examples) {
      if (r.examples.size() < kMaxLemmaExamples) r.examples.push_back(ex);
    }
  }
  r.elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::string to_json(const LemmaReport& report) {
  nlohmann::ordered_json j;
  j["max_edges"] = report.max_edges;
  j["graphs"] = report.graphs;
  j["automorphisms"] = report.automorphisms;
  j["identity"] = report.identity;
  j["rotations"] = report.rotations;
  j["hypothesis_fails"] = report.hypothesis_fails;
  j["violations"] = report.violations;
  j["examples"] = report.examples;
  j["elapsed"] = report.elapsed;
  return j.dump(2);
}

namespace {

std::vector<std::string> content_lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    out.push_back(line);
  }
  return out;
}

}  // namespace

FiniteGraph parse_graph(const std::string& text) {
  const auto lines = content_lines(text);
  if (lines.empty()) throw ParseError("empty graph text");
  std::istringstream head(lines.front());
  std::string tag;
  int n = 0;
  if (!(head >> tag >> n) || tag != "V") throw ParseError("graph text must start with 'V n'");
  std::vector<Edge> es;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    std::istringstream ls(lines[i]);
    Edge e;
    std::string extra;
    if (!(ls >> e.tail >> e.head) || (ls >> extra)) throw ParseError("bad edge line: " + lines[i]);
    es.push_back(e);
  }
  try {
    return FiniteGraph(n, std::move(es));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

std::string to_text(const FiniteGraph& x) {
  std::ostringstream out;
  out << "V " << x.vertex_count() << '\n';
  for (const auto& e : x.edges()) out << e.tail << ' ' << e.head << '\n';
  return out.str();
}

std::string edge_token(EdgeRef r) { return (r > 0 ? "e" : "E") + std::to_string(edge_index(r)); }

GraphAutomorphism parse_graph_automorphism(const FiniteGraph& x, const std::string& text) {
  const auto lines = content_lines(text);
  if (lines.size() != 2 && !(lines.size() == 1 && x.edge_count() == 0)) {
    throw ParseError("automorphism text needs a vertex line and an edge line");
  }
  GraphAutomorphism f;
  std::istringstream vs(lines[0]);
  int v;
  while (vs >> v) f.vertex.push_back(v);
  if (lines.size() == 2) {
    std::istringstream es(lines[1]);
    std::string tok;
    while (es >> tok) {
      if (tok.size() < 2 || (tok[0] != 'e' && tok[0] != 'E')) throw ParseError("bad edge token: " + tok);
      int idx = 0;
      try {
        idx = std::stoi(tok.substr(1));
      } catch (const std::exception&) {
        throw ParseError("bad edge token: " + tok);
      }
      f.edge.push_back(tok[0] == 'e' ? forward_ref(idx) : -forward_ref(idx));
    }
  }
  if (!is_automorphism(x, f)) throw ParseError("text does not describe an automorphism of the graph");
  return f;
}

std::string to_text(const GraphAutomorphism& f) {
  std::ostringstream out;
  for (std::size_t i = 0; i < f.vertex.size(); ++i) out << (i ? " " : "") << f.vertex[i];
  out << '\n';
  for (std::size_t i = 0; i < f.edge.size(); ++i) out << (i ? " " : "") << edge_token(f.edge[i]);
  out << '\n';
  return out.str();
}

}  // namespace aplab
