#pragma once

// Finite multigraphs (loops and parallel edges allowed), their automorphism
// groups, the induced action on H_1 and the leaf/homology triviality lemma.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "aplab/homology.hpp"
#include "aplab/parallel.hpp"

namespace aplab {

/// Oriented edge: +(e+1) runs edge e from tail to head, -(e+1) backwards.
using EdgeRef = int;

inline int edge_index(EdgeRef r) noexcept { return (r > 0 ? r : -r) - 1; }
inline EdgeRef forward_ref(int e) noexcept { return e + 1; }

struct Edge {
  int tail = 0;
  int head = 0;
  friend bool operator==(const Edge&, const Edge&) = default;
};

class FiniteGraph {
 public:
  FiniteGraph() = default;
  /// Throws std::invalid_argument on bad endpoints or a graph with no vertices.
  FiniteGraph(int vertices, std::vector<Edge> edges);

  static FiniteGraph rose(int petals);
  static FiniteGraph circle(int length);
  /// Two vertices joined by `strands` parallel edges.
  static FiniteGraph theta(int strands);

  int vertex_count() const noexcept { return vertices_; }
  int edge_count() const noexcept { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  int origin(EdgeRef r) const;
  int terminus(EdgeRef r) const;
  /// Loops count twice.
  int valence(int v) const;
  int loops_at(int v) const;
  /// Number of edges joining u and v (loops at u when u == v).
  int multiplicity(int u, int v) const;
  bool connected() const;
  /// Oriented edges with origin v, in edge order (forward before backward).
  std::vector<EdgeRef> directions_at(int v) const;

  friend bool operator==(const FiniteGraph&, const FiniteGraph&) = default;

 private:
  int vertices_ = 1;
  std::vector<Edge> edges_;
};

struct GraphAutomorphism {
  std::vector<int> vertex;    // vertex[v] = f(v)
  std::vector<EdgeRef> edge;  // edge[e] = f applied to the forward orientation of e

  EdgeRef operator()(EdgeRef r) const {
    const EdgeRef img = edge[static_cast<std::size_t>(edge_index(r))];
    return r > 0 ? img : -img;
  }
  bool is_identity() const;
  friend bool operator==(const GraphAutomorphism&, const GraphAutomorphism&) = default;
  friend auto operator<=>(const GraphAutomorphism&, const GraphAutomorphism&) = default;
};

GraphAutomorphism identity_automorphism(const FiniteGraph& x);
/// f o g.
GraphAutomorphism compose(const GraphAutomorphism& f, const GraphAutomorphism& g);
GraphAutomorphism inverse(const GraphAutomorphism& f);
/// Incidence-preserving bijection check.
bool is_automorphism(const FiniteGraph& x, const GraphAutomorphism& f);

inline constexpr int kMaxAutomorphismEdges = 10;
inline constexpr std::size_t kMaxAutomorphisms = std::size_t{1} << 21;

/// Visits every automorphism until `visit` returns false. Throws
/// SizeCapExceeded above kMaxAutomorphismEdges edges.
void for_each_automorphism(const FiniteGraph& x, const std::function<bool(const GraphAutomorphism&)>& visit);
/// Throws SizeCapExceeded above kMaxAutomorphismEdges edges or `cap` results.
std::vector<GraphAutomorphism> enumerate_automorphisms(const FiniteGraph& x, std::size_t cap = kMaxAutomorphisms);

struct SpanningTree {
  int root = 0;
  std::vector<EdgeRef> parent;  // oriented edge into v from its parent; 0 at the root
  std::vector<int> parent_vertex;
  std::vector<bool> in_tree;    // per edge
  std::vector<int> cotree;      // non-tree edges in index order: the H_1 basis
  std::vector<int> cotree_position;  // per edge, position in cotree or -1

  /// Tree path from the root to v.
  std::vector<EdgeRef> path_from_root(int v) const;
};

/// Breadth-first tree from vertex 0. Throws DisconnectedGraph.
SpanningTree bfs_tree(const FiniteGraph& x);
/// Tree from given edge indices; throws std::invalid_argument unless they form a spanning tree.
SpanningTree tree_from_edges(const FiniteGraph& x, const std::vector<int>& tree_edges);

/// Reduced-or-not closed path root -> o(e), e, t(e) -> root.
std::vector<EdgeRef> fundamental_cycle(const FiniteGraph& x, const SpanningTree& t, int cotree_edge);
/// Signed counts of cotree edges along a path.
IntVector cycle_coordinates(const SpanningTree& t, const std::vector<EdgeRef>& path);

/// Column j is f applied to the j-th fundamental cycle.
IntegerMatrix h1_action(const FiniteGraph& x, const SpanningTree& t, const GraphAutomorphism& f);
Mod3Matrix h1_action_mod3(const FiniteGraph& x, const GraphAutomorphism& f);

enum class IvanovOutcome { HypothesisFails, Identity, CircleRotation };

std::string to_string(IvanovOutcome outcome);

/// Classifies f under the hypothesis "fixes every leaf and acts trivially on
/// H_1(X; Z/3)". Throws TheoremViolation if the hypothesis holds and f is
/// neither the identity nor a rotation of a circle.
IvanovOutcome ivanov_check(const FiniteGraph& x, const GraphAutomorphism& f);

/// Isomorphism-invariant key: least adjacency encoding over vertex orders
/// that respect (valence, loops).
std::vector<int> canonical_key(const FiniteGraph& x);

/// Connected graphs with at most max_edges edges, one per isomorphism class,
/// in order of edge count then key. Includes the single vertex.
std::vector<FiniteGraph> connected_graphs(int max_edges);

struct LemmaReport {
  int max_edges = 0;
  std::uint64_t graphs = 0;
  std::uint64_t automorphisms = 0;
  std::uint64_t identity = 0;
  std::uint64_t rotations = 0;
  std::uint64_t hypothesis_fails = 0;
  std::uint64_t violations = 0;
  std::vector<std::string> examples;
  double elapsed = 0.0;
};

/// ivanov_check over every automorphism of every connected graph with at
/// most max_edges edges. TheoremViolation is counted, not propagated.
LemmaReport graph_lemma_check(int max_edges, Exec exec = Exec::Parallel);
std::string to_json(const LemmaReport& report);

// Text: "V n" then one "u v" line per edge; '#' starts a comment.
FiniteGraph parse_graph(const std::string& text);
std::string to_text(const FiniteGraph& x);
// Automorphism text: vertex images on one line, edge images ("e2", "E2" reversed) on the next.
GraphAutomorphism parse_graph_automorphism(const FiniteGraph& x, const std::string& text);
std::string to_text(const GraphAutomorphism& f);
std::string edge_token(EdgeRef r);

}  // namespace aplab
