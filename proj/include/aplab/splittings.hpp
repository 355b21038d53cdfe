#pragma once

// Marked graphs of groups with trivial edge groups, read as free splittings
// of F_N: invariance under outer automorphisms, induced free factor systems,
// vertex homology, twist groups and mapping-torus presentations.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "aplab/aut.hpp"
#include "aplab/graphs.hpp"
#include "aplab/subgroups.hpp"

namespace aplab {

using EdgePath = std::vector<EdgeRef>;

/// Graph basis: cotree edges in index order, then vertex-group generators in
/// vertex order. The marking sends it to F_N.
class MarkedGraph {
 public:
  /// edge_words gives the marking of each non-tree edge; vertex_groups[v]
  /// lists a free basis of the vertex group as F_N words. inverse gives each
  /// x_i as a word in the graph basis; it may be omitted when every marking
  /// word is a single letter.
  /// Throws std::invalid_argument on bookkeeping or minimality failures and
  /// CompositeNotIdentity when the inverse does not certify.
  MarkedGraph(Alphabet alphabet, FiniteGraph graph, std::vector<int> tree_edges, std::map<int, Word> edge_words,
              std::vector<std::vector<Word>> vertex_groups, std::optional<std::vector<Word>> inverse = std::nullopt);

  /// One vertex, petal i marked x_i.
  static MarkedGraph rose(Alphabet alphabet);

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  const FiniteGraph& graph() const noexcept { return graph_; }
  const SpanningTree& tree() const noexcept { return tree_; }
  /// Translation of edge e: 1 on tree edges.
  const Word& edge_word(int e) const { return edge_words_.at(static_cast<std::size_t>(e)); }
  const std::vector<Word>& vertex_group(int v) const { return vertex_groups_.at(static_cast<std::size_t>(v)); }
  int vertex_rank(int v) const { return static_cast<int>(vertex_group(v).size()); }
  bool all_vertex_groups_trivial() const;
  const FreeAutomorphism& marking() const noexcept { return marking_; }
  /// Graph-basis index (0-based) of generator i of vertex v.
  int basis_index(int v, int i) const;

  /// Product of edge translations; throws std::invalid_argument on a broken path.
  Word path_word(const EdgePath& p) const;

 private:
  Alphabet alphabet_;
  FiniteGraph graph_;
  SpanningTree tree_;
  std::vector<Word> edge_words_;
  std::vector<std::vector<Word>> vertex_groups_;
  FreeAutomorphism marking_;
};

/// Cellular map on the underlying graph: vertices to vertices, edges to paths.
struct GraphMap {
  std::vector<int> vertex;
  std::vector<EdgePath> edge;
};

/// Throws std::invalid_argument unless every edge image runs from the image
/// of its tail to the image of its head.
void check_continuity(const FiniteGraph& x, const GraphMap& f);
/// Concatenated images, untightened.
EdgePath image_path(const GraphMap& f, const EdgePath& p);

/// Automorphism of F_N carried by f through the marking, certified against
/// the supplied inverse images. Vertex groups must be trivial.
FreeAutomorphism induced_automorphism(const MarkedGraph& x, const GraphMap& f, std::vector<Word> inverse_images);
OuterClass induced_outer(const MarkedGraph& x, const GraphMap& f, std::vector<Word> inverse_images);

/// A graph automorphism realizing phi on the Bass-Serre tree of x, if any.
/// Exact when the vertex groups are all trivial or all nontrivial; throws
/// std::invalid_argument for mixed data.
std::optional<GraphAutomorphism> invariance_test(const MarkedGraph& x, const FreeAutomorphism& phi);
inline std::optional<GraphAutomorphism> invariance_test(const MarkedGraph& x, const OuterClass& phi) {
  return invariance_test(x, phi.representative());
}

/// Least p <= max_iter with x invariant under phi^p. Blowup when the image
/// length of phi^p exceeds length_cap.
OrbitOutcome splitting_orbit_period(const MarkedGraph& x, const FreeAutomorphism& phi, int max_iter = kDefaultMaxIter,
                                    std::size_t length_cap = kDefaultLengthCap);

struct Subforest {
  std::vector<int> vertices;
  std::vector<int> edges;
};

/// Vertex groups of each component glued along the forest edges. Components
/// with trivial group are dropped. Throws std::invalid_argument unless the
/// edges form a forest on the vertices and every nontrivial vertex is included.
FreeFactorSystem induced_ffs(const MarkedGraph& x, const Subforest& forest);
/// All vertices, no edges.
Subforest vertex_forest(const MarkedGraph& x);

/// Row-reduced span mod 3 of the abelianized vertex-group generators.
std::vector<std::vector<int>> vertex_homology_image(const MarkedGraph& x, int v);

struct VertexTwist {
  int vertex = 0;
  int rank = 0;
  int valence = 0;
  int center_rank = 0;
  std::string factor;  // G_v^{n_v} / Z(G_v), "1" when trivial
};

struct TwistDescriptor {
  std::vector<VertexTwist> vertices;
  std::string product;  // nontrivial factors joined by " x ", or "1"
};

TwistDescriptor twist_descriptor(const MarkedGraph& x);

/// <x_1..x_N,t | t x_i t^-1 = phi(x_i)> with inverses written x^-1.
std::string suspension_presentation(const FreeAutomorphism& phi);

/// Sections: "rank N", "V n" and edge lines "u v", "tree e...", "edge e w",
/// "vertex v w...", "inverse w_1 ... w_N". Throws ParseError.
MarkedGraph parse_marked_graph(const std::string& text);
std::string to_text(const MarkedGraph& x);

}  // namespace aplab
