#include "aplab/splittings.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "aplab/errors.hpp"
#include "aplab/homology.hpp"

namespace aplab {

namespace {

FreeAutomorphism marking_from(Alphabet alphabet, std::vector<Word> forward, std::optional<std::vector<Word>> inverse) {
  if (!inverse) {
    // signed permutation of letters: invert directly
    std::vector<Word> back(forward.size(), Word(alphabet));
    for (std::size_t i = 0; i < forward.size(); ++i) {
      if (forward[i].size() != 1) throw std::invalid_argument("marking is not a letter permutation; supply its inverse");
      const Letter l = forward[i].front();
      const auto j = static_cast<std::size_t>(std::abs(l) - 1);
      const Letter y = static_cast<Letter>(i + 1);
      back[j] = Word::letter(alphabet, l > 0 ? y : -y);
    }
    inverse = std::move(back);
  }
  return FreeAutomorphism::certify(std::move(forward), std::move(*inverse));
}

Word tau(const MarkedGraph& x, EdgeRef r) {
  const Word& w = x.edge_word(edge_index(r));
  return r > 0 ? w : w.inverse();
}

std::vector<Word> mapped(const FreeAutomorphism& phi, const std::vector<Word>& gens) {
  std::vector<Word> out;
  out.reserve(gens.size());
  for (const auto& g : gens) out.push_back(phi(g));
  return out;
}

// Trivial vertex groups: the tree is a lift of the spanning tree, so h pins
// every vertex image relative to the root; non-tree edges then need one
// common conjugator.
bool realizes_trivial(const MarkedGraph& x, const FreeAutomorphism& phi, const GraphAutomorphism& h) {
  const auto& t = x.tree();
  const auto nv = static_cast<std::size_t>(x.graph().vertex_count());
  std::vector<std::optional<Word>> delta(nv);
  delta[static_cast<std::size_t>(t.root)] = Word(x.alphabet());
  std::function<const Word&(int)> at = [&](int v) -> const Word& {
    auto& d = delta[static_cast<std::size_t>(v)];
    if (!d) d = at(t.parent_vertex[static_cast<std::size_t>(v)]) * tau(x, h(t.parent[static_cast<std::size_t>(v)]));
    return *d;
  };
  std::vector<std::pair<Word, Word>> pairs;
  for (int e : t.cotree) {
    const auto& ed = x.graph().edges()[static_cast<std::size_t>(e)];
    pairs.emplace_back(at(ed.tail) * tau(x, h(forward_ref(e))) * at(ed.head).inverse(), phi(x.edge_word(e)));
  }
  if (pairs.empty()) return true;
  return common_conjugator(pairs).has_value();
}

// Nontrivial vertex groups: each vertex image is pinned by its stabilizer
// (free factors are self-normalizing); every edge must then land on an edge,
// a double coset condition.
bool realizes_nontrivial(const MarkedGraph& x, const FreeAutomorphism& phi, const GraphAutomorphism& h) {
  const auto nv = static_cast<std::size_t>(x.graph().vertex_count());
  std::vector<Word> gamma;
  gamma.reserve(nv);
  for (std::size_t v = 0; v < nv; ++v) {
    const int hv = h.vertex[v];
    auto g = subgroup_conjugator(x.alphabet(), mapped(phi, x.vertex_group(static_cast<int>(v))), x.vertex_group(hv));
    if (!g) return false;
    gamma.push_back(std::move(*g));
  }
  for (int e = 0; e < x.graph().edge_count(); ++e) {
    const auto& ed = x.graph().edges()[static_cast<std::size_t>(e)];
    const Word probe =
        gamma[static_cast<std::size_t>(ed.tail)].inverse() * phi(x.edge_word(e)) * gamma[static_cast<std::size_t>(ed.head)];
    if (!in_double_coset(probe, x.vertex_group(h.vertex[static_cast<std::size_t>(ed.tail)]), tau(x, h(forward_ref(e))),
                         x.vertex_group(h.vertex[static_cast<std::size_t>(ed.head)]))) {
      return false;
    }
  }
  return true;
}

bool rank_compatible(const MarkedGraph& x, const GraphAutomorphism& h) {
  for (int v = 0; v < x.graph().vertex_count(); ++v) {
    if (x.vertex_rank(v) != x.vertex_rank(h.vertex[static_cast<std::size_t>(v)])) return false;
  }
  return true;
}

std::optional<GraphAutomorphism> find_realization(const MarkedGraph& x, const FreeAutomorphism& phi,
                                                  const std::vector<GraphAutomorphism>& candidates) {
  const bool trivial = x.all_vertex_groups_trivial();
  if (!trivial) {
    for (int v = 0; v < x.graph().vertex_count(); ++v) {
      if (x.vertex_rank(v) == 0) throw std::invalid_argument("invariance test needs vertex groups all trivial or all nontrivial");
    }
  }
  for (const auto& h : candidates) {
    if (!rank_compatible(x, h)) continue;
    if (trivial ? realizes_trivial(x, phi, h) : realizes_nontrivial(x, phi, h)) return h;
  }
  return std::nullopt;
}

std::vector<std::string> content_lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    out.push_back(line);
  }
  return out;
}

std::string power_text(const std::string& base, int k) { return k == 1 ? base : base + "^" + std::to_string(k); }

}  // namespace

MarkedGraph::MarkedGraph(Alphabet alphabet, FiniteGraph graph, std::vector<int> tree_edges, std::map<int, Word> edge_words,
                         std::vector<std::vector<Word>> vertex_groups, std::optional<std::vector<Word>> inverse)
    : alphabet_(alphabet),
      graph_(std::move(graph)),
      tree_(tree_from_edges(graph_, tree_edges)),
      vertex_groups_(std::move(vertex_groups)),
      marking_(FreeAutomorphism::identity(alphabet)) {
  const auto nv = static_cast<std::size_t>(graph_.vertex_count());
  if (vertex_groups_.empty()) vertex_groups_.resize(nv);
  if (vertex_groups_.size() != nv) throw std::invalid_argument("one vertex group per vertex");
  edge_words_.assign(static_cast<std::size_t>(graph_.edge_count()), Word(alphabet));
  for (auto& [e, w] : edge_words) {
    if (e < 0 || e >= graph_.edge_count() || tree_.in_tree[static_cast<std::size_t>(e)]) {
      throw std::invalid_argument("edge words are given for non-tree edges only");
    }
    if (w.alphabet() != alphabet) throw AlphabetMismatch("edge word over a different alphabet");
    edge_words_[static_cast<std::size_t>(e)] = w;
  }
  std::vector<Word> forward;
  for (int e : tree_.cotree) {
    if (!edge_words.count(e)) throw std::invalid_argument("missing word for non-tree edge " + std::to_string(e));
    forward.push_back(edge_words_[static_cast<std::size_t>(e)]);
  }
  for (std::size_t v = 0; v < nv; ++v) {
    for (const auto& g : vertex_groups_[v]) {
      if (g.alphabet() != alphabet) throw AlphabetMismatch("vertex generator over a different alphabet");
      forward.push_back(g);
    }
    if (vertex_groups_[v].empty() && graph_.valence(static_cast<int>(v)) == 1) {
      throw std::invalid_argument("valence-one vertex with trivial group");
    }
  }
  if (static_cast<int>(forward.size()) != alphabet.rank) {
    throw std::invalid_argument("non-tree edges plus vertex ranks must equal the ambient rank");
  }
  marking_ = marking_from(alphabet, std::move(forward), std::move(inverse));
}

MarkedGraph MarkedGraph::rose(Alphabet alphabet) {
  std::map<int, Word> words;
  for (int i = 0; i < alphabet.rank; ++i) words.emplace(i, Word::letter(alphabet, i + 1));
  return MarkedGraph(alphabet, FiniteGraph::rose(alphabet.rank), {}, std::move(words), {});
}

bool MarkedGraph::all_vertex_groups_trivial() const {
  return std::all_of(vertex_groups_.begin(), vertex_groups_.end(), [](const auto& g) { return g.empty(); });
}

int MarkedGraph::basis_index(int v, int i) const {
  int idx = static_cast<int>(tree_.cotree.size());
  for (int u = 0; u < v; ++u) idx += vertex_rank(u);
  if (i < 0 || i >= vertex_rank(v)) throw std::out_of_range("vertex generator index");
  return idx + i;
}

Word MarkedGraph::path_word(const EdgePath& p) const {
  Word w(alphabet_);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (edge_index(p[i]) < 0 || edge_index(p[i]) >= graph_.edge_count() || p[i] == 0) throw std::invalid_argument("bad edge in path");
    if (i > 0 && graph_.terminus(p[i - 1]) != graph_.origin(p[i])) throw std::invalid_argument("edge path is not connected");
    w = w * tau(*this, p[i]);
  }
  return w;
}

void check_continuity(const FiniteGraph& x, const GraphMap& f) {
  if (f.vertex.size() != static_cast<std::size_t>(x.vertex_count()) || f.edge.size() != x.edges().size()) {
    throw std::invalid_argument("graph map sizes do not match the graph");
  }
  for (int v : f.vertex) {
    if (v < 0 || v >= x.vertex_count()) throw std::invalid_argument("vertex image out of range");
  }
  for (std::size_t e = 0; e < f.edge.size(); ++e) {
    const auto& p = f.edge[e];
    int at = f.vertex[static_cast<std::size_t>(x.edges()[e].tail)];
    for (EdgeRef r : p) {
      if (r == 0 || edge_index(r) >= x.edge_count()) throw std::invalid_argument("edge image out of range");
      if (x.origin(r) != at) throw std::invalid_argument("edge image is not a path from the tail image");
      at = x.terminus(r);
    }
    if (at != f.vertex[static_cast<std::size_t>(x.edges()[e].head)]) {
      throw std::invalid_argument("edge image does not end at the head image");
    }
  }
}

EdgePath image_path(const GraphMap& f, const EdgePath& p) {
  EdgePath out;
  for (EdgeRef r : p) {
    const auto& img = f.edge.at(static_cast<std::size_t>(edge_index(r)));
    if (r > 0) {
      out.insert(out.end(), img.begin(), img.end());
    } else {
      for (auto it = img.rbegin(); it != img.rend(); ++it) out.push_back(-*it);
    }
  }
  return out;
}

FreeAutomorphism induced_automorphism(const MarkedGraph& x, const GraphMap& f, std::vector<Word> inverse_images) {
  if (!x.all_vertex_groups_trivial()) throw std::invalid_argument("graph maps need trivial vertex groups");
  check_continuity(x.graph(), f);
  // the image of each fundamental cycle, read through the marking, is the
  // image of the corresponding basis element up to one common conjugation
  std::vector<Word> on_basis;
  for (int e : x.tree().cotree) on_basis.push_back(x.path_word(image_path(f, fundamental_cycle(x.graph(), x.tree(), e))));
  std::vector<Word> forward;
  for (const auto& w : x.marking().backward()) forward.push_back(apply_endo(on_basis, w));
  return FreeAutomorphism::certify(std::move(forward), std::move(inverse_images));
}

OuterClass induced_outer(const MarkedGraph& x, const GraphMap& f, std::vector<Word> inverse_images) {
  return OuterClass(induced_automorphism(x, f, std::move(inverse_images)));
}

std::optional<GraphAutomorphism> invariance_test(const MarkedGraph& x, const FreeAutomorphism& phi) {
  if (phi.alphabet() != x.alphabet()) throw AlphabetMismatch("automorphism and marked graph over different alphabets");
  return find_realization(x, phi, enumerate_automorphisms(x.graph()));
}

OrbitOutcome splitting_orbit_period(const MarkedGraph& x, const FreeAutomorphism& phi, int max_iter, std::size_t length_cap) {
  if (phi.alphabet() != x.alphabet()) throw AlphabetMismatch("automorphism and marked graph over different alphabets");
  const auto candidates = enumerate_automorphisms(x.graph());
  OrbitOutcome out;
  FreeAutomorphism power = phi;
  for (int p = 1; p <= max_iter; ++p) {
    if (p > 1) power = compose(phi, power);
    out.iterations = p;
    out.sizes.push_back(power.image_length());
    if (power.image_length() > length_cap) {
      out.kind = OrbitOutcome::Kind::Blowup;
      return out;
    }
    if (find_realization(x, power, candidates)) {
      out.kind = OrbitOutcome::Kind::Period;
      out.period = p;
      return out;
    }
  }
  out.kind = OrbitOutcome::Kind::NoPeriodWithin;
  return out;
}

FreeFactorSystem induced_ffs(const MarkedGraph& x, const Subforest& forest) {
  const int nv = x.graph().vertex_count();
  std::vector<bool> in(static_cast<std::size_t>(nv), false);
  for (int v : forest.vertices) {
    if (v < 0 || v >= nv || in[static_cast<std::size_t>(v)]) throw std::invalid_argument("bad subforest vertex");
    in[static_cast<std::size_t>(v)] = true;
  }
  for (int v = 0; v < nv; ++v) {
    if (x.vertex_rank(v) > 0 && !in[static_cast<std::size_t>(v)]) {
      throw std::invalid_argument("subforest misses a vertex with nontrivial group");
    }
  }
  std::vector<int> comp(static_cast<std::size_t>(nv));
  std::iota(comp.begin(), comp.end(), 0);
  std::function<int(int)> find = [&](int v) {
    return comp[static_cast<std::size_t>(v)] == v ? v : comp[static_cast<std::size_t>(v)] = find(comp[static_cast<std::size_t>(v)]);
  };
  std::vector<std::vector<EdgeRef>> out_edges(static_cast<std::size_t>(nv));
  for (int e : forest.edges) {
    if (e < 0 || e >= x.graph().edge_count()) throw std::invalid_argument("bad subforest edge");
    const auto& ed = x.graph().edges()[static_cast<std::size_t>(e)];
    if (!in[static_cast<std::size_t>(ed.tail)] || !in[static_cast<std::size_t>(ed.head)]) {
      throw std::invalid_argument("subforest edge leaves the subforest vertices");
    }
    const int a = find(ed.tail), b = find(ed.head);
    if (a == b) throw std::invalid_argument("subforest edges contain a cycle");
    comp[static_cast<std::size_t>(a)] = b;
    out_edges[static_cast<std::size_t>(ed.tail)].push_back(forward_ref(e));
    out_edges[static_cast<std::size_t>(ed.head)].push_back(-forward_ref(e));
  }
  // Witness: the marking after conjugating each vertex letter by the graph-basis
  // word of its forest path. Those words use only edge letters, so this is a
  // partial conjugation and an automorphism.
  const Alphabet alphabet = x.alphabet();
  const auto& cotree_pos = x.tree().cotree_position;
  auto basis_word = [&](const EdgePath& p) {
    std::vector<Letter> ls;
    for (EdgeRef r : p) {
      const int pos = cotree_pos[static_cast<std::size_t>(edge_index(r))];
      if (pos >= 0) ls.push_back(r > 0 ? pos + 1 : -(pos + 1));
    }
    return Word::reduce(alphabet, ls);
  };
  std::vector<Word> kappa_fwd, kappa_back;
  for (int i = 1; i <= alphabet.rank; ++i) {
    kappa_fwd.push_back(Word::letter(alphabet, i));
    kappa_back.push_back(Word::letter(alphabet, i));
  }
  std::vector<std::vector<int>> blocks;
  std::vector<bool> done(static_cast<std::size_t>(nv), false);
  for (int root : forest.vertices) {
    if (done[static_cast<std::size_t>(root)]) continue;
    std::vector<int> block;
    std::vector<std::pair<int, EdgePath>> stack{{root, {}}};
    done[static_cast<std::size_t>(root)] = true;
    while (!stack.empty()) {
      auto [v, path] = std::move(stack.back());
      stack.pop_back();
      const Word c = basis_word(path);
      for (int i = 0; i < x.vertex_rank(v); ++i) {
        const int j = x.basis_index(v, i);
        const Word y = Word::letter(alphabet, j + 1);
        kappa_fwd[static_cast<std::size_t>(j)] = c * y * c.inverse();
        kappa_back[static_cast<std::size_t>(j)] = c.inverse() * y * c;
        block.push_back(j + 1);
      }
      for (EdgeRef r : out_edges[static_cast<std::size_t>(v)]) {
        const int w = x.graph().terminus(r);
        if (done[static_cast<std::size_t>(w)]) continue;
        done[static_cast<std::size_t>(w)] = true;
        EdgePath next = path;
        next.push_back(r);
        stack.emplace_back(w, std::move(next));
      }
    }
    if (!block.empty()) blocks.push_back(std::move(block));
  }
  const auto kappa = FreeAutomorphism::certify(std::move(kappa_fwd), std::move(kappa_back));
  return FreeFactorSystem(compose(x.marking(), kappa), std::move(blocks));
}

Subforest vertex_forest(const MarkedGraph& x) {
  Subforest s;
  s.vertices.resize(static_cast<std::size_t>(x.graph().vertex_count()));
  std::iota(s.vertices.begin(), s.vertices.end(), 0);
  return s;
}

std::vector<std::vector<int>> vertex_homology_image(const MarkedGraph& x, int v) {
  std::vector<IntVector> vs;
  for (const auto& g : x.vertex_group(v)) vs.push_back(exponent_vector(g));
  if (vs.empty()) return {};
  return mod3_span(vs);
}

TwistDescriptor twist_descriptor(const MarkedGraph& x) {
  TwistDescriptor d;
  std::vector<std::string> factors;
  for (int v = 0; v < x.graph().vertex_count(); ++v) {
    VertexTwist t;
    t.vertex = v;
    t.rank = x.vertex_rank(v);
    t.valence = x.graph().valence(v);
    if (t.rank == 0) {
      t.factor = "1";
    } else if (t.rank == 1) {
      t.center_rank = 1;
      t.factor = t.valence > 1 ? power_text("Z", t.valence - 1) : "1";
    } else {
      t.factor = power_text("F_" + std::to_string(t.rank), t.valence);
    }
    if (t.factor != "1") factors.push_back(t.factor);
    d.vertices.push_back(std::move(t));
  }
  if (factors.empty()) {
    d.product = "1";
  } else {
    for (std::size_t i = 0; i < factors.size(); ++i) d.product += (i ? " x " : "") + factors[i];
  }
  return d;
}

std::string suspension_presentation(const FreeAutomorphism& phi) {
  if (phi.rank() >= 20) throw std::invalid_argument("stable letter t collides with a generator name");
  auto render = [](const Word& w) {
    if (w.empty()) return std::string("1");
    std::string s;
    for (Letter l : w.letters()) {
      s += letter_char(l > 0 ? l : -l);
      if (l < 0) s += "^-1";
    }
    return s;
  };
  std::string out = "<";
  for (int i = 1; i <= phi.rank(); ++i) out += std::string(1, letter_char(i)) + ",";
  out += "t | ";
  for (int i = 1; i <= phi.rank(); ++i) {
    const char c = letter_char(i);
    out += std::string("t") + c + "t^-1=" + render(phi.image(i)) + (i < phi.rank() ? ", " : "");
  }
  return out + ">";
}

MarkedGraph parse_marked_graph(const std::string& text) {
  int rank = -1, vertices = -1;
  std::vector<Edge> edges;
  std::vector<int> tree;
  std::map<int, std::string> edge_text;
  std::map<int, std::vector<std::string>> vertex_text;
  std::optional<std::vector<std::string>> inverse_text;
  for (const auto& line : content_lines(text)) {
    std::istringstream in(line);
    std::string tag;
    in >> tag;
    std::vector<std::string> rest;
    for (std::string tok; in >> tok;) rest.push_back(tok);
    try {
      if (tag == "rank" && rest.size() == 1) {
        rank = std::stoi(rest[0]);
      } else if (tag == "V" && rest.size() == 1) {
        vertices = std::stoi(rest[0]);
      } else if (tag == "tree") {
        for (const auto& t : rest) tree.push_back(std::stoi(t));
      } else if (tag == "edge" && rest.size() == 2) {
        edge_text[std::stoi(rest[0])] = rest[1];
      } else if (tag == "vertex" && !rest.empty()) {
        auto& gens = vertex_text[std::stoi(rest[0])];
        gens.insert(gens.end(), rest.begin() + 1, rest.end());
      } else if (tag == "inverse") {
        inverse_text = rest;
      } else if (rest.size() == 1 && !tag.empty() && std::isdigit(static_cast<unsigned char>(tag[0]))) {
        edges.push_back({std::stoi(tag), std::stoi(rest[0])});
      } else {
        throw ParseError("unrecognized marked graph line: " + line);
      }
    } catch (const std::logic_error&) {
      throw ParseError("bad number in marked graph line: " + line);
    }
  }
  if (rank < 1 || vertices < 1) throw ParseError("marked graph needs 'rank N' and 'V n'");
  const Alphabet alphabet(rank);
  try {
    std::map<int, Word> edge_words;
    for (const auto& [e, w] : edge_text) edge_words.emplace(e, parse_word(alphabet, w));
    std::vector<std::vector<Word>> groups(static_cast<std::size_t>(vertices));
    for (const auto& [v, gens] : vertex_text) {
      if (v < 0 || v >= vertices) throw ParseError("vertex index out of range");
      for (const auto& g : gens) groups[static_cast<std::size_t>(v)].push_back(parse_word(alphabet, g));
    }
    std::optional<std::vector<Word>> inverse;
    if (inverse_text) {
      inverse.emplace();
      for (const auto& w : *inverse_text) inverse->push_back(parse_word(alphabet, w));
    }
    return MarkedGraph(alphabet, FiniteGraph(vertices, std::move(edges)), std::move(tree), std::move(edge_words),
                       std::move(groups), std::move(inverse));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

std::string to_text(const MarkedGraph& x) {
  std::ostringstream out;
  out << "rank " << x.alphabet().rank << '\n' << to_text(x.graph()) << "tree";
  for (std::size_t e = 0; e < x.tree().in_tree.size(); ++e) {
    if (x.tree().in_tree[e]) out << ' ' << e;
  }
  out << '\n';
  for (int e : x.tree().cotree) out << "edge " << e << ' ' << to_string(x.edge_word(e)) << '\n';
  for (int v = 0; v < x.graph().vertex_count(); ++v) {
    if (x.vertex_rank(v) == 0) continue;
    out << "vertex " << v;
    for (const auto& g : x.vertex_group(v)) out << ' ' << to_string(g);
    out << '\n';
  }
  out << "inverse";
  for (const auto& w : x.marking().backward()) out << ' ' << to_string(w);
  out << '\n';
  return out.str();
}

}  // namespace aplab
