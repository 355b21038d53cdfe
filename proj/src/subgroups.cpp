#include "aplab/subgroups.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "aplab/errors.hpp"
#include "aplab/homology.hpp"

namespace aplab {

namespace {

// Slot of a signed letter; flipping the sign toggles bit 0.
int slot(Letter l) { return letter_order(l); }
Letter slot_letter(int s) { return (s % 2 == 0) ? s / 2 + 1 : -(s / 2 + 1); }

// Folded graph under construction, with union-find on vertices.
class RawCore {
 public:
  explicit RawCore(Alphabet alphabet) : alphabet_(alphabet), slots_(2 * alphabet.rank) { add_vertex(); }

  RawCore(Alphabet alphabet, const std::vector<Word>& generators) : RawCore(alphabet) {
    for (const auto& g : generators) add_path(g, true);
    fold();
  }

  /// Reads w from the basepoint; a closed path returns to it. Returns the end vertex.
  int add_path(const Word& w, bool closed) {
    if (w.alphabet() != alphabet_) throw AlphabetMismatch("generator over a different alphabet");
    int cur = 0;
    const auto& ls = w.letters();
    for (std::size_t i = 0; i < ls.size(); ++i) {
      const int next = (closed && i + 1 == ls.size()) ? 0 : add_vertex();
      set(cur, slot(ls[i]), next);
      set(next, slot(-ls[i]), cur);
      cur = next;
    }
    return cur;
  }

  /// Cyclic core of phi(H) from a folded, pruned core of H: each edge is
  /// replaced by a path reading the image of its label, then everything folds.
  static RawCore image(const RawCore& src, const FreeAutomorphism& phi) {
    RawCore out(src.alphabet_);
    std::vector<int> to(src.adj_.size(), -1);
    to[static_cast<std::size_t>(src.base_)] = 0;
    for (std::size_t v = 0; v < src.adj_.size(); ++v) {
      if (src.alive_[v] && static_cast<int>(v) != src.base_) to[v] = out.add_vertex();
    }
    for (std::size_t v = 0; v < src.adj_.size(); ++v) {
      if (!src.alive_[v]) continue;
      for (int s = 0; s < src.slots_; s += 2) {
        const int t = src.adj_[v][static_cast<std::size_t>(s)];
        if (t >= 0) out.add_path_between(to[v], to[static_cast<std::size_t>(t)], phi.image(slot_letter(s)));
      }
    }
    out.fold();
    out.prune(true);
    return out;
  }

  /// Reads w from u and ends at v.
  void add_path_between(int u, int v, const Word& w) {
    const auto& ls = w.letters();
    if (ls.empty()) {
      pending_.emplace_back(u, v);
      return;
    }
    int cur = u;
    for (std::size_t i = 0; i < ls.size(); ++i) {
      const int next = i + 1 == ls.size() ? v : add_vertex();
      set(cur, slot(ls[i]), next);
      set(next, slot(-ls[i]), cur);
      cur = next;
    }
  }

  void fold() {
    while (!pending_.empty()) {
      auto [x, y] = pending_.back();
      pending_.pop_back();
      x = find(x);
      y = find(y);
      if (x == y) continue;
      parent_[static_cast<std::size_t>(y)] = x;
      for (int s = 0; s < slots_; ++s) {
        const int t = adj_[static_cast<std::size_t>(y)][static_cast<std::size_t>(s)];
        if (t >= 0) set(x, s, t);
      }
    }
    // compress to representatives
    alive_.assign(parent_.size(), false);
    rep_.assign(parent_.size(), -1);
    for (std::size_t v = 0; v < parent_.size(); ++v) {
      rep_[v] = find(static_cast<int>(v));
      if (rep_[v] != static_cast<int>(v)) continue;
      alive_[v] = true;
      for (auto& t : adj_[v]) {
        if (t >= 0) t = find(t);
      }
    }
    base_ = find(0);
  }

  /// Representative of a vertex returned by add_path, after fold().
  int rep(int v) const { return rep_.at(static_cast<std::size_t>(v)); }
  bool alive(int v) const { return alive_[static_cast<std::size_t>(v)]; }
  int target(int v, int s) const { return adj_[static_cast<std::size_t>(v)][static_cast<std::size_t>(s)]; }
  int slots() const { return slots_; }
  const Alphabet& alphabet() const { return alphabet_; }

  /// Label of a shortest path from u to v, if one exists.
  std::optional<Word> path_word(int u, int v) const {
    std::vector<int> from(adj_.size(), -2), via(adj_.size(), -1);
    std::deque<int> queue{u};
    from[static_cast<std::size_t>(u)] = -1;
    while (!queue.empty()) {
      const int x = queue.front();
      queue.pop_front();
      if (x == v) break;
      for (int s = 0; s < slots_; ++s) {
        const int t = target(x, s);
        if (t < 0 || from[static_cast<std::size_t>(t)] != -2) continue;
        from[static_cast<std::size_t>(t)] = x;
        via[static_cast<std::size_t>(t)] = s;
        queue.push_back(t);
      }
    }
    if (from[static_cast<std::size_t>(v)] == -2) return std::nullopt;
    std::vector<Letter> ls;
    for (int x = v; x != u; x = from[static_cast<std::size_t>(x)]) ls.push_back(slot_letter(via[static_cast<std::size_t>(x)]));
    std::reverse(ls.begin(), ls.end());
    return Word::reduce(alphabet_, ls);
  }

  /// Removes valence-1 vertices other than the basepoint (all of them when cyclic).
  void prune(bool cyclic) {
    std::vector<int> valence(adj_.size(), 0);
    std::deque<int> queue;
    for (std::size_t v = 0; v < adj_.size(); ++v) {
      if (!alive_[v]) continue;
      for (int t : adj_[v]) valence[v] += t >= 0;
    }
    auto prunable = [&](int v) {
      return alive_[static_cast<std::size_t>(v)] && valence[static_cast<std::size_t>(v)] == 1 && (cyclic || v != base_);
    };
    for (std::size_t v = 0; v < adj_.size(); ++v) {
      if (prunable(static_cast<int>(v))) queue.push_back(static_cast<int>(v));
    }
    while (!queue.empty()) {
      const int v = queue.front();
      queue.pop_front();
      if (!prunable(v)) continue;
      for (int s = 0; s < slots_; ++s) {
        int& t = adj_[static_cast<std::size_t>(v)][static_cast<std::size_t>(s)];
        if (t < 0) continue;
        adj_[static_cast<std::size_t>(t)][static_cast<std::size_t>(s ^ 1)] = -1;
        --valence[static_cast<std::size_t>(t)];
        if (prunable(t)) queue.push_back(t);
        t = -1;
      }
      valence[static_cast<std::size_t>(v)] = 0;
      alive_[static_cast<std::size_t>(v)] = false;
      if (v == base_) base_ = -1;
    }
    if (base_ < 0) {
      // cyclic pruning removed the basepoint: re-anchor anywhere, or keep a lone vertex
      for (std::size_t v = 0; v < adj_.size() && base_ < 0; ++v) {
        if (alive_[v]) base_ = static_cast<int>(v);
      }
      if (base_ < 0) {
        alive_[0] = true;
        std::fill(adj_[0].begin(), adj_[0].end(), -1);
        base_ = 0;
      }
    }
  }

  std::size_t vertex_count() const { return static_cast<std::size_t>(std::count(alive_.begin(), alive_.end(), true)); }

  std::size_t edge_count() const {
    std::size_t half = 0;
    for (std::size_t v = 0; v < adj_.size(); ++v) {
      if (!alive_[v]) continue;
      for (int t : adj_[v]) half += t >= 0;
    }
    return half / 2;
  }

  std::vector<int> alive_vertices() const {
    std::vector<int> out;
    for (std::size_t v = 0; v < adj_.size(); ++v) {
      if (alive_[v]) out.push_back(static_cast<int>(v));
    }
    return out;
  }

  int base() const { return base_; }

  /// BFS numbering from start; key = [V, then per vertex per slot the target or -1].
  std::pair<std::vector<int>, std::vector<int>> numbering(int start) const {
    std::vector<int> index(adj_.size(), -1), order{start};
    index[static_cast<std::size_t>(start)] = 0;
    for (std::size_t i = 0; i < order.size(); ++i) {
      for (int t : adj_[static_cast<std::size_t>(order[i])]) {
        if (t >= 0 && index[static_cast<std::size_t>(t)] < 0) {
          index[static_cast<std::size_t>(t)] = static_cast<int>(order.size());
          order.push_back(t);
        }
      }
    }
    std::vector<int> key{static_cast<int>(order.size())};
    key.reserve(1 + order.size() * static_cast<std::size_t>(slots_));
    for (int v : order) {
      for (int t : adj_[static_cast<std::size_t>(v)]) key.push_back(t >= 0 ? index[static_cast<std::size_t>(t)] : -1);
    }
    return {std::move(key), std::move(order)};
  }

  /// Spanning-tree basis at start.
  std::vector<Word> basis_at(int start) const {
    std::vector<Word> path(adj_.size(), Word(alphabet_));
    std::vector<bool> seen(adj_.size(), false);
    std::vector<std::vector<bool>> tree(adj_.size(), std::vector<bool>(static_cast<std::size_t>(slots_), false));
    std::vector<int> order{start};
    seen[static_cast<std::size_t>(start)] = true;
    for (std::size_t i = 0; i < order.size(); ++i) {
      const int v = order[i];
      for (int s = 0; s < slots_; ++s) {
        const int t = adj_[static_cast<std::size_t>(v)][static_cast<std::size_t>(s)];
        if (t < 0 || seen[static_cast<std::size_t>(t)]) continue;
        seen[static_cast<std::size_t>(t)] = true;
        tree[static_cast<std::size_t>(v)][static_cast<std::size_t>(s)] = true;
        tree[static_cast<std::size_t>(t)][static_cast<std::size_t>(s ^ 1)] = true;
        path[static_cast<std::size_t>(t)] = path[static_cast<std::size_t>(v)] * Word::letter(alphabet_, slot_letter(s));
        order.push_back(t);
      }
    }
    std::vector<Word> out;
    for (int v : order) {
      for (int s = 0; s < slots_; s += 2) {
        const int t = adj_[static_cast<std::size_t>(v)][static_cast<std::size_t>(s)];
        if (t < 0 || tree[static_cast<std::size_t>(v)][static_cast<std::size_t>(s)]) continue;
        out.push_back(path[static_cast<std::size_t>(v)] * Word::letter(alphabet_, slot_letter(s)) *
                      path[static_cast<std::size_t>(t)].inverse());
      }
    }
    return out;
  }

 private:
  int add_vertex() {
    parent_.push_back(static_cast<int>(parent_.size()));
    adj_.emplace_back(static_cast<std::size_t>(slots_), -1);
    return parent_.back();
  }

  int find(int v) {
    while (parent_[static_cast<std::size_t>(v)] != v) {
      parent_[static_cast<std::size_t>(v)] = parent_[static_cast<std::size_t>(parent_[static_cast<std::size_t>(v)])];
      v = parent_[static_cast<std::size_t>(v)];
    }
    return v;
  }

  void set(int u, int s, int v) {
    u = find(u);
    int& a = adj_[static_cast<std::size_t>(u)][static_cast<std::size_t>(s)];
    if (a < 0) {
      a = v;
    } else if (find(a) != find(v)) {
      pending_.emplace_back(a, v);
    }
  }

  Alphabet alphabet_;
  int slots_;
  std::vector<int> parent_;
  std::vector<std::vector<int>> adj_;
  std::vector<bool> alive_;
  std::vector<std::pair<int, int>> pending_;
  std::vector<int> rep_;
  int base_ = 0;
};

}  // namespace

StallingsCore StallingsCore::fold(Alphabet alphabet, const std::vector<Word>& generators) {
  RawCore raw(alphabet, generators);
  raw.prune(false);
  const auto [key, order] = raw.numbering(raw.base());
  StallingsCore core;
  core.alphabet_ = alphabet;
  core.vertices_ = static_cast<int>(order.size());
  const int slots = 2 * alphabet.rank;
  core.adjacency_.assign(order.size(), std::vector<int>(static_cast<std::size_t>(slots), -1));
  for (std::size_t v = 0; v < order.size(); ++v) {
    for (int s = 0; s < slots; ++s) {
      const int t = key[1 + v * static_cast<std::size_t>(slots) + static_cast<std::size_t>(s)];
      core.adjacency_[v][static_cast<std::size_t>(s)] = t;
      if (t >= 0 && s % 2 == 0) core.edges_.push_back({static_cast<int>(v), slot_letter(s), t});
    }
  }
  std::sort(core.edges_.begin(), core.edges_.end());
  return core;
}

std::optional<int> StallingsCore::follow(int v, Letter l) const {
  if (!alphabet_.contains(l)) throw InvalidLetter("letter outside the core's alphabet");
  const int t = adjacency_.at(static_cast<std::size_t>(v))[static_cast<std::size_t>(slot(l))];
  if (t < 0) return std::nullopt;
  return t;
}

std::vector<Word> StallingsCore::basis() const {
  std::vector<Word> gens;
  std::vector<Word> path(static_cast<std::size_t>(vertices_), Word(alphabet_));
  std::vector<bool> seen(static_cast<std::size_t>(vertices_), false);
  std::set<std::pair<int, int>> tree;
  std::vector<int> order{0};
  seen[0] = true;
  const int slots = 2 * alphabet_.rank;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const int v = order[i];
    for (int s = 0; s < slots; ++s) {
      const int t = adjacency_[static_cast<std::size_t>(v)][static_cast<std::size_t>(s)];
      if (t < 0 || seen[static_cast<std::size_t>(t)]) continue;
      seen[static_cast<std::size_t>(t)] = true;
      tree.emplace(v, s);
      tree.emplace(t, s ^ 1);
      path[static_cast<std::size_t>(t)] = path[static_cast<std::size_t>(v)] * Word::letter(alphabet_, slot_letter(s));
      order.push_back(t);
    }
  }
  for (const auto& e : edges_) {
    if (tree.count({e.from, slot(e.label)})) continue;
    gens.push_back(path[static_cast<std::size_t>(e.from)] * Word::letter(alphabet_, e.label) *
                   path[static_cast<std::size_t>(e.to)].inverse());
  }
  return gens;
}

bool membership(const Word& w, const StallingsCore& h) {
  if (w.alphabet() != h.alphabet()) throw AlphabetMismatch("word and subgroup over different alphabets");
  int v = 0;
  for (Letter l : w.letters()) {
    const auto next = h.follow(v, l);
    if (!next) return false;
    v = *next;
  }
  return v == 0;
}

SubgroupConjClass SubgroupConjClass::of(const StallingsCore& core) {
  return of(core.alphabet(), core.basis());
}

SubgroupConjClass SubgroupConjClass::of(Alphabet alphabet, const std::vector<Word>& generators) {
  RawCore raw(alphabet, generators);
  raw.prune(true);
  SubgroupConjClass c;
  int best_start = raw.base();
  for (int v : raw.alive_vertices()) {
    auto key = raw.numbering(v).first;
    if (c.key_.empty() || key < c.key_) {
      c.key_ = std::move(key);
      best_start = v;
    }
  }
  c.core_ = StallingsCore::fold(alphabet, raw.basis_at(best_start));
  return c;
}

std::optional<Word> conjugate_into(const StallingsCore& a, const StallingsCore& b, int conj_bound) {
  if (conj_bound < 0 || conj_bound > 8) throw std::invalid_argument("conjugate_into bound must be in 0..8");
  if (a.alphabet() != b.alphabet()) throw AlphabetMismatch("subgroups over different alphabets");
  const Alphabet alphabet = a.alphabet();
  const auto gens = a.basis();
  auto works = [&](const Word& w) {
    const Word wi = w.inverse();
    return std::all_of(gens.begin(), gens.end(), [&](const Word& g) { return membership(w * g * wi, b); });
  };
  std::vector<Letter> letters;
  for (int i = 1; i <= alphabet.rank; ++i) {
    letters.push_back(i);
    letters.push_back(-i);
  }
  // shortlex: by length, then letter order
  std::vector<Letter> buf;
  std::optional<Word> found;
  std::function<bool(int)> extend = [&](int remaining) {
    if (remaining == 0) {
      const Word w = Word::reduce(alphabet, buf);
      if (works(w)) {
        found = w;
        return true;
      }
      return false;
    }
    for (Letter l : letters) {
      if (!buf.empty() && buf.back() == -l) continue;
      buf.push_back(l);
      const bool done = extend(remaining - 1);
      buf.pop_back();
      if (done) return true;
    }
    return false;
  };
  for (int len = 0; len <= conj_bound; ++len) {
    if (extend(len)) return found;
  }
  return std::nullopt;
}

namespace {

// Nearest cyclic-core vertex to the basepoint of a based core, and the hair word.
std::pair<int, Word> hair(const RawCore& based, const RawCore& cyclic) {
  std::vector<int> seen{based.base()};
  std::set<int> visited{based.base()};
  for (std::size_t i = 0; i < seen.size(); ++i) {
    const int v = seen[i];
    if (cyclic.alive(v)) return {v, *based.path_word(based.base(), v)};
    for (int s = 0; s < based.slots(); ++s) {
      const int t = based.target(v, s);
      if (t >= 0 && visited.insert(t).second) seen.push_back(t);
    }
  }
  throw std::logic_error("cyclic core unreachable from basepoint");
}

std::pair<std::vector<int>, std::vector<int>> least_numbering(const RawCore& cyclic) {
  std::pair<std::vector<int>, std::vector<int>> best;
  for (int v : cyclic.alive_vertices()) {
    auto n = cyclic.numbering(v);
    if (best.first.empty() || n.first < best.first) best = std::move(n);
  }
  return best;
}

}  // namespace

std::optional<Word> subgroup_conjugator(Alphabet alphabet, const std::vector<Word>& h, const std::vector<Word>& k) {
  RawCore bh(alphabet, h), bk(alphabet, k);
  bh.prune(false);
  bk.prune(false);
  const bool th = bh.edge_count() == 0, tk = bk.edge_count() == 0;
  if (th || tk) {
    if (th && tk) return Word(alphabet);
    return std::nullopt;
  }
  RawCore ch = bh, ck = bk;
  ch.prune(true);
  ck.prune(true);
  const auto [key_h, order_h] = least_numbering(ch);
  const auto [key_k, order_k] = least_numbering(ck);
  if (key_h != key_k) return std::nullopt;
  const auto [xh, ph] = hair(bh, ch);
  const auto [xk, pk] = hair(bk, ck);
  // the isomorphism ck -> ch matches the two canonical orders
  const auto at = static_cast<std::size_t>(std::find(order_k.begin(), order_k.end(), xk) - order_k.begin());
  const auto q = ch.path_word(xh, order_h[at]);
  return ph * *q * pk.inverse();
}

bool in_double_coset(const Word& x, const std::vector<Word>& h, const Word& t, const std::vector<Word>& k) {
  const Alphabet alphabet = x.alphabet();
  if (t.alphabet() != alphabet) throw AlphabetMismatch("double coset over different alphabets");
  // x in H t K iff Hx meets tK: paths base->end in the first graph read Hx,
  // paths end->base in the second read tK.
  RawCore g1(alphabet), g2(alphabet);
  for (const auto& w : h) g1.add_path(w, true);
  const int end1 = g1.add_path(x, false);
  g1.fold();
  for (const auto& w : k) g2.add_path(w, true);
  const int end2 = g2.add_path(t.inverse(), false);
  g2.fold();
  const std::pair<int, int> start{g1.base(), g2.rep(end2)}, goal{g1.rep(end1), g2.base()};
  std::set<std::pair<int, int>> seen{start};
  std::deque<std::pair<int, int>> queue{start};
  while (!queue.empty()) {
    const auto [u, v] = queue.front();
    queue.pop_front();
    if (std::pair{u, v} == goal) return true;
    for (int s = 0; s < g1.slots(); ++s) {
      const int a = g1.target(u, s), b = g2.target(v, s);
      if (a >= 0 && b >= 0 && seen.insert({a, b}).second) queue.emplace_back(a, b);
    }
  }
  return false;
}

SubgroupConjClass image_class(const FreeAutomorphism& phi, const SubgroupConjClass& h) {
  std::vector<Word> images;
  for (const auto& g : h.generators()) images.push_back(phi(g));
  return SubgroupConjClass::of(phi.alphabet(), images);
}

FreeFactorSystem::FreeFactorSystem(FreeAutomorphism witness, std::vector<std::vector<int>> blocks)
    : witness_(std::move(witness)), blocks_(std::move(blocks)) {
  std::vector<bool> used(static_cast<std::size_t>(witness_.rank()) + 1, false);
  for (auto& block : blocks_) {
    if (block.empty()) throw std::invalid_argument("free factor block is empty");
    std::sort(block.begin(), block.end());
    for (int j : block) {
      if (j < 1 || j > witness_.rank() || used[static_cast<std::size_t>(j)]) {
        throw std::invalid_argument("free factor blocks must be disjoint sets of basis indices");
      }
      used[static_cast<std::size_t>(j)] = true;
    }
    std::vector<Word> gens;
    for (int j : block) gens.push_back(witness_.image(j));
    classes_.push_back(SubgroupConjClass::of(witness_.alphabet(), gens));
  }
  std::sort(classes_.begin(), classes_.end());
}

int FreeFactorSystem::grushko_rank() const noexcept {
  int used = 0;
  for (const auto& b : blocks_) used += static_cast<int>(b.size());
  return static_cast<int>(blocks_.size()) + ambient_rank() - used;
}

FreeFactorSystem FreeFactorSystem::image(const FreeAutomorphism& phi) const {
  return FreeFactorSystem(compose(phi, witness_), blocks_);
}

std::string to_string(Tri t) {
  switch (t) {
    case Tri::True:
      return "True";
    case Tri::False:
      return "False";
    case Tri::Inconclusive:
      return "Inconclusive";
  }
  return "?";
}

Tri ffs_poset_leq(const FreeFactorSystem& f1, const FreeFactorSystem& f2, int conj_bound) {
  if (f1.ambient_rank() != f2.ambient_rank()) throw AlphabetMismatch("free factor systems of different ranks");
  auto abelian = [](const std::vector<Word>& gens) {
    std::vector<IntVector> out;
    for (const auto& g : gens) out.push_back(exponent_vector(g));
    return out;
  };
  bool all_found = true, refuted = false;
  for (const auto& a : f1.classes()) {
    bool found = false, every_target_refuted = true;
    const auto va = abelian(a.generators());
    for (const auto& b : f2.classes()) {
      if (conjugate_into(a.core(), b.core(), conj_bound)) {
        found = true;
        break;
      }
      auto vb = abelian(b.generators());
      const int base = rational_rank(vb);
      vb.insert(vb.end(), va.begin(), va.end());
      // A inside a conjugate of B forces ab(A) inside ab(B).
      if (rational_rank(vb) == base) every_target_refuted = false;
    }
    if (!found) {
      all_found = false;
      refuted = refuted || every_target_refuted;
    }
  }
  if (all_found) {
    if (f2.grushko_rank() > f1.grushko_rank()) {
      throw TheoremViolation("poset relation increased the Grushko rank");
    }
    return Tri::True;
  }
  return refuted ? Tri::False : Tri::Inconclusive;
}

std::string to_string(const OrbitOutcome& o) {
  switch (o.kind) {
    case OrbitOutcome::Kind::Period:
      return "Period(" + std::to_string(o.period) + ")";
    case OrbitOutcome::Kind::NoPeriodWithin:
      return "NoPeriodWithin(" + std::to_string(o.iterations) + ")";
    case OrbitOutcome::Kind::Blowup:
      return "Blowup(" + std::to_string(o.iterations) + ")";
  }
  return "?";
}

namespace {

OrbitOutcome period(OrbitOutcome o, int k) {
  o.kind = OrbitOutcome::Kind::Period;
  o.period = k;
  o.iterations = k;
  return o;
}

OrbitOutcome blowup(OrbitOutcome o, int k) {
  o.kind = OrbitOutcome::Kind::Blowup;
  o.iterations = k;
  return o;
}

OrbitOutcome no_period(OrbitOutcome o, int k) {
  o.kind = OrbitOutcome::Kind::NoPeriodWithin;
  o.iterations = k;
  return o;
}

void require_iter(int max_iter) {
  if (max_iter < 1) throw std::invalid_argument("max_iter must be at least 1");
}

}  // namespace

OrbitOutcome orbit_period(const FreeAutomorphism& phi, const CyclicWord& start, int max_iter, std::size_t length_cap) {
  require_iter(max_iter);
  OrbitOutcome o;
  Word cur = start.as_word();
  for (int k = 1; k <= max_iter; ++k) {
    const CyclicWord next = CyclicWord::of(phi(cur));
    o.sizes.push_back(next.size());
    if (next.size() > length_cap) return blowup(std::move(o), k);
    if (next == start) return period(std::move(o), k);
    cur = next.as_word();
  }
  return no_period(std::move(o), max_iter);
}

OrbitOutcome word_orbit_period(const FreeAutomorphism& phi, const Word& start, int max_iter, std::size_t length_cap) {
  require_iter(max_iter);
  OrbitOutcome o;
  Word cur = start;
  for (int k = 1; k <= max_iter; ++k) {
    auto next = apply_endo_bounded(phi.forward(), cur, length_cap);
    o.sizes.push_back(next ? next->size() : length_cap + 1);  // cap + 1 marks an abandoned image
    if (!next) return blowup(std::move(o), k);
    cur = std::move(*next);
    if (cur == start) return period(std::move(o), k);
  }
  return no_period(std::move(o), max_iter);
}

namespace {

// step(x, forward) is the image of x under phi or its inverse, absent past the cap.
template <class T, class Step>
OrbitOutcome meet_in_middle(const T& start, int max_iter, Step step) {
  require_iter(max_iter);
  OrbitOutcome o;
  std::vector<T> fwd{start}, bwd{start};
  for (int p = 1; p <= max_iter; ++p) {
    const std::size_t a = static_cast<std::size_t>((p + 1) / 2), b = static_cast<std::size_t>(p / 2);
    if (fwd.size() <= a) {
      auto next = step(fwd.back(), true);
      if (!next) return blowup(std::move(o), p);
      o.sizes.push_back(next->size());
      fwd.push_back(std::move(*next));
    }
    if (bwd.size() <= b) {
      auto next = step(bwd.back(), false);
      if (!next) return blowup(std::move(o), p);
      bwd.push_back(std::move(*next));
    }
    if (fwd[a] == bwd[b]) return period(std::move(o), p);
  }
  return no_period(std::move(o), max_iter);
}

}  // namespace

OrbitOutcome orbit_period_mitm(const FreeAutomorphism& phi, const CyclicWord& start, int max_iter, std::size_t length_cap) {
  // c is cyclically reduced, so phi(c) = u k u^-1 with |u| at most the constant
  const std::size_t bcc[2] = {cancellation_bound(phi.inverse()), cancellation_bound(phi)};
  return meet_in_middle(start, max_iter, [&](const CyclicWord& c, bool forward) -> std::optional<CyclicWord> {
    const std::size_t k = bcc[forward];
    const auto image = apply_endo_bounded(forward ? phi.forward() : phi.backward(), c.as_word(), length_cap + 2 * k, k);
    if (!image) return std::nullopt;
    auto next = CyclicWord::of(*image);
    if (next.size() > length_cap) return std::nullopt;
    return next;
  });
}

OrbitOutcome word_orbit_period_mitm(const FreeAutomorphism& phi, const Word& start, int max_iter, std::size_t length_cap) {
  const std::size_t bcc[2] = {cancellation_bound(phi.inverse()), cancellation_bound(phi)};
  return meet_in_middle(start, max_iter, [&](const Word& w, bool forward) {
    return apply_endo_bounded(forward ? phi.forward() : phi.backward(), w, length_cap, bcc[forward]);
  });
}

namespace {

// Orbit of several classes at once; returns when the sorted multiset of
// classes first equals the start.
OrbitOutcome multi_orbit(const FreeAutomorphism& phi, const std::vector<SubgroupConjClass>& start, int max_iter,
                         std::size_t length_cap) {
  require_iter(max_iter);
  OrbitOutcome o;
  std::vector<std::pair<std::size_t, std::size_t>> start_shape;
  for (const auto& c : start) start_shape.emplace_back(c.core().edge_count(), c.core().vertex_count());
  std::sort(start_shape.begin(), start_shape.end());

  std::vector<RawCore> cores;
  for (const auto& c : start) {
    cores.emplace_back(phi.alphabet(), c.generators());
    cores.back().prune(true);
  }
  for (int k = 1; k <= max_iter; ++k) {
    std::size_t total = 0;
    std::vector<std::pair<std::size_t, std::size_t>> shape;
    for (auto& core : cores) {
      core = RawCore::image(core, phi);
      total += core.edge_count();
      // later cores only add edges
      if (total > length_cap) {
        o.sizes.push_back(total);
        return blowup(std::move(o), k);
      }
      shape.emplace_back(core.edge_count(), core.vertex_count());
    }
    o.sizes.push_back(total);
    std::sort(shape.begin(), shape.end());
    if (shape == start_shape) {
      std::vector<SubgroupConjClass> now;
      for (const auto& core : cores) now.push_back(SubgroupConjClass::of(phi.alphabet(), core.basis_at(core.base())));
      std::sort(now.begin(), now.end());
      if (now == start) return period(std::move(o), k);
    }
  }
  return no_period(std::move(o), max_iter);
}

}  // namespace

OrbitOutcome orbit_period(const FreeAutomorphism& phi, const SubgroupConjClass& start, int max_iter,
                          std::size_t length_cap) {
  return multi_orbit(phi, {start}, max_iter, length_cap);
}

OrbitOutcome orbit_period(const FreeAutomorphism& phi, const FreeFactorSystem& start, int max_iter,
                          std::size_t length_cap) {
  return multi_orbit(phi, start.classes(), max_iter, length_cap);
}

std::vector<Word> parse_generators(Alphabet alphabet, const std::string& text) {
  std::vector<Word> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    out.push_back(parse_word(alphabet, line));
  }
  return out;
}

}  // namespace aplab
