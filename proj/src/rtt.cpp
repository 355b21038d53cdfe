#include "aplab/rtt.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "aplab/errors.hpp"

namespace aplab {

namespace {

// Directions are numbered 2e (forward) and 2e+1 (backward).
int dir_index(EdgeRef r) { return 2 * edge_index(r) + (r < 0 ? 1 : 0); }
EdgeRef dir_ref(int d) { return d % 2 == 0 ? d / 2 + 1 : -(d / 2 + 1); }

bool irreducible(const IntegerMatrix& m) {
  const int n = m.dim();
  for (bool transpose : {false, true}) {
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    std::vector<int> stack{0};
    seen[0] = true;
    while (!stack.empty()) {
      const int i = stack.back();
      stack.pop_back();
      for (int j = 0; j < n; ++j) {
        if ((transpose ? m(i, j) : m(j, i)) > 0 && !seen[static_cast<std::size_t>(j)]) {
          seen[static_cast<std::size_t>(j)] = true;
          stack.push_back(j);
        }
      }
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end()) return false;
  }
  return true;
}

bool permutation_matrix(const IntegerMatrix& m) {
  const int n = m.dim();
  for (int i = 0; i < n; ++i) {
    std::int64_t row = 0, col = 0;
    for (int j = 0; j < n; ++j) {
      if (m(i, j) < 0 || m(i, j) > 1 || m(j, i) < 0 || m(j, i) > 1) return false;
      row += m(i, j);
      col += m(j, i);
    }
    if (row != 1 || col != 1) return false;
  }
  return true;
}

// det(tI - M) by Gaussian elimination with partial pivoting.
long double char_poly_at(const IntegerMatrix& m, long double t) {
  const int n = m.dim();
  std::vector<long double> a(static_cast<std::size_t>(n * n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a[static_cast<std::size_t>(i * n + j)] = (i == j ? t : 0.0L) - static_cast<long double>(m(i, j));
  }
  long double det = 1.0L;
  for (int c = 0; c < n; ++c) {
    int pivot = c;
    for (int r = c + 1; r < n; ++r) {
      if (std::fabs(a[static_cast<std::size_t>(r * n + c)]) > std::fabs(a[static_cast<std::size_t>(pivot * n + c)])) pivot = r;
    }
    if (a[static_cast<std::size_t>(pivot * n + c)] == 0.0L) return 0.0L;
    if (pivot != c) {
      for (int j = 0; j < n; ++j) std::swap(a[static_cast<std::size_t>(c * n + j)], a[static_cast<std::size_t>(pivot * n + j)]);
      det = -det;
    }
    const long double p = a[static_cast<std::size_t>(c * n + c)];
    det *= p;
    for (int r = c + 1; r < n; ++r) {
      const long double k = a[static_cast<std::size_t>(r * n + c)] / p;
      for (int j = c; j < n; ++j) a[static_cast<std::size_t>(r * n + j)] -= k * a[static_cast<std::size_t>(c * n + j)];
    }
  }
  return det;
}

// Union-find folding of a graph labelled by directions of the target graph.
class Folder {
 public:
  explicit Folder(int slots) : slots_(slots) {}

  int add_vertex() {
    parent_.push_back(static_cast<int>(parent_.size()));
    adj_.emplace_back(static_cast<std::size_t>(slots_), -1);
    return parent_.back();
  }

  void add_path(int from, int to, const EdgePath& labels) {
    int cur = from;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      const int next = i + 1 == labels.size() ? to : add_vertex();
      set(cur, dir_index(labels[i]), next);
      set(next, dir_index(-labels[i]), cur);
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
  }

  int find(int v) {
    while (parent_[static_cast<std::size_t>(v)] != v) v = parent_[static_cast<std::size_t>(v)] = parent_[static_cast<std::size_t>(parent_[static_cast<std::size_t>(v)])];
    return v;
  }

  /// Edges minus vertices plus one, over representatives.
  int rank() {
    int vertices = 0, half = 0;
    for (std::size_t v = 0; v < parent_.size(); ++v) {
      if (find(static_cast<int>(v)) != static_cast<int>(v)) continue;
      ++vertices;
      for (int t : adj_[v]) half += t >= 0;
    }
    return half / 2 - vertices + 1;
  }

 private:
  void set(int u, int s, int v) {
    u = find(u);
    int& a = adj_[static_cast<std::size_t>(u)][static_cast<std::size_t>(s)];
    if (a < 0) {
      a = v;
    } else if (find(a) != find(v)) {
      pending_.emplace_back(a, v);
    }
  }

  int slots_;
  std::vector<int> parent_;
  std::vector<std::vector<int>> adj_;
  std::vector<std::pair<int, int>> pending_;
};

EdgeRef parse_edge_token(const std::string& tok, int edges) {
  if (tok.size() < 2 || (tok[0] != 'e' && tok[0] != 'E')) throw ParseError("bad edge token: " + tok);
  int e = 0;
  try {
    std::size_t used = 0;
    e = std::stoi(tok.substr(1), &used);
    if (used != tok.size() - 1) throw ParseError("bad edge token: " + tok);
  } catch (const std::logic_error&) {
    throw ParseError("bad edge token: " + tok);
  }
  if (e < 0 || e >= edges) throw ParseError("edge token out of range: " + tok);
  return tok[0] == 'e' ? forward_ref(e) : -forward_ref(e);
}

}  // namespace

EdgePath tighten(const FiniteGraph& x, const EdgePath& p) {
  EdgePath out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0 || edge_index(p[i]) >= x.edge_count()) throw std::invalid_argument("edge out of range");
    if (i > 0 && x.terminus(p[i - 1]) != x.origin(p[i])) throw std::invalid_argument("edge path is not connected");
    if (!out.empty() && out.back() == -p[i]) {
      out.pop_back();
    } else {
      out.push_back(p[i]);
    }
  }
  return out;
}

bool is_tight(const EdgePath& p) {
  for (std::size_t i = 1; i < p.size(); ++i) {
    if (p[i] == -p[i - 1]) return false;
  }
  return true;
}

EdgePath reversed(const EdgePath& p) {
  EdgePath out(p.rbegin(), p.rend());
  for (auto& r : out) r = -r;
  return out;
}

GraphMapRep::GraphMapRep(MarkedGraph d, GraphMap m) : domain(std::move(d)), map(std::move(m)) {
  if (!domain.all_vertex_groups_trivial()) throw std::invalid_argument("graph maps need trivial vertex groups");
  check_continuity(domain.graph(), map);
  for (const auto& p : map.edge) {
    if (p.empty()) throw std::invalid_argument("edge images must be nonempty");
    if (!is_tight(p)) throw std::invalid_argument("edge images must be tight");
  }
}

EdgePath GraphMapRep::image(const EdgePath& p) const { return tighten(graph(), image_path(map, p)); }

GraphMapRep compose(const GraphMapRep& f, const GraphMapRep& g) {
  GraphMap h;
  for (int v : g.map.vertex) h.vertex.push_back(f.map.vertex[static_cast<std::size_t>(v)]);
  for (const auto& p : g.map.edge) h.edge.push_back(f.image(p));
  return GraphMapRep(f.domain, std::move(h));
}

IntegerMatrix transition_matrix(const GraphMapRep& f, const std::vector<int>& edges) {
  std::map<int, int> pos;
  for (std::size_t i = 0; i < edges.size(); ++i) pos[edges[i]] = static_cast<int>(i);
  IntegerMatrix m(static_cast<int>(edges.size()));
  for (std::size_t j = 0; j < edges.size(); ++j) {
    for (EdgeRef r : f.map.edge.at(static_cast<std::size_t>(edges[j]))) {
      const auto it = pos.find(edge_index(r));
      if (it != pos.end()) ++m(it->second, static_cast<int>(j));
    }
  }
  return m;
}

std::string to_string(StratumKind k) {
  switch (k) {
    case StratumKind::Zero: return "Zero";
    case StratumKind::NEG: return "NEG";
    case StratumKind::EG: return "EG";
  }
  return "?";
}

Growth classify_stratum(const IntegerMatrix& m) {
  const int n = m.dim();
  if (n == 0) throw std::invalid_argument("empty transition matrix");
  Growth g;
  if (n == 1 && m(0, 0) == 0) return g;
  if (!irreducible(m)) throw std::invalid_argument("transition matrix is neither zero nor irreducible");
  const bool exact_neg = permutation_matrix(m);
  // M + I is primitive; Collatz-Wielandt bounds bracket its spectral radius.
  std::vector<long double> v(static_cast<std::size_t>(n), 1.0L), w(static_cast<std::size_t>(n));
  long double lo = 0, hi = 0;
  for (int iter = 0; iter < 1000000; ++iter) {
    for (int i = 0; i < n; ++i) {
      long double s = v[static_cast<std::size_t>(i)];
      for (int j = 0; j < n; ++j) s += static_cast<long double>(m(i, j)) * v[static_cast<std::size_t>(j)];
      w[static_cast<std::size_t>(i)] = s;
    }
    lo = hi = w[0] / v[0];
    for (int i = 1; i < n; ++i) {
      const long double r = w[static_cast<std::size_t>(i)] / v[static_cast<std::size_t>(i)];
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
    if (hi - lo <= static_cast<long double>(kLambdaTolerance) * hi) break;
    const long double top = *std::max_element(w.begin(), w.end());
    for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = w[static_cast<std::size_t>(i)] / top;
  }
  g.lower = static_cast<double>(lo - 1);
  g.upper = static_cast<double>(hi - 1);
  g.lambda = exact_neg ? 1.0 : static_cast<double>((lo + hi) / 2 - 1);
  if (exact_neg == (g.lambda > 1 + kEgThreshold)) throw VerificationFailed("numeric growth disagrees with the exact NEG test");
  g.kind = exact_neg ? StratumKind::NEG : StratumKind::EG;
  const long double delta = std::max(1e-6L * static_cast<long double>(g.lambda), 1e-9L);
  const long double below = char_poly_at(m, static_cast<long double>(g.lambda) - delta);
  const long double above = char_poly_at(m, static_cast<long double>(g.lambda) + delta);
  if (!(below == 0 || above == 0 || (below < 0) != (above < 0))) {
    throw VerificationFailed("characteristic polynomial has no sign change at the computed eigenvalue");
  }
  return g;
}

CyclicPartition aperiodic_partition(const IntegerMatrix& m, const std::vector<int>& edges) {
  const int n = m.dim();
  if (n == 0 || static_cast<int>(edges.size()) != n) throw std::invalid_argument("matrix and edge list disagree");
  if ((n == 1 && m(0, 0) == 0) || !irreducible(m)) throw std::invalid_argument("transition matrix is not irreducible");
  std::vector<int> dist(static_cast<std::size_t>(n), -1);
  std::vector<int> queue{0};
  dist[0] = 0;
  for (std::size_t k = 0; k < queue.size(); ++k) {
    const int i = queue[k];
    for (int j = 0; j < n; ++j) {
      if (m(j, i) > 0 && dist[static_cast<std::size_t>(j)] < 0) {
        dist[static_cast<std::size_t>(j)] = dist[static_cast<std::size_t>(i)] + 1;
        queue.push_back(j);
      }
    }
  }
  int d = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (m(j, i) > 0) d = std::gcd(d, std::abs(dist[static_cast<std::size_t>(i)] + 1 - dist[static_cast<std::size_t>(j)]));
    }
  }
  CyclicPartition p;
  p.period = d;
  p.classes.assign(static_cast<std::size_t>(d), {});
  for (int i = 0; i < n; ++i) p.classes[static_cast<std::size_t>(dist[static_cast<std::size_t>(i)] % d)].push_back(edges[static_cast<std::size_t>(i)]);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (m(j, i) > 0 && dist[static_cast<std::size_t>(j)] % d != (dist[static_cast<std::size_t>(i)] + 1) % d) {
        throw VerificationFailed("cyclic class maps outside its successor");
      }
    }
  }
  return p;
}

std::vector<Stratum> filtration_of(const GraphMapRep& f) {
  const int ne = f.graph().edge_count();
  std::vector<std::vector<int>> succ(static_cast<std::size_t>(ne));
  for (int e = 0; e < ne; ++e) {
    for (EdgeRef r : f.map.edge[static_cast<std::size_t>(e)]) succ[static_cast<std::size_t>(e)].push_back(edge_index(r));
  }
  // Tarjan: components come out after everything they reach, so sinks first
  std::vector<int> index(static_cast<std::size_t>(ne), -1), low(static_cast<std::size_t>(ne), 0), stack;
  std::vector<bool> on_stack(static_cast<std::size_t>(ne), false);
  std::vector<std::vector<int>> comps;
  int counter = 0;
  std::function<void(int)> visit = [&](int v) {
    const auto sv = static_cast<std::size_t>(v);
    index[sv] = low[sv] = counter++;
    stack.push_back(v);
    on_stack[sv] = true;
    for (int w : succ[sv]) {
      const auto sw = static_cast<std::size_t>(w);
      if (index[sw] < 0) {
        visit(w);
        low[sv] = std::min(low[sv], low[sw]);
      } else if (on_stack[sw]) {
        low[sv] = std::min(low[sv], index[sw]);
      }
    }
    if (low[sv] == index[sv]) {
      std::vector<int> comp;
      int w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[static_cast<std::size_t>(w)] = false;
        comp.push_back(w);
      } while (w != v);
      std::sort(comp.begin(), comp.end());
      comps.push_back(std::move(comp));
    }
  };
  for (int e = 0; e < ne; ++e) {
    if (index[static_cast<std::size_t>(e)] < 0) visit(e);
  }
  std::vector<Stratum> strata;
  for (auto& comp : comps) {
    Stratum s;
    s.matrix = transition_matrix(f, comp);
    s.growth = classify_stratum(s.matrix);
    if (s.growth.kind != StratumKind::Zero) s.partition = aperiodic_partition(s.matrix, comp);
    s.edges = std::move(comp);
    strata.push_back(std::move(s));
  }
  return strata;
}

std::string to_string(TurnKind k) {
  switch (k) {
    case TurnKind::Degenerate: return "degenerate";
    case TurnKind::Illegal: return "illegal";
    case TurnKind::Legal: return "legal";
  }
  return "?";
}

EdgeRef direction_image(const GraphMapRep& f, EdgeRef d) {
  const auto& img = f.map.edge.at(static_cast<std::size_t>(edge_index(d)));
  return d > 0 ? img.front() : -img.back();
}

std::vector<Turn> turns(const GraphMapRep& f) {
  const FiniteGraph& x = f.graph();
  const int nd = 2 * x.edge_count();
  std::vector<int> df(static_cast<std::size_t>(nd));
  for (int d = 0; d < nd; ++d) df[static_cast<std::size_t>(d)] = dir_index(direction_image(f, dir_ref(d)));
  std::vector<Turn> out;
  for (int v = 0; v < x.vertex_count(); ++v) {
    std::vector<int> dirs;
    for (EdgeRef r : x.directions_at(v)) dirs.push_back(dir_index(r));
    std::sort(dirs.begin(), dirs.end());
    for (std::size_t i = 0; i < dirs.size(); ++i) {
      for (std::size_t j = i; j < dirs.size(); ++j) {
        Turn t{dir_ref(dirs[i]), dir_ref(dirs[j]), TurnKind::Legal};
        if (i == j) {
          t.kind = TurnKind::Degenerate;
        } else {
          // DF is a self-map of a finite set: nd steps suffice
          int a = dirs[i], b = dirs[j];
          for (int step = 0; step < nd && t.kind == TurnKind::Legal; ++step) {
            a = df[static_cast<std::size_t>(a)];
            b = df[static_cast<std::size_t>(b)];
            if (a == b) t.kind = TurnKind::Illegal;
          }
        }
        out.push_back(t);
      }
    }
  }
  return out;
}

std::vector<Turn> illegal_turns(const GraphMapRep& f) {
  auto all = turns(f);
  std::erase_if(all, [](const Turn& t) { return t.kind != TurnKind::Illegal; });
  return all;
}

bool RttReport::pass() const {
  return std::all_of(eg_strata.begin(), eg_strata.end(), [](const RttStratumReport& r) { return r.pass(); });
}

RttReport verify_rtt(const GraphMapRep& f, const std::vector<Stratum>& strata) {
  const FiniteGraph& x = f.graph();
  const int ne = x.edge_count();
  std::vector<int> height(static_cast<std::size_t>(ne), -1);
  for (std::size_t r = 0; r < strata.size(); ++r) {
    for (int e : strata[r].edges) height.at(static_cast<std::size_t>(e)) = static_cast<int>(r);
  }
  if (std::find(height.begin(), height.end(), -1) != height.end()) throw std::invalid_argument("strata do not cover the graph");
  for (std::size_t r = 0; r < strata.size(); ++r) {
    for (int e : strata[r].edges) {
      for (EdgeRef img : f.map.edge[static_cast<std::size_t>(e)]) {
        if (height[static_cast<std::size_t>(edge_index(img))] > static_cast<int>(r)) {
          throw std::invalid_argument("filtration is not invariant under the map");
        }
      }
    }
  }
  std::map<std::pair<EdgeRef, EdgeRef>, TurnKind> kinds;
  for (const auto& t : turns(f)) {
    kinds[{t.first, t.second}] = t.kind;
    kinds[{t.second, t.first}] = t.kind;
  }
  RttReport report;
  for (std::size_t r = 0; r < strata.size(); ++r) {
    if (strata[r].growth.kind != StratumKind::EG) continue;
    const int hr = static_cast<int>(r);
    auto in_h = [&](EdgeRef d) { return height[static_cast<std::size_t>(edge_index(d))] == hr; };
    RttStratumReport rep;
    rep.stratum = hr;
    // (1) directions of H_r map into H_r
    rep.directions_preserved = true;
    for (int e : strata[r].edges) {
      for (EdgeRef d : {forward_ref(e), -forward_ref(e)}) {
        if (!in_h(direction_image(f, d))) {
          rep.directions_preserved = false;
          rep.violations.push_back("direction " + edge_token(d) + " leaves the stratum");
        }
      }
    }
    // (2) no nontrivial path in the lower filtration element joining H_r
    // vertices maps to a trivial path: fold f on each lower component.
    std::set<int> h_vertices;
    for (int e : strata[r].edges) {
      h_vertices.insert(x.edges()[static_cast<std::size_t>(e)].tail);
      h_vertices.insert(x.edges()[static_cast<std::size_t>(e)].head);
    }
    std::vector<int> comp(static_cast<std::size_t>(x.vertex_count()));
    std::iota(comp.begin(), comp.end(), 0);
    std::function<int(int)> find = [&](int v) {
      return comp[static_cast<std::size_t>(v)] == v ? v : comp[static_cast<std::size_t>(v)] = find(comp[static_cast<std::size_t>(v)]);
    };
    std::vector<int> lower;
    for (int e = 0; e < ne; ++e) {
      if (height[static_cast<std::size_t>(e)] >= hr) continue;
      lower.push_back(e);
      const auto& ed = x.edges()[static_cast<std::size_t>(e)];
      comp[static_cast<std::size_t>(find(ed.tail))] = find(ed.head);
    }
    rep.connecting_paths_survive = true;
    std::set<int> roots;
    for (int e : lower) roots.insert(find(x.edges()[static_cast<std::size_t>(e)].tail));
    for (int root : roots) {
      std::vector<int> ce;
      std::set<int> cv;
      for (int e : lower) {
        const auto& ed = x.edges()[static_cast<std::size_t>(e)];
        if (find(ed.tail) != root) continue;
        ce.push_back(e);
        cv.insert(ed.tail);
        cv.insert(ed.head);
      }
      std::vector<int> ends;
      for (int v : cv) {
        if (h_vertices.count(v)) ends.push_back(v);
      }
      if (ends.empty()) continue;
      Folder folder(2 * ne);
      std::map<int, int> id;
      for (int v : cv) id[v] = folder.add_vertex();
      for (int e : ce) {
        const auto& ed = x.edges()[static_cast<std::size_t>(e)];
        folder.add_path(id[ed.tail], id[ed.head], f.map.edge[static_cast<std::size_t>(e)]);
      }
      const int before = static_cast<int>(ce.size()) - static_cast<int>(cv.size()) + 1;
      folder.fold();
      if (folder.rank() < before) {
        rep.connecting_paths_survive = false;
        rep.violations.push_back("a lower loop at a stratum vertex maps to a trivial path");
      }
      for (std::size_t i = 0; i < ends.size(); ++i) {
        for (std::size_t j = i + 1; j < ends.size(); ++j) {
          if (folder.find(id[ends[i]]) == folder.find(id[ends[j]])) {
            rep.connecting_paths_survive = false;
            rep.violations.push_back("a lower path from vertex " + std::to_string(ends[i]) + " to vertex " +
                                     std::to_string(ends[j]) + " maps to a trivial path");
          }
        }
      }
    }
    // (3) images of H_r edges are r-legal, and DF keeps legal H_r turns legal
    rep.legal_paths_stay_legal = true;
    for (int e : strata[r].edges) {
      const auto& img = f.map.edge[static_cast<std::size_t>(e)];
      for (std::size_t i = 1; i < img.size(); ++i) {
        const EdgeRef a = -img[i - 1], b = img[i];
        if (in_h(a) && in_h(b) && kinds.at({a, b}) == TurnKind::Illegal) {
          rep.legal_paths_stay_legal = false;
          rep.violations.push_back("image of " + edge_token(forward_ref(e)) + " crosses an illegal turn");
        }
      }
    }
    for (const auto& [turn, kind] : kinds) {
      if (kind != TurnKind::Legal || !in_h(turn.first) || !in_h(turn.second)) continue;
      const auto image = kinds.find({direction_image(f, turn.first), direction_image(f, turn.second)});
      if (image == kinds.end() || image->second != TurnKind::Legal) {
        rep.legal_paths_stay_legal = false;
        rep.violations.push_back("a legal turn maps to a non-legal turn");
      }
    }
    report.eg_strata.push_back(std::move(rep));
  }
  return report;
}

std::int64_t bcc_bound(const GraphMapRep& f) {
  std::int64_t c = 0;
  for (const auto& p : f.map.edge) c += static_cast<std::int64_t>(p.size());
  return c;
}

EdgePath random_tight_path(const FiniteGraph& x, int length, std::mt19937_64& rng) {
  EdgePath p;
  if (x.edge_count() == 0 || length <= 0) return p;
  std::uniform_int_distribution<int> first(0, 2 * x.edge_count() - 1);
  p.push_back(dir_ref(first(rng)));
  while (static_cast<int>(p.size()) < length) {
    auto options = x.directions_at(x.terminus(p.back()));
    std::erase(options, -p.back());
    if (options.empty()) break;
    std::uniform_int_distribution<std::size_t> pick(0, options.size() - 1);
    p.push_back(options[pick(rng)]);
  }
  return p;
}

BccReport bcc_check(const GraphMapRep& f, int trials, int max_length, std::uint64_t seed) {
  BccReport rep;
  rep.bound = bcc_bound(f);
  rep.trials = trials;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> len(1, max_length);
  for (int t = 0; t < trials; ++t) {
    const EdgePath rho = random_tight_path(f.graph(), len(rng), rng);
    std::uniform_int_distribution<std::size_t> cut(0, rho.size());
    const auto k = static_cast<std::ptrdiff_t>(cut(rng));
    const EdgePath r1(rho.begin(), rho.begin() + k), r2(rho.begin() + k, rho.end());
    const auto l = static_cast<std::int64_t>(f.image(rho).size());
    const auto l1 = static_cast<std::int64_t>(f.image(r1).size());
    const auto l2 = static_cast<std::int64_t>(f.image(r2).size());
    rep.worst_cancellation = std::max(rep.worst_cancellation, l1 + l2 - l);
    if (l < l1 + l2 - 2 * rep.bound) ++rep.violations;
  }
  return rep;
}

GraphMapRep parse_graph_map(const std::string& text) {
  std::string graph_text;
  std::vector<std::string> map_lines;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    const auto hash = line.find('#');
    const std::string body = hash == std::string::npos ? line : line.substr(0, hash);
    if (body.find("->") != std::string::npos) {
      map_lines.push_back(body);
    } else {
      graph_text += body + "\n";
    }
  }
  MarkedGraph x = parse_marked_graph(graph_text);
  const int ne = x.graph().edge_count();
  GraphMap m;
  m.edge.assign(static_cast<std::size_t>(ne), {});
  std::vector<bool> given(static_cast<std::size_t>(ne), false);
  for (const auto& line : map_lines) {
    std::istringstream ls(line);
    std::string lhs, arrow;
    ls >> lhs >> arrow;
    if (arrow != "->") throw ParseError("map line must read 'e<k> -> path': " + line);
    const EdgeRef r = parse_edge_token(lhs, ne);
    if (r < 0) throw ParseError("map lines name forward edges: " + line);
    EdgePath p;
    for (std::string tok; ls >> tok;) p.push_back(parse_edge_token(tok, ne));
    if (given[static_cast<std::size_t>(edge_index(r))]) throw ParseError("edge mapped twice: " + lhs);
    given[static_cast<std::size_t>(edge_index(r))] = true;
    m.edge[static_cast<std::size_t>(edge_index(r))] = std::move(p);
  }
  if (std::find(given.begin(), given.end(), false) != given.end()) throw ParseError("every edge needs a map line");
  // vertex images are read off the edge images
  m.vertex.assign(static_cast<std::size_t>(x.graph().vertex_count()), -1);
  for (int e = 0; e < ne; ++e) {
    const auto& p = m.edge[static_cast<std::size_t>(e)];
    if (p.empty()) throw ParseError("edge images must be nonempty");
    const auto& ed = x.graph().edges()[static_cast<std::size_t>(e)];
    for (auto [v, w] : {std::pair{ed.tail, x.graph().origin(p.front())}, std::pair{ed.head, x.graph().terminus(p.back())}}) {
      int& slot = m.vertex[static_cast<std::size_t>(v)];
      if (slot >= 0 && slot != w) throw ParseError("edge images disagree on a vertex image");
      slot = w;
    }
  }
  for (auto& v : m.vertex) v = std::max(v, 0);
  try {
    return GraphMapRep(std::move(x), std::move(m));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

std::string to_text(const GraphMapRep& f) {
  std::string out = to_text(f.domain);
  for (std::size_t e = 0; e < f.map.edge.size(); ++e) {
    out += edge_token(forward_ref(static_cast<int>(e))) + " ->";
    for (EdgeRef r : f.map.edge[e]) out += " " + edge_token(r);
    out += "\n";
  }
  return out;
}

std::string to_json(const GraphMapRep& f, const std::vector<Stratum>& strata, const RttReport& rtt, const BccReport& bcc) {
  using nlohmann::json;
  json js = json::array();
  for (const auto& s : strata) {
    json one{{"edges", s.edges}, {"class", to_string(s.growth.kind)}, {"lambda", s.growth.lambda}};
    if (s.partition) {
      one["period"] = s.partition->period;
      one["partition"] = s.partition->classes;
    } else {
      one["period"] = nullptr;
      one["partition"] = nullptr;
    }
    js.push_back(std::move(one));
  }
  json jr = json::array();
  for (const auto& r : rtt.eg_strata) {
    jr.push_back({{"stratum", r.stratum},
                  {"directions_preserved", r.directions_preserved},
                  {"connecting_paths_survive", r.connecting_paths_survive},
                  {"legal_paths_stay_legal", r.legal_paths_stay_legal},
                  {"violations", r.violations}});
  }
  json illegal = json::array();
  for (const auto& t : illegal_turns(f)) illegal.push_back({edge_token(t.first), edge_token(t.second)});
  json out{{"strata", js},
           {"illegal_turns", illegal},
           {"rtt", {{"pass", rtt.pass()}, {"eg_strata", jr}}},
           {"bcc", {{"bound", bcc.bound}, {"trials", bcc.trials}, {"violations", bcc.violations}, {"worst_cancellation", bcc.worst_cancellation}}}};
  return out.dump(2);
}

}  // namespace aplab
