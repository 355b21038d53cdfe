#include <algorithm>
#include <numeric>
#include <set>

#include "aplab/errors.hpp"
#include "aplab/graphs.hpp"
#include "doctest.h"

using namespace aplab;

namespace {

GraphAutomorphism auto_from(const FiniteGraph& x, const char* text) { return parse_graph_automorphism(x, text); }

// Every (vertex permutation, signed edge permutation) pair filtered by incidence.
std::set<GraphAutomorphism> brute_automorphisms(const FiniteGraph& x) {
  std::set<GraphAutomorphism> out;
  std::vector<int> vp(static_cast<std::size_t>(x.vertex_count()));
  std::iota(vp.begin(), vp.end(), 0);
  do {
    std::vector<int> ep(static_cast<std::size_t>(x.edge_count()));
    std::iota(ep.begin(), ep.end(), 0);
    do {
      for (unsigned mask = 0; mask < (1u << ep.size()); ++mask) {
        GraphAutomorphism f;
        f.vertex = vp;
        for (std::size_t e = 0; e < ep.size(); ++e) f.edge.push_back((mask >> e & 1u) ? -(ep[e] + 1) : ep[e] + 1);
        if (is_automorphism(x, f)) out.insert(f);
      }
    } while (std::next_permutation(ep.begin(), ep.end()));
  } while (std::next_permutation(vp.begin(), vp.end()));
  return out;
}

// Isomorphism classes of connected multigraphs with exactly m edges, by
// enumerating edge multisets on m+1 labelled vertices and minimising over
// all vertex relabellings.
std::size_t brute_graph_count(int m) {
  std::set<std::vector<int>> classes;
  for (int n = 1; n <= m + 1; ++n) {
    std::vector<std::pair<int, int>> slots;
    for (int u = 0; u < n; ++u) {
      for (int v = u; v < n; ++v) slots.emplace_back(u, v);
    }
    std::vector<int> pick(static_cast<std::size_t>(m), 0);
    std::function<void(int, int)> go = [&](int k, int from) {
      if (k == m) {
        std::vector<Edge> es;
        std::vector<bool> touched(static_cast<std::size_t>(n), false);
        for (int s : pick) {
          es.push_back({slots[static_cast<std::size_t>(s)].first, slots[static_cast<std::size_t>(s)].second});
          touched[static_cast<std::size_t>(es.back().tail)] = touched[static_cast<std::size_t>(es.back().head)] = true;
        }
        if (m > 0 && std::find(touched.begin(), touched.end(), false) != touched.end()) return;
        FiniteGraph g(n, es);
        if (!g.connected()) return;
        std::vector<int> perm(static_cast<std::size_t>(n));
        std::iota(perm.begin(), perm.end(), 0);
        std::vector<int> best;
        do {
          std::vector<int> key;
          for (int i = 0; i < n; ++i) {
            for (int j = i; j < n; ++j) key.push_back(g.multiplicity(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]));
          }
          if (best.empty() || key < best) best = key;
        } while (std::next_permutation(perm.begin(), perm.end()));
        best.insert(best.begin(), n);
        classes.insert(best);
        return;
      }
      for (int s = from; s < static_cast<int>(slots.size()); ++s) {
        pick[static_cast<std::size_t>(k)] = s;
        go(k + 1, s);
      }
    };
    go(0, 0);
  }
  return classes.size();
}

}  // namespace

TEST_CASE("automorphism counts") {
  CHECK(enumerate_automorphisms(FiniteGraph(2, {{0, 1}})).size() == 2);
  CHECK(enumerate_automorphisms(FiniteGraph::rose(2)).size() == 8);
  CHECK(enumerate_automorphisms(FiniteGraph::circle(3)).size() == 6);
  CHECK(enumerate_automorphisms(FiniteGraph::theta(3)).size() == 12);
  CHECK(enumerate_automorphisms(FiniteGraph(1, {})).size() == 1);
}

TEST_CASE("automorphism enumeration matches brute force") {
  const std::vector<FiniteGraph> graphs{
      FiniteGraph::rose(3), FiniteGraph::circle(4), FiniteGraph::theta(3),
      FiniteGraph(3, {{0, 1}, {1, 2}, {1, 1}}), FiniteGraph(3, {{0, 1}, {0, 1}, {1, 2}, {2, 2}}),
      FiniteGraph(4, {{0, 1}, {0, 2}, {0, 3}}), FiniteGraph(2, {{0, 0}, {1, 1}, {0, 1}, {1, 0}})};
  for (const auto& x : graphs) {
    const auto fast = enumerate_automorphisms(x);
    const std::set<GraphAutomorphism> fast_set(fast.begin(), fast.end());
    CHECK(fast_set.size() == fast.size());
    CHECK(fast_set == brute_automorphisms(x));
  }
}

TEST_CASE("automorphisms form a group") {
  for (const auto& x : {FiniteGraph::rose(2), FiniteGraph::circle(3), FiniteGraph::theta(2),
                        FiniteGraph(3, {{0, 1}, {1, 2}, {2, 0}, {0, 0}})}) {
    const auto all = enumerate_automorphisms(x);
    const std::set<GraphAutomorphism> group(all.begin(), all.end());
    CHECK(group.count(identity_automorphism(x)) == 1);
    for (const auto& f : all) {
      CHECK(group.count(inverse(f)) == 1);
      CHECK(compose(f, inverse(f)).is_identity());
      for (const auto& g : all) CHECK(group.count(compose(f, g)) == 1);
    }
  }
}

TEST_CASE("size caps") {
  CHECK_THROWS_AS(enumerate_automorphisms(FiniteGraph::rose(11)), SizeCapExceeded);
  CHECK_THROWS_AS(enumerate_automorphisms(FiniteGraph::rose(4), 100), SizeCapExceeded);
  CHECK(enumerate_automorphisms(FiniteGraph::rose(4)).size() == 384);
}

TEST_CASE("h1 action examples") {
  const auto rose = FiniteGraph::rose(2);
  CHECK(h1_action_mod3(rose, identity_automorphism(rose)).is_identity());
  const auto swap = auto_from(rose, "0\ne1 e0\n");
  const auto m = h1_action_mod3(rose, swap);
  CHECK(m(0, 0) == 0);
  CHECK(m(0, 1) == 1);
  CHECK(m(1, 0) == 1);
  CHECK(m(1, 1) == 0);
  const auto tri = FiniteGraph::circle(3);
  const auto rot = auto_from(tri, "1 2 0\ne1 e2 e0\n");
  CHECK(h1_action_mod3(tri, rot).dim() == 1);
  CHECK(h1_action_mod3(tri, rot).is_identity());
  const auto flip = auto_from(FiniteGraph::rose(1), "0\nE0\n");
  CHECK(h1_action_mod3(FiniteGraph::rose(1), flip)(0, 0) == 2);
  CHECK_THROWS_AS(h1_action_mod3(FiniteGraph(2, {}), GraphAutomorphism{{0, 1}, {}}), DisconnectedGraph);
}

TEST_CASE("h1 action is functorial for a fixed tree") {
  for (const auto& x : {FiniteGraph::theta(3), FiniteGraph(2, {{0, 0}, {1, 1}, {0, 1}}), FiniteGraph::circle(4)}) {
    const auto t = bfs_tree(x);
    const auto all = enumerate_automorphisms(x);
    for (const auto& f : all) {
      for (const auto& g : all) CHECK(h1_action(x, t, compose(f, g)) == h1_action(x, t, f) * h1_action(x, t, g));
    }
  }
}

TEST_CASE("ivanov_check examples") {
  const auto theta = FiniteGraph::theta(3);
  CHECK(ivanov_check(theta, identity_automorphism(theta)) == IvanovOutcome::Identity);
  const auto tri = FiniteGraph::circle(3);
  CHECK(ivanov_check(tri, auto_from(tri, "1 2 0\ne1 e2 e0\n")) == IvanovOutcome::CircleRotation);
  CHECK(ivanov_check(tri, auto_from(tri, "0 2 1\nE2 E1 E0\n")) == IvanovOutcome::HypothesisFails);
  const auto rose = FiniteGraph::rose(2);
  CHECK(ivanov_check(rose, auto_from(rose, "0\ne1 e0\n")) == IvanovOutcome::HypothesisFails);
  CHECK(ivanov_check(FiniteGraph::rose(1), auto_from(FiniteGraph::rose(1), "0\nE0\n")) == IvanovOutcome::HypothesisFails);
  const auto path = FiniteGraph(3, {{0, 1}, {1, 2}});
  CHECK(ivanov_check(path, auto_from(path, "2 1 0\nE1 E0\n")) == IvanovOutcome::HypothesisFails);
  // two parallel edges: swapping them is a half-turn of a 2-cycle circle
  const auto bigon = FiniteGraph::theta(2);
  CHECK(ivanov_check(bigon, auto_from(bigon, "1 0\nE1 E0\n")) == IvanovOutcome::CircleRotation);
}

TEST_CASE("graph generation matches brute-force isomorphism classes") {
  const auto graphs = connected_graphs(4);
  std::vector<std::size_t> by_edges(5, 0);
  std::set<std::vector<int>> keys;
  for (const auto& g : graphs) {
    CHECK(g.connected());
    ++by_edges[static_cast<std::size_t>(g.edge_count())];
    keys.insert(canonical_key(g));
  }
  CHECK(keys.size() == graphs.size());
  for (int m = 0; m <= 4; ++m) CHECK(by_edges[static_cast<std::size_t>(m)] == brute_graph_count(m));
  // relabelling leaves the key unchanged
  CHECK(canonical_key(FiniteGraph(3, {{0, 1}, {1, 2}, {2, 2}})) == canonical_key(FiniteGraph(3, {{2, 1}, {1, 0}, {0, 0}})));
}

TEST_CASE("lemma check on small graphs, serial and parallel") {
  const auto s = graph_lemma_check(4, Exec::Serial);
  const auto p = graph_lemma_check(4, Exec::Parallel);
  CHECK(s.violations == 0);
  CHECK(s.rotations > 0);
  CHECK(s.hypothesis_fails > 0);
  CHECK(s.identity == s.graphs);
  CHECK(s.graphs == p.graphs);
  CHECK(s.automorphisms == p.automorphisms);
  CHECK(s.rotations == p.rotations);
  CHECK(s.violations == p.violations);
}

TEST_CASE("graph text round trip") {
  const auto x = parse_graph("# theta\nV 2\n0 1\n0 1\n0 1\n");
  CHECK(x == FiniteGraph::theta(3));
  CHECK(parse_graph(to_text(x)) == x);
  const auto f = auto_from(x, "1 0\nE2 E0 E1\n");
  CHECK(parse_graph_automorphism(x, to_text(f)) == f);
  CHECK_THROWS_AS(parse_graph("V 1\n0 3\n"), ParseError);
  CHECK_THROWS_AS(parse_graph_automorphism(x, "0 1\ne1 e0 e0\n"), ParseError);
}
