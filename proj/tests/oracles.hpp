#pragma once

// Brute-force oracles for the unit and acceptance suites. They work on raw
// letter vectors with their own reduction so they stay independent of the
// library paths they check.

#include <cstdint>
#include <functional>
#include <set>
#include <vector>

namespace oracle {

using Raw = std::vector<int>;

inline Raw reduce(const Raw& s) {
  Raw out;
  for (int l : s) {
    if (!out.empty() && out.back() == -l) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return out;
}

inline Raw inverse(const Raw& s) {
  Raw out(s.rbegin(), s.rend());
  for (auto& l : out) l = -l;
  return out;
}

inline Raw cat(const Raw& a, const Raw& b) {
  Raw s = a;
  s.insert(s.end(), b.begin(), b.end());
  return reduce(s);
}

inline Raw conj(const Raw& w, const Raw& u) { return cat(cat(w, u), inverse(w)); }

/// All reduced words of length <= max_len over rank letters, shortest first.
inline std::vector<Raw> all_words(int rank, int max_len) {
  std::vector<Raw> out{Raw{}};
  std::size_t begin = 0;
  for (int len = 1; len <= max_len; ++len) {
    const std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i) {
      for (int x = 1; x <= rank; ++x) {
        for (int l : {x, -x}) {
          if (!out[i].empty() && out[i].back() == -l) continue;
          Raw w = out[i];
          w.push_back(l);
          out.push_back(std::move(w));
        }
      }
    }
    begin = end;
  }
  return out;
}

/// {w u w^{-1} : |w| <= bound}.
inline std::set<Raw> conjugates(int rank, const Raw& u, int bound) {
  std::set<Raw> out;
  for (const auto& w : all_words(rank, bound)) out.insert(conj(w, u));
  return out;
}

/// Substitution by images (raw words), reduced.
inline Raw substitute(const std::vector<Raw>& images, const Raw& w) {
  Raw s;
  for (int l : w) {
    const Raw& img = images[static_cast<std::size_t>((l > 0 ? l : -l) - 1)];
    if (l > 0) {
      s.insert(s.end(), img.begin(), img.end());
    } else {
      const Raw inv = inverse(img);
      s.insert(s.end(), inv.begin(), inv.end());
    }
  }
  return reduce(s);
}

/// Brute-force search for w (|w| <= bound) with w u_i w^{-1} = v_i for all i.
inline bool has_common_conjugator(int rank, const std::vector<std::pair<Raw, Raw>>& pairs, int bound) {
  for (const auto& w : all_words(rank, bound)) {
    bool ok = true;
    for (const auto& [u, v] : pairs) {
      if (conj(w, u) != v) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
  }
  return false;
}

/// All products of at most `max_factors` generators (or inverses).
inline std::set<Raw> generator_products(const std::vector<Raw>& gens, int max_factors) {
  std::vector<Raw> letters;
  for (const auto& g : gens) {
    letters.push_back(g);
    letters.push_back(inverse(g));
  }
  std::set<Raw> out{Raw{}};
  std::vector<Raw> frontier{Raw{}};
  for (int k = 0; k < max_factors; ++k) {
    std::vector<Raw> next;
    for (const auto& p : frontier) {
      for (const auto& g : letters) {
        Raw q = cat(p, g);
        if (out.insert(q).second) next.push_back(q);
      }
    }
    frontier = std::move(next);
  }
  return out;
}

/// Elements of <gens> reachable by multiplying generators (or inverses) one
/// at a time while every partial product has length <= max_len.
inline std::set<Raw> short_products(const std::vector<Raw>& gens, int max_len) {
  std::vector<Raw> letters;
  for (const auto& g : gens) {
    letters.push_back(g);
    letters.push_back(inverse(g));
  }
  std::set<Raw> out{Raw{}};
  std::vector<Raw> frontier{Raw{}};
  while (!frontier.empty()) {
    std::vector<Raw> next;
    for (const auto& p : frontier) {
      for (const auto& g : letters) {
        Raw q = cat(p, g);
        if (static_cast<int>(q.size()) <= max_len && out.insert(q).second) next.push_back(q);
      }
    }
    frontier = std::move(next);
  }
  return out;
}

/// Integer vectors with entries in [-r, r].
inline std::vector<std::vector<std::int64_t>> box(int n, int r) {
  std::vector<std::vector<std::int64_t>> out{{}};
  for (int i = 0; i < n; ++i) {
    std::vector<std::vector<std::int64_t>> next;
    for (const auto& v : out) {
      for (int x = -r; x <= r; ++x) {
        auto w = v;
        w.push_back(x);
        next.push_back(std::move(w));
      }
    }
    out = std::move(next);
  }
  return out;
}

/// Whether M^k v = v for some 1 <= k <= max_k, iterating M on v directly.
inline bool periodic_vector(const std::vector<std::vector<std::int64_t>>& m, const std::vector<std::int64_t>& v,
                            int max_k) {
  std::vector<std::int64_t> x = v;
  const std::size_t n = v.size();
  for (int k = 1; k <= max_k; ++k) {
    std::vector<std::int64_t> y(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) y[i] += m[i][j] * x[j];
    }
    x = std::move(y);
    if (x == v) return true;
    for (auto e : x) {
      if (e > (1LL << 40) || e < -(1LL << 40)) return false;
    }
  }
  return false;
}

}  // namespace oracle
