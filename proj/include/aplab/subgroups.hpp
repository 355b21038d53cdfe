#pragma once

// Stallings cores of finitely generated subgroups of F_N, conjugacy classes
// of subgroups, free factor systems with construction witnesses, and orbit
// period detection under automorphisms.

#include <array>
#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "aplab/aut.hpp"

namespace aplab {

/// from --label--> to, label > 0.
struct LabeledEdge {
  int from = 0;
  Letter label = 1;
  int to = 0;
  friend auto operator<=>(const LabeledEdge&, const LabeledEdge&) = default;
};

/// Folded based graph. Vertices are numbered breadth-first from the basepoint
/// (vertex 0) in letter order, so equal subgroups give identical cores.
class StallingsCore {
 public:
  /// Core of <generators>; generators must share one alphabet.
  static StallingsCore fold(Alphabet alphabet, const std::vector<Word>& generators);

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  int vertex_count() const noexcept { return vertices_; }
  const std::vector<LabeledEdge>& edges() const noexcept { return edges_; }
  int edge_count() const noexcept { return static_cast<int>(edges_.size()); }
  int rank() const noexcept { return edge_count() - vertex_count() + 1; }
  /// Target of the l-edge at v, if any.
  std::optional<int> follow(int v, Letter l) const;
  /// Free basis read off a spanning tree.
  std::vector<Word> basis() const;

  friend bool operator==(const StallingsCore&, const StallingsCore&) = default;

 private:
  Alphabet alphabet_;
  int vertices_ = 1;
  std::vector<LabeledEdge> edges_;
  std::vector<std::vector<int>> adjacency_;  // [v][slot] -> vertex or -1
  friend class SubgroupConjClass;
};

bool membership(const Word& w, const StallingsCore& h);

/// Conjugacy class of a subgroup: the cyclic core, canonically numbered.
class SubgroupConjClass {
 public:
  static SubgroupConjClass of(const StallingsCore& core);
  static SubgroupConjClass of(Alphabet alphabet, const std::vector<Word>& generators);

  const Alphabet& alphabet() const noexcept { return core_.alphabet(); }
  const StallingsCore& core() const noexcept { return core_; }
  int rank() const noexcept { return core_.rank(); }
  int edge_count() const noexcept { return core_.edge_count(); }
  /// Basis of a representative subgroup.
  std::vector<Word> generators() const { return core_.basis(); }

  friend bool operator==(const SubgroupConjClass& a, const SubgroupConjClass& b) { return a.key_ == b.key_; }
  friend auto operator<=>(const SubgroupConjClass& a, const SubgroupConjClass& b) { return a.key_ <=> b.key_; }

 private:
  StallingsCore core_;
  std::vector<int> key_;
};

inline bool conjugacy_eq(const SubgroupConjClass& h, const SubgroupConjClass& k) { return h == k; }

/// Some w, |w| <= conj_bound, shortlex first, with w A w^{-1} <= B.
/// Absent is inconclusive. Throws std::invalid_argument if conj_bound > 8.
std::optional<Word> conjugate_into(const StallingsCore& a, const StallingsCore& b, int conj_bound);

/// Some g with g K g^{-1} = H, absent when H and K are not conjugate.
std::optional<Word> subgroup_conjugator(Alphabet alphabet, const std::vector<Word>& h, const std::vector<Word>& k);

/// Whether x lies in the double coset H t K.
bool in_double_coset(const Word& x, const std::vector<Word>& h, const Word& t, const std::vector<Word>& k);

SubgroupConjClass image_class(const FreeAutomorphism& phi, const SubgroupConjClass& h);

/// Classes of phi(<x_j : j in block>) for disjoint blocks of basis indices.
class FreeFactorSystem {
 public:
  /// Blocks are 1-based basis indices; throws std::invalid_argument unless
  /// they are nonempty and pairwise disjoint.
  FreeFactorSystem(FreeAutomorphism witness, std::vector<std::vector<int>> blocks);

  int ambient_rank() const noexcept { return witness_.rank(); }
  const FreeAutomorphism& witness() const noexcept { return witness_; }
  const std::vector<std::vector<int>>& blocks() const noexcept { return blocks_; }
  /// Sorted; a multiset when two blocks give the same class.
  const std::vector<SubgroupConjClass>& classes() const noexcept { return classes_; }
  /// Number of factors plus the corank of their free product.
  int grushko_rank() const noexcept;
  bool sporadic() const noexcept { return grushko_rank() <= 2; }
  /// phi applied to the witness: a system whose classes are the phi-images.
  FreeFactorSystem image(const FreeAutomorphism& phi) const;

 private:
  FreeAutomorphism witness_;
  std::vector<std::vector<int>> blocks_;
  std::vector<SubgroupConjClass> classes_;
};

enum class Tri { True, False, Inconclusive };
std::string to_string(Tri t);

/// F1 below F2: each class of F1 conjugates into a class of F2. True also
/// asserts that the Grushko rank does not increase (TheoremViolation).
Tri ffs_poset_leq(const FreeFactorSystem& f1, const FreeFactorSystem& f2, int conj_bound);

struct OrbitOutcome {
  enum class Kind { Period, NoPeriodWithin, Blowup };
  Kind kind = Kind::NoPeriodWithin;
  int period = 0;      // for Period
  int iterations = 0;  // images computed
  std::vector<std::size_t> sizes;  // word length or core edges after each step
};

std::string to_string(const OrbitOutcome& o);

inline constexpr int kDefaultMaxIter = 12;
inline constexpr std::size_t kDefaultLengthCap = 10000;

/// First return of the conjugacy class [w] under phi.
OrbitOutcome orbit_period(const FreeAutomorphism& phi, const CyclicWord& start, int max_iter = kDefaultMaxIter,
                          std::size_t length_cap = kDefaultLengthCap);
/// First return of the element w itself under phi.
OrbitOutcome word_orbit_period(const FreeAutomorphism& phi, const Word& start, int max_iter = kDefaultMaxIter,
                               std::size_t length_cap = kDefaultLengthCap);
/// Meet in the middle: phi^p x = x iff phi^ceil(p/2) x = phi^-floor(p/2) x,
/// so only ceil(max_iter/2) images each way are computed. Any Period agrees
/// with the one-sided version; Blowup means an image needed here passed the
/// cap, so it can occur later or not at all. sizes holds the forward images.
OrbitOutcome orbit_period_mitm(const FreeAutomorphism& phi, const CyclicWord& start, int max_iter = kDefaultMaxIter,
                               std::size_t length_cap = kDefaultLengthCap);
OrbitOutcome word_orbit_period_mitm(const FreeAutomorphism& phi, const Word& start, int max_iter = kDefaultMaxIter,
                                    std::size_t length_cap = kDefaultLengthCap);
OrbitOutcome orbit_period(const FreeAutomorphism& phi, const SubgroupConjClass& start, int max_iter = kDefaultMaxIter,
                          std::size_t length_cap = kDefaultLengthCap);
/// First return of the multiset of classes; the cap bounds total core edges.
OrbitOutcome orbit_period(const FreeAutomorphism& phi, const FreeFactorSystem& start, int max_iter = kDefaultMaxIter,
                          std::size_t length_cap = kDefaultLengthCap);

std::vector<Word> parse_generators(Alphabet alphabet, const std::string& text);

}  // namespace aplab
