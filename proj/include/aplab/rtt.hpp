#pragma once

// Analytics for graph maps on marked graphs with trivial vertex groups:
// tightening, invariant filtrations and transition matrices, stratum growth,
// cyclic partitions, turns, train-track conditions and bounded cancellation.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "aplab/homology.hpp"
#include "aplab/splittings.hpp"

namespace aplab {

/// Throws std::invalid_argument when consecutive edges do not meet.
EdgePath tighten(const FiniteGraph& x, const EdgePath& p);
bool is_tight(const EdgePath& p);
EdgePath reversed(const EdgePath& p);

/// A graph map whose edge images are nonempty tight paths.
struct GraphMapRep {
  MarkedGraph domain;
  GraphMap map;

  /// Throws std::invalid_argument on vertex groups, discontinuity, empty or untight images.
  GraphMapRep(MarkedGraph domain, GraphMap map);
  const FiniteGraph& graph() const noexcept { return domain.graph(); }
  /// Tightened image of a path.
  EdgePath image(const EdgePath& p) const;
};

/// f after g, images tightened. Throws std::invalid_argument if some edge image tightens away.
GraphMapRep compose(const GraphMapRep& f, const GraphMapRep& g);

/// Column e counts occurrences of e' and its reverse in f(e), over the given edges.
IntegerMatrix transition_matrix(const GraphMapRep& f, const std::vector<int>& edges);

enum class StratumKind { Zero, NEG, EG };
std::string to_string(StratumKind k);

struct Growth {
  StratumKind kind = StratumKind::Zero;
  double lambda = 0.0;
  double lower = 0.0;  // Collatz-Wielandt bracket
  double upper = 0.0;
};

inline constexpr double kLambdaTolerance = 1e-10;  // relative bracket width
inline constexpr double kEgThreshold = 1e-8;       // EG iff lambda > 1 + this

/// For a 1x1 zero or irreducible nonnegative M. The NEG/EG split is exact
/// (lambda = 1 iff M is a permutation matrix) and must agree with the
/// numeric threshold; the bracket is cross-checked by a sign change of
/// det(tI - M). Throws VerificationFailed on disagreement.
Growth classify_stratum(const IntegerMatrix& m);

struct CyclicPartition {
  int period = 1;
  std::vector<std::vector<int>> classes;  // edge indices; classes[i] maps into classes[i+1 mod d]
};

/// Period of the irreducible digraph of M and its cyclic classes, indexed by
/// the stratum's edges. Throws VerificationFailed if some class maps outside
/// its successor, std::invalid_argument if M is not irreducible.
CyclicPartition aperiodic_partition(const IntegerMatrix& m, const std::vector<int>& edges);

struct Stratum {
  std::vector<int> edges;
  IntegerMatrix matrix;
  Growth growth;
  std::optional<CyclicPartition> partition;  // for nonzero strata
};

/// Strata from the bottom: each initial union is f-invariant and every
/// matrix is irreducible or zero.
std::vector<Stratum> filtration_of(const GraphMapRep& f);

enum class TurnKind { Degenerate, Illegal, Legal };
std::string to_string(TurnKind k);

struct Turn {
  EdgeRef first = 0;
  EdgeRef second = 0;
  TurnKind kind = TurnKind::Legal;
};

/// Direction map: first edge of the image of each direction.
EdgeRef direction_image(const GraphMapRep& f, EdgeRef d);
/// All turns {d, d'} at each vertex, d <= d' by letter order.
std::vector<Turn> turns(const GraphMapRep& f);
std::vector<Turn> illegal_turns(const GraphMapRep& f);

struct RttStratumReport {
  int stratum = 0;
  bool directions_preserved = false;    // condition 1
  bool connecting_paths_survive = false;  // condition 2
  bool legal_paths_stay_legal = false;    // condition 3
  std::vector<std::string> violations;
  bool pass() const { return directions_preserved && connecting_paths_survive && legal_paths_stay_legal; }
};

struct RttReport {
  std::vector<RttStratumReport> eg_strata;
  bool pass() const;
};

/// Condition 2 is decided exactly by folding f on each lower component.
RttReport verify_rtt(const GraphMapRep& f, const std::vector<Stratum>& strata);

/// Sum of edge image lengths.
std::int64_t bcc_bound(const GraphMapRep& f);

EdgePath random_tight_path(const FiniteGraph& x, int length, std::mt19937_64& rng);

struct BccReport {
  std::int64_t bound = 0;
  int trials = 0;
  int violations = 0;
  std::int64_t worst_cancellation = 0;  // max of l(f r1) + l(f r2) - l(f r)
};

/// Random tight paths of length 1..max_length split at a random point.
BccReport bcc_check(const GraphMapRep& f, int trials, int max_length, std::uint64_t seed);

/// Marked-graph text plus one line per edge: "e0 -> e0 e1".
GraphMapRep parse_graph_map(const std::string& text);
std::string to_text(const GraphMapRep& f);

std::string to_json(const GraphMapRep& f, const std::vector<Stratum>& strata, const RttReport& rtt, const BccReport& bcc);

}  // namespace aplab
