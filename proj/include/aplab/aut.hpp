#pragma once

// Automorphisms of F_N carried together with their inverses.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "aplab/words.hpp"

namespace aplab {

class FreeAutomorphism {
 public:
  /// Accepts forward/backward image lists only if both composites fix every
  /// basis letter. Throws CompositeNotIdentity or AlphabetMismatch.
  static FreeAutomorphism certify(std::vector<Word> forward, std::vector<Word> backward);
  static FreeAutomorphism identity(Alphabet alphabet);
  /// Conjugation g -> w g w^{-1}.
  static FreeAutomorphism inner(const Word& w);

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  int rank() const noexcept { return alphabet_.rank; }
  const std::vector<Word>& forward() const noexcept { return forward_; }
  const std::vector<Word>& backward() const noexcept { return backward_; }
  const Word& image(int letter) const { return forward_.at(static_cast<std::size_t>(letter - 1)); }

  Word operator()(const Word& w) const { return apply_endo(forward_, w); }
  FreeAutomorphism inverse() const { return FreeAutomorphism(alphabet_, backward_, forward_); }
  FreeAutomorphism pow(long k) const;
  /// Sum of forward image lengths.
  std::size_t image_length() const noexcept;
  bool is_identity() const;

  friend bool operator==(const FreeAutomorphism&, const FreeAutomorphism&) = default;

 private:
  FreeAutomorphism(Alphabet alphabet, std::vector<Word> forward, std::vector<Word> backward)
      : alphabet_(alphabet), forward_(std::move(forward)), backward_(std::move(backward)) {}
  friend FreeAutomorphism compose(const FreeAutomorphism&, const FreeAutomorphism&);

  Alphabet alphabet_;
  std::vector<Word> forward_;
  std::vector<Word> backward_;
};

/// Bounded cancellation: for reduced uv, phi(u) phi(v) cancels at most
/// L * floor(L'/2) letters, L and L' the longest images under phi and its
/// inverse. (The inverse image of the geodesic to phi(uv) is a chain with
/// steps <= L' through u; phi is L-Lipschitz.)
std::size_t cancellation_bound(const FreeAutomorphism& phi) noexcept;

/// phi o psi: first psi, then phi. Throws AlphabetMismatch.
FreeAutomorphism compose(const FreeAutomorphism& phi, const FreeAutomorphism& psi);

/// Conjugator w with phi(g) = w g w^{-1} for all g, if phi is inner.
std::optional<Word> is_inner(const FreeAutomorphism& phi);

/// Some w with w u_i w^{-1} = v_i for every pair (u_i, v_i), if one exists.
std::optional<Word> common_conjugator(std::span<const std::pair<Word, Word>> pairs);

bool outer_eq(const FreeAutomorphism& phi, const FreeAutomorphism& psi);

/// Element of Out(F_N) given by a representative; equality is up to inner.
class OuterClass {
 public:
  explicit OuterClass(FreeAutomorphism representative) : rep_(std::move(representative)) {}
  const FreeAutomorphism& representative() const noexcept { return rep_; }
  friend bool operator==(const OuterClass& a, const OuterClass& b) { return outer_eq(a.rep_, b.rep_); }

 private:
  FreeAutomorphism rep_;
};

enum class GeneratorFamily { Nielsen, IA3 };

GeneratorFamily parse_family(std::string_view name);

/// Nielsen: right transvections, inversions, transpositions.
/// IA3: partial conjugations x_i -> x_j x_i x_j^{-1}, commutator insertions
/// x_i -> x_i [x_j, x_k], cube maps x_i -> x_i x_j^3. Requires N >= 2.
std::vector<FreeAutomorphism> standard_generators(int rank, GeneratorFamily family);

/// Product of `budget` generators or inverses drawn uniformly; a pure function of seed.
FreeAutomorphism sample(std::span<const FreeAutomorphism> generators, int budget, std::uint64_t seed);

/// Mixes a base seed and a trial index into an independent stream seed.
std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t index);

// Text format: "a -> ab" per letter, blank line, then inverse lines.
FreeAutomorphism parse_automorphism(std::string_view text);
std::string to_text(const FreeAutomorphism& phi);
/// One-line "a->ab b->b" summary of the forward images.
std::string summary(const FreeAutomorphism& phi);

}  // namespace aplab
