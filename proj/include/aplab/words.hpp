#pragma once

// Freely reduced words and conjugacy-class normal forms in F_N.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace aplab {

/// Signed basis index: +i is x_i, -i is x_i^{-1}. Zero is never a letter.
using Letter = int;

struct Alphabet {
  int rank = 1;

  Alphabet() = default;
  explicit Alphabet(int r);

  bool contains(Letter l) const noexcept { return l != 0 && l <= rank && -l <= rank; }
  friend bool operator==(const Alphabet&, const Alphabet&) = default;
};

/// Total order on letters: x_1 < x_1^{-1} < x_2 < x_2^{-1} < ...
inline int letter_order(Letter l) noexcept { return 2 * ((l > 0 ? l : -l) - 1) + (l < 0 ? 1 : 0); }

class Word {
 public:
  /// The identity of F_N.
  explicit Word(Alphabet alphabet = Alphabet{});

  /// Free reduction of an arbitrary letter sequence. Throws InvalidLetter.
  static Word reduce(Alphabet alphabet, std::span<const Letter> raw);
  static Word letter(Alphabet alphabet, Letter l);

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  const std::vector<Letter>& letters() const noexcept { return letters_; }
  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }
  Letter operator[](std::size_t i) const { return letters_[i]; }
  Letter front() const { return letters_.front(); }
  Letter back() const { return letters_.back(); }

  Word inverse() const;
  Word pow(long k) const;
  /// Reduced product. Throws AlphabetMismatch.
  Word operator*(const Word& rhs) const;

  friend bool operator==(const Word&, const Word&) = default;
  /// Shortlex under letter_order.
  friend std::strong_ordering operator<=>(const Word& a, const Word& b);

 private:
  Word(Alphabet alphabet, std::vector<Letter> reduced) : alphabet_(alphabet), letters_(std::move(reduced)) {}
  friend class CyclicWord;
  friend Word apply_endo(std::span<const Word>, const Word&);
  friend std::optional<Word> apply_endo_bounded(std::span<const Word>, const Word&, std::size_t, std::size_t);

  Alphabet alphabet_;
  std::vector<Letter> letters_;
};

struct CyclicReduction;

/// Conjugacy class of an element, stored as the least rotation of a
/// cyclically reduced word.
class CyclicWord {
 public:
  explicit CyclicWord(Alphabet alphabet = Alphabet{}) : alphabet_(alphabet) {}
  /// Canonical class of w (w need not be cyclically reduced).
  static CyclicWord of(const Word& w);

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  const std::vector<Letter>& letters() const noexcept { return letters_; }
  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }
  Word as_word() const { return Word(alphabet_, letters_); }

  friend bool operator==(const CyclicWord&, const CyclicWord&) = default;
  friend std::strong_ordering operator<=>(const CyclicWord& a, const CyclicWord& b) {
    return a.as_word() <=> b.as_word();
  }

 private:
  friend CyclicReduction cyclic_reduce(const Word&);
  CyclicWord(Alphabet alphabet, std::vector<Letter> letters) : alphabet_(alphabet), letters_(std::move(letters)) {}

  Alphabet alphabet_;
  std::vector<Letter> letters_;
};

struct CyclicReduction {
  CyclicWord core;
  Word conjugator;  // w == conjugator * core * conjugator^{-1}
};

CyclicReduction cyclic_reduce(const Word& w);

/// Substitutes images[i-1] for x_i (inverted images for x_i^{-1}) and reduces.
/// Throws AlphabetMismatch when the image count differs from the rank of w.
Word apply_endo(std::span<const Word> images, const Word& w);
/// apply_endo, or absent once the reduced result must exceed cap. The rest
/// of w can cancel at most min(slack, letters still to come) from the
/// partial result; pass a bounded-cancellation constant as slack when w is
/// reduced and the images define an automorphism.
std::optional<Word> apply_endo_bounded(std::span<const Word> images, const Word& w, std::size_t cap,
                                       std::size_t slack = SIZE_MAX);

/// Index of the least rotation of a cyclic sequence under letter_order.
std::size_t least_rotation(std::span<const Letter> s);

// Text format: a..z are x_1..x_26, uppercase are inverses, "1" is the identity.
Word parse_word(Alphabet alphabet, std::string_view text);
std::string to_string(const Word& w);
std::string to_string(const CyclicWord& w);
char letter_char(Letter l);

}  // namespace aplab

template <>
struct std::hash<aplab::CyclicWord> {
  std::size_t operator()(const aplab::CyclicWord& w) const noexcept {
    std::uint64_t h = 1469598103934665603ULL ^ static_cast<std::uint64_t>(w.alphabet().rank);
    for (auto l : w.letters()) h = (h ^ static_cast<std::uint64_t>(l + 64)) * 1099511628211ULL;
    return static_cast<std::size_t>(h);
  }
};

template <>
struct std::hash<aplab::Word> {
  std::size_t operator()(const aplab::Word& w) const noexcept {
    std::uint64_t h = 1469598103934665603ULL ^ static_cast<std::uint64_t>(w.alphabet().rank);
    for (auto l : w.letters()) h = (h ^ static_cast<std::uint64_t>(l + 64)) * 1099511628211ULL;
    return static_cast<std::size_t>(h);
  }
};
