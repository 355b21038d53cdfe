#include "aplab/words.hpp"

#include <algorithm>
#include <cctype>
#include <string>

#include "aplab/errors.hpp"

namespace aplab {

Alphabet::Alphabet(int r) : rank(r) {
  if (r < 1) throw InvalidLetter("alphabet rank must be at least 1");
}

Word::Word(Alphabet alphabet) : alphabet_(alphabet) {}

Word Word::reduce(Alphabet alphabet, std::span<const Letter> raw) {
  std::vector<Letter> out;
  out.reserve(raw.size());
  for (Letter l : raw) {
    if (!alphabet.contains(l)) {
      throw InvalidLetter("letter index " + std::to_string(l) + " outside alphabet of rank " +
                          std::to_string(alphabet.rank));
    }
    if (!out.empty() && out.back() == -l) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return Word(alphabet, std::move(out));
}

Word Word::letter(Alphabet alphabet, Letter l) {
  const Letter one[] = {l};
  return reduce(alphabet, one);
}

Word Word::inverse() const {
  std::vector<Letter> out(letters_.rbegin(), letters_.rend());
  for (auto& l : out) l = -l;
  return Word(alphabet_, std::move(out));
}

Word Word::pow(long k) const {
  if (k < 0) return inverse().pow(-k);
  Word result(alphabet_);
  for (long i = 0; i < k; ++i) result = result * *this;
  return result;
}

Word Word::operator*(const Word& rhs) const {
  if (alphabet_ != rhs.alphabet_) throw AlphabetMismatch("product of words over different alphabets");
  std::size_t cancel = 0;
  const std::size_t limit = std::min(letters_.size(), rhs.letters_.size());
  while (cancel < limit && letters_[letters_.size() - 1 - cancel] == -rhs.letters_[cancel]) ++cancel;
  std::vector<Letter> out;
  out.reserve(letters_.size() + rhs.letters_.size() - 2 * cancel);
  out.insert(out.end(), letters_.begin(), letters_.end() - static_cast<std::ptrdiff_t>(cancel));
  out.insert(out.end(), rhs.letters_.begin() + static_cast<std::ptrdiff_t>(cancel), rhs.letters_.end());
  return Word(alphabet_, std::move(out));
}

std::strong_ordering operator<=>(const Word& a, const Word& b) {
  if (auto c = a.letters_.size() <=> b.letters_.size(); c != 0) return c;
  for (std::size_t i = 0; i < a.letters_.size(); ++i) {
    if (auto c = letter_order(a.letters_[i]) <=> letter_order(b.letters_[i]); c != 0) return c;
  }
  return a.alphabet_.rank <=> b.alphabet_.rank;
}

std::size_t least_rotation(std::span<const Letter> s) {
  const std::size_t n = s.size();
  if (n < 2) return 0;
  std::size_t i = 0, j = 1, k = 0;
  while (i < n && j < n && k < n) {
    const int a = letter_order(s[(i + k) % n]);
    const int b = letter_order(s[(j + k) % n]);
    if (a == b) {
      ++k;
      continue;
    }
    if (a > b) {
      i += k + 1;
    } else {
      j += k + 1;
    }
    if (i == j) ++j;
    k = 0;
  }
  return std::min(i, j);
}

CyclicReduction cyclic_reduce(const Word& w) {
  const auto& ls = w.letters();
  std::size_t lo = 0, hi = ls.size();
  while (hi - lo >= 2 && ls[lo] == -ls[hi - 1]) {
    ++lo;
    --hi;
  }
  std::vector<Letter> core(ls.begin() + static_cast<std::ptrdiff_t>(lo), ls.begin() + static_cast<std::ptrdiff_t>(hi));
  const std::size_t r = least_rotation(core);
  // core = p s with p = core[0, r); the rotation s p equals p^{-1} core p.
  Word conjugator = Word::reduce(w.alphabet(), std::span<const Letter>(ls.data(), lo));
  Word prefix = Word::reduce(w.alphabet(), std::span<const Letter>(core.data(), r));
  std::rotate(core.begin(), core.begin() + static_cast<std::ptrdiff_t>(r), core.end());
  return {CyclicWord(w.alphabet(), std::move(core)), conjugator * prefix};
}

CyclicWord CyclicWord::of(const Word& w) { return cyclic_reduce(w).core; }

namespace {

// Substitution with images indexed by slot: 2(i-1) for x_i, 2(i-1)+1 for its
// inverse. Images are reduced, so each one cancels only against the top of
// the output and the rest is appended whole.
class Substitution {
 public:
  Substitution(std::span<const Word> images, const Alphabet& source) {
    if (images.size() != static_cast<std::size_t>(source.rank)) {
      throw AlphabetMismatch("endomorphism has " + std::to_string(images.size()) + " images for rank " +
                             std::to_string(source.rank));
    }
    target_ = images.empty() ? source : images.front().alphabet();
    for (const auto& img : images) {
      if (img.alphabet() != target_) throw AlphabetMismatch("endomorphism images over different alphabets");
      slots_.push_back(img.letters());
      slots_.push_back(img.inverse().letters());
    }
  }

  const Alphabet& target() const noexcept { return target_; }
  const std::vector<Letter>& image(Letter l) const { return slots_[static_cast<std::size_t>(letter_order(l))]; }

  void append(std::vector<Letter>& out, Letter l) const {
    const auto& img = image(l);
    std::size_t k = 0;
    while (k < img.size() && !out.empty() && out.back() == -img[k]) {
      out.pop_back();
      ++k;
    }
    out.insert(out.end(), img.begin() + static_cast<std::ptrdiff_t>(k), img.end());
  }

 private:
  Alphabet target_;
  std::vector<std::vector<Letter>> slots_;
};

}  // namespace

Word apply_endo(std::span<const Word> images, const Word& w) {
  const Substitution sub(images, w.alphabet());
  std::vector<Letter> out;
  for (Letter l : w.letters()) sub.append(out, l);
  return Word(sub.target(), std::move(out));
}

std::optional<Word> apply_endo_bounded(std::span<const Word> images, const Word& w, std::size_t cap, std::size_t slack) {
  const Substitution sub(images, w.alphabet());
  std::size_t remaining = 0;
  for (Letter l : w.letters()) remaining += sub.image(l).size();
  std::vector<Letter> out;
  out.reserve(std::min(cap, remaining) + 1);
  for (Letter l : w.letters()) {
    sub.append(out, l);
    remaining -= sub.image(l).size();
    if (out.size() > cap + std::min(slack, remaining)) return std::nullopt;
  }
  return Word(sub.target(), std::move(out));
}

char letter_char(Letter l) {
  const int idx = std::abs(l) - 1;
  if (idx < 0 || idx >= 26) throw InvalidLetter("letter index has no text form: " + std::to_string(l));
  return static_cast<char>(l > 0 ? 'a' + idx : 'A' + idx);
}

Word parse_word(Alphabet alphabet, std::string_view text) {
  std::vector<Letter> raw;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c)) || c == '1') continue;
    if (c >= 'a' && c <= 'z') {
      raw.push_back(c - 'a' + 1);
    } else if (c >= 'A' && c <= 'Z') {
      raw.push_back(-(c - 'A' + 1));
    } else {
      throw InvalidLetter(std::string("unexpected character '") + c + "' in word");
    }
  }
  return Word::reduce(alphabet, raw);
}

std::string to_string(const Word& w) {
  if (w.empty()) return "1";
  std::string s;
  s.reserve(w.size());
  for (Letter l : w.letters()) s.push_back(letter_char(l));
  return s;
}

std::string to_string(const CyclicWord& w) { return to_string(w.as_word()); }

}  // namespace aplab
