#include "aplab/aut.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "aplab/errors.hpp"

namespace aplab {

namespace {

std::vector<Word> basis(Alphabet alphabet) {
  std::vector<Word> out;
  for (int i = 1; i <= alphabet.rank; ++i) out.push_back(Word::letter(alphabet, i));
  return out;
}

// True iff w is a (possibly empty) power of the letter x.
bool is_power_of(const Word& w, Letter x) {
  if (w.empty()) return true;
  const Letter first = w.front();
  if (first != x && first != -x) return false;
  return std::all_of(w.letters().begin(), w.letters().end(), [first](Letter l) { return l == first; });
}

// Primitive root of a cyclically reduced word.
Word primitive_root(const CyclicWord& c) {
  const auto& ls = c.letters();
  const std::size_t n = ls.size();
  for (std::size_t p = 1; p <= n; ++p) {
    if (n % p != 0) continue;
    bool periodic = true;
    for (std::size_t i = p; i < n && periodic; ++i) periodic = ls[i] == ls[i - p];
    if (periodic) return Word::reduce(c.alphabet(), std::span<const Letter>(ls.data(), p));
  }
  return c.as_word();
}

}  // namespace

FreeAutomorphism FreeAutomorphism::certify(std::vector<Word> forward, std::vector<Word> backward) {
  if (forward.empty() || forward.size() != backward.size()) {
    throw AlphabetMismatch("forward and backward image lists must be nonempty and of equal length");
  }
  const Alphabet alphabet = forward.front().alphabet();
  if (alphabet.rank != static_cast<int>(forward.size())) {
    throw AlphabetMismatch("image count does not match the rank of the image alphabet");
  }
  for (const auto* side : {&forward, &backward}) {
    for (const auto& w : *side) {
      if (w.alphabet() != alphabet) throw AlphabetMismatch("images over different alphabets");
    }
  }
  for (int i = 1; i <= alphabet.rank; ++i) {
    const Word x = Word::letter(alphabet, i);
    const auto idx = static_cast<std::size_t>(i - 1);
    if (apply_endo(forward, backward[idx]) != x) {
      throw CompositeNotIdentity(i, "forward o backward moves " + to_string(x) + " to " +
                                        to_string(apply_endo(forward, backward[idx])));
    }
    if (apply_endo(backward, forward[idx]) != x) {
      throw CompositeNotIdentity(i, "backward o forward moves " + to_string(x) + " to " +
                                        to_string(apply_endo(backward, forward[idx])));
    }
  }
  return FreeAutomorphism(alphabet, std::move(forward), std::move(backward));
}

FreeAutomorphism FreeAutomorphism::identity(Alphabet alphabet) {
  auto b = basis(alphabet);
  return FreeAutomorphism(alphabet, b, b);
}

FreeAutomorphism FreeAutomorphism::inner(const Word& w) {
  const Alphabet alphabet = w.alphabet();
  std::vector<Word> fwd, bwd;
  const Word wi = w.inverse();
  for (const auto& x : basis(alphabet)) {
    fwd.push_back(w * x * wi);
    bwd.push_back(wi * x * w);
  }
  return FreeAutomorphism(alphabet, std::move(fwd), std::move(bwd));
}

FreeAutomorphism FreeAutomorphism::pow(long k) const {
  if (k < 0) return inverse().pow(-k);
  FreeAutomorphism result = identity(alphabet_);
  FreeAutomorphism base = *this;
  while (k > 0) {
    if (k & 1) result = compose(result, base);
    k >>= 1;
    if (k > 0) base = compose(base, base);
  }
  return result;
}

std::size_t cancellation_bound(const FreeAutomorphism& phi) noexcept {
  std::size_t l = 0, l_inv = 0;
  for (const auto& w : phi.forward()) l = std::max(l, w.size());
  for (const auto& w : phi.backward()) l_inv = std::max(l_inv, w.size());
  return l * (l_inv / 2);
}

std::size_t FreeAutomorphism::image_length() const noexcept {
  std::size_t total = 0;
  for (const auto& w : forward_) total += w.size();
  return total;
}

bool FreeAutomorphism::is_identity() const {
  for (int i = 1; i <= rank(); ++i) {
    const auto& img = image(i);
    if (img.size() != 1 || img.front() != i) return false;
  }
  return true;
}

FreeAutomorphism compose(const FreeAutomorphism& phi, const FreeAutomorphism& psi) {
  if (phi.alphabet() != psi.alphabet()) throw AlphabetMismatch("composing automorphisms of different ranks");
  std::vector<Word> fwd, bwd;
  fwd.reserve(psi.forward().size());
  bwd.reserve(phi.backward().size());
  for (const auto& w : psi.forward()) fwd.push_back(apply_endo(phi.forward(), w));
  for (const auto& w : phi.backward()) bwd.push_back(apply_endo(psi.backward(), w));
  return FreeAutomorphism(phi.alphabet(), std::move(fwd), std::move(bwd));
}

std::optional<Word> is_inner(const FreeAutomorphism& phi) {
  const Alphabet alphabet = phi.alphabet();
  if (alphabet.rank == 1) {
    if (phi.is_identity()) return Word(alphabet);
    return std::nullopt;
  }
  // phi(x_i) = v_i x_i v_i^{-1} forces the conjugator into the coset v_i <x_i>.
  std::vector<Word> coset_reps;
  for (int i = 1; i <= 2; ++i) {
    auto cr = cyclic_reduce(phi.image(i));
    if (cr.core.size() != 1 || cr.core.letters().front() != i) return std::nullopt;
    coset_reps.push_back(cr.conjugator);
  }
  const Word x1 = Word::letter(alphabet, 1);
  const long bound = static_cast<long>(phi.image(1).size() + phi.image(2).size());
  const Word v2_inv = coset_reps[1].inverse();
  for (long step = 0; step <= 2 * bound; ++step) {
    const long k = (step % 2 == 0) ? step / 2 : -(step + 1) / 2;
    const Word candidate = coset_reps[0] * x1.pow(k);
    if (!is_power_of(v2_inv * candidate, 2)) continue;
    const Word ci = candidate.inverse();
    bool ok = true;
    for (int i = 1; i <= alphabet.rank && ok; ++i) {
      ok = candidate * Word::letter(alphabet, i) * ci == phi.image(i);
    }
    return ok ? std::optional<Word>(candidate) : std::nullopt;
  }
  return std::nullopt;
}

std::optional<Word> common_conjugator(std::span<const std::pair<Word, Word>> pairs) {
  std::vector<std::pair<Word, Word>> live;
  for (const auto& [u, v] : pairs) {
    if (u.empty() != v.empty()) return std::nullopt;
    if (u.empty()) continue;
    if (CyclicWord::of(u) != CyclicWord::of(v)) return std::nullopt;
    live.emplace_back(u, v);
  }
  if (pairs.empty()) return std::nullopt;
  const Alphabet alphabet = pairs.front().first.alphabet();
  if (live.empty()) return Word(alphabet);

  auto check_all = [&](const Word& w) {
    const Word wi = w.inverse();
    return std::all_of(live.begin(), live.end(), [&](const auto& p) { return w * p.first * wi == p.second; });
  };

  // Solutions of w u0 w^{-1} = v0 form the coset b <r> a^{-1}.
  const auto cu = cyclic_reduce(live[0].first);
  const auto cv = cyclic_reduce(live[0].second);
  const Word& a = cu.conjugator;
  const Word& b = cv.conjugator;
  const Word root = primitive_root(cu.core);
  const Word root_inv = root.inverse();

  for (std::size_t j = 1; j < live.size(); ++j) {
    const Word big_u = a.inverse() * live[j].first * a;
    if (root * big_u == big_u * root) continue;
    const Word big_v = b.inverse() * live[j].second * b;
    // |r^k U r^{-k}| grows once |k| exceeds the cancellation available from U.
    const long bound = static_cast<long>(big_u.size() + big_v.size()) + 2;
    Word pos = big_u, neg = big_u;
    for (long k = 0; k <= bound; ++k) {
      if (pos == big_v) {
        const Word w = b * root.pow(k) * a.inverse();
        return check_all(w) ? std::optional<Word>(w) : std::nullopt;
      }
      if (k > 0 && neg == big_v) {
        const Word w = b * root.pow(-k) * a.inverse();
        return check_all(w) ? std::optional<Word>(w) : std::nullopt;
      }
      pos = root * pos * root_inv;
      neg = root_inv * neg * root;
    }
    return std::nullopt;
  }
  // Every u_i commutes with u_0: any element of the coset works if one does.
  const Word w = b * a.inverse();
  return check_all(w) ? std::optional<Word>(w) : std::nullopt;
}

bool outer_eq(const FreeAutomorphism& phi, const FreeAutomorphism& psi) {
  if (phi.alphabet() != psi.alphabet()) throw AlphabetMismatch("comparing automorphisms of different ranks");
  return is_inner(compose(phi, psi.inverse())).has_value();
}

GeneratorFamily parse_family(std::string_view name) {
  if (name == "nielsen") return GeneratorFamily::Nielsen;
  if (name == "ia3") return GeneratorFamily::IA3;
  throw std::invalid_argument("unknown generator family: " + std::string(name));
}

std::vector<FreeAutomorphism> standard_generators(int rank, GeneratorFamily family) {
  if (rank < 2) throw std::invalid_argument("standard generators need rank >= 2");
  const Alphabet alphabet(rank);
  const auto id = basis(alphabet);
  auto x = [&](int i) { return id[static_cast<std::size_t>(i - 1)]; };
  std::vector<FreeAutomorphism> gens;
  auto add = [&](int i, const Word& fwd_img, const Word& bwd_img) {
    auto fwd = id, bwd = id;
    fwd[static_cast<std::size_t>(i - 1)] = fwd_img;
    bwd[static_cast<std::size_t>(i - 1)] = bwd_img;
    gens.push_back(FreeAutomorphism::certify(std::move(fwd), std::move(bwd)));
  };

  if (family == GeneratorFamily::Nielsen) {
    for (int i = 1; i <= rank; ++i) {
      for (int j = 1; j <= rank; ++j) {
        if (i != j) add(i, x(i) * x(j), x(i) * x(j).inverse());
      }
    }
    for (int i = 1; i <= rank; ++i) add(i, x(i).inverse(), x(i).inverse());
    for (int i = 1; i <= rank; ++i) {
      for (int j = i + 1; j <= rank; ++j) {
        auto swap = id;
        std::swap(swap[static_cast<std::size_t>(i - 1)], swap[static_cast<std::size_t>(j - 1)]);
        gens.push_back(FreeAutomorphism::certify(swap, swap));
      }
    }
    return gens;
  }

  for (int i = 1; i <= rank; ++i) {
    for (int j = 1; j <= rank; ++j) {
      if (i == j) continue;
      add(i, x(j) * x(i) * x(j).inverse(), x(j).inverse() * x(i) * x(j));
    }
  }
  for (int i = 1; i <= rank; ++i) {
    for (int j = 1; j <= rank; ++j) {
      for (int k = 1; k <= rank; ++k) {
        if (j == k || j == i || k == i) continue;
        const Word comm = x(j) * x(k) * x(j).inverse() * x(k).inverse();
        add(i, x(i) * comm, x(i) * comm.inverse());
      }
    }
  }
  for (int i = 1; i <= rank; ++i) {
    for (int j = 1; j <= rank; ++j) {
      if (i != j) add(i, x(i) * x(j).pow(3), x(i) * x(j).pow(-3));
    }
  }
  return gens;
}

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t index) {
  // splitmix64 finalizer over the combined key
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

FreeAutomorphism sample(std::span<const FreeAutomorphism> generators, int budget, std::uint64_t seed) {
  if (generators.empty()) throw std::invalid_argument("cannot sample from an empty generator list");
  if (budget < 1) throw std::invalid_argument("sample budget must be at least 1");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, 2 * generators.size() - 1);
  FreeAutomorphism result = FreeAutomorphism::identity(generators.front().alphabet());
  for (int i = 0; i < budget; ++i) {
    const std::size_t c = pick(rng);
    const auto& g = generators[c / 2];
    result = compose(result, (c % 2 == 0) ? g : g.inverse());
  }
  return result;
}

namespace {

std::vector<std::pair<char, std::string>> parse_block(const std::vector<std::string>& lines) {
  std::vector<std::pair<char, std::string>> out;
  for (const auto& line : lines) {
    const auto arrow = line.find("->");
    if (arrow == std::string::npos) throw ParseError("expected 'x -> word' in line: " + line);
    std::string lhs = line.substr(0, arrow), rhs = line.substr(arrow + 2);
    std::erase_if(lhs, [](unsigned char c) { return std::isspace(c); });
    std::erase_if(rhs, [](unsigned char c) { return std::isspace(c); });
    if (lhs.size() != 1 || lhs[0] < 'a' || lhs[0] > 'z') throw ParseError("bad source letter in line: " + line);
    out.emplace_back(lhs[0], rhs.empty() ? "1" : rhs);
  }
  return out;
}

std::vector<Word> images_from(Alphabet alphabet, const std::vector<std::pair<char, std::string>>& block) {
  std::vector<Word> images(static_cast<std::size_t>(alphabet.rank), Word(alphabet));
  std::vector<bool> seen(static_cast<std::size_t>(alphabet.rank), false);
  for (const auto& [c, text] : block) {
    const auto idx = static_cast<std::size_t>(c - 'a');
    if (idx >= images.size() || seen[idx]) throw ParseError(std::string("unexpected or repeated letter ") + c);
    seen[idx] = true;
    images[idx] = parse_word(alphabet, text);
  }
  return images;
}

}  // namespace

FreeAutomorphism parse_automorphism(std::string_view text) {
  std::vector<std::vector<std::string>> blocks(1);
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const bool blank = std::all_of(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); });
    if (blank) {
      if (!blocks.back().empty()) blocks.emplace_back();
      continue;
    }
    blocks.back().push_back(line);
  }
  if (blocks.back().empty()) blocks.pop_back();
  if (blocks.size() != 2) throw ParseError("automorphism file needs a forward block and an inverse block");
  const auto fwd = parse_block(blocks[0]);
  const auto bwd = parse_block(blocks[1]);
  if (fwd.size() != bwd.size()) throw ParseError("forward and inverse blocks differ in length");
  const Alphabet alphabet(static_cast<int>(fwd.size()));
  return FreeAutomorphism::certify(images_from(alphabet, fwd), images_from(alphabet, bwd));
}

std::string to_text(const FreeAutomorphism& phi) {
  std::ostringstream out;
  for (int i = 1; i <= phi.rank(); ++i) out << letter_char(i) << " -> " << to_string(phi.image(i)) << '\n';
  out << '\n';
  for (int i = 1; i <= phi.rank(); ++i) {
    out << letter_char(i) << " -> " << to_string(phi.backward()[static_cast<std::size_t>(i - 1)]) << '\n';
  }
  return out.str();
}

std::string summary(const FreeAutomorphism& phi) {
  std::string s;
  for (int i = 1; i <= phi.rank(); ++i) {
    if (i > 1) s += ' ';
    s += letter_char(i);
    s += "->";
    s += to_string(phi.image(i));
  }
  return s;
}

}  // namespace aplab
