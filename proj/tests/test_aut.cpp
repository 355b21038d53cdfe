#include <random>

#include "aplab/aut.hpp"
#include "aplab/errors.hpp"
#include "aplab/homology.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace aplab;

namespace {

const Alphabet kF2(2);

Word w2(const char* s) { return parse_word(kF2, s); }

FreeAutomorphism aut2(const char* a, const char* b, const char* ai, const char* bi) {
  return FreeAutomorphism::certify({w2(a), w2(b)}, {w2(ai), w2(bi)});
}

const FreeAutomorphism& transvection() {
  static const FreeAutomorphism t = aut2("ab", "b", "aB", "b");
  return t;
}

std::vector<FreeAutomorphism> sampled(int rank, GeneratorFamily family, int count, int budget, std::uint64_t seed) {
  const auto gens = standard_generators(rank, family);
  std::vector<FreeAutomorphism> out;
  for (int i = 0; i < count; ++i) out.push_back(sample(gens, 1 + i % budget, trial_seed(seed, static_cast<unsigned>(i))));
  return out;
}

}  // namespace

TEST_CASE("certify accepts exact inverses and rejects others") {
  CHECK_NOTHROW(aut2("ab", "b", "aB", "b"));
  CHECK_NOTHROW(aut2("a", "b", "a", "b"));
  try {
    aut2("ab", "b", "a", "b");
    FAIL("expected CompositeNotIdentity");
  } catch (const CompositeNotIdentity& e) {
    CHECK(e.letter() == 1);
  }
  CHECK_THROWS_AS(FreeAutomorphism::certify({w2("a")}, {w2("a"), w2("b")}), AlphabetMismatch);
}

TEST_CASE("compose examples") {
  const auto& t = transvection();
  const auto tt = compose(t, t);
  CHECK(to_string(tt.image(1)) == "abb");
  CHECK(compose(t, t.inverse()).is_identity());
  CHECK(compose(FreeAutomorphism::identity(kF2), t) == t);
  CHECK_THROWS_AS(compose(t, FreeAutomorphism::identity(Alphabet(3))), AlphabetMismatch);
}

TEST_CASE("is_inner examples") {
  const auto conj_b = aut2("baB", "b", "Bab", "b");
  auto w = is_inner(conj_b);
  REQUIRE(w.has_value());
  CHECK(to_string(*w) == "b");

  w = is_inner(FreeAutomorphism::identity(kF2));
  REQUIRE(w.has_value());
  CHECK(w->empty());

  CHECK_FALSE(is_inner(transvection()).has_value());
  CHECK_FALSE(abelianization(transvection()).is_identity());

  const Alphabet z(1);
  const auto neg = FreeAutomorphism::certify({parse_word(z, "A")}, {parse_word(z, "A")});
  CHECK_FALSE(is_inner(neg).has_value());
  CHECK(is_inner(FreeAutomorphism::identity(z)).has_value());
}

TEST_CASE("is_inner agrees with brute-force conjugator search on rank 2") {
  // Corpus: every automorphism within three Nielsen steps plus every inner
  // automorphism by a word of length <= 3, filtered to images of length <= 6.
  const auto gens = standard_generators(2, GeneratorFamily::Nielsen);
  std::vector<FreeAutomorphism> corpus{FreeAutomorphism::identity(kF2)};
  std::vector<FreeAutomorphism> frontier = corpus;
  for (int depth = 0; depth < 3; ++depth) {
    std::vector<FreeAutomorphism> next;
    for (const auto& f : frontier) {
      for (const auto& g : gens) next.push_back(compose(g, f));
    }
    corpus.insert(corpus.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  const std::size_t outer_count = corpus.size();
  for (std::size_t i = 0; i < outer_count; i += 7) {
    for (const auto& raw : oracle::all_words(2, 3)) {
      corpus.push_back(compose(FreeAutomorphism::inner(Word::reduce(kF2, raw)), corpus[i]));
    }
  }

  std::size_t checked = 0, inner_count = 0, disagreements = 0;
  for (const auto& phi : corpus) {
    if (phi.image(1).size() > 6 || phi.image(2).size() > 6) continue;
    ++checked;
    const std::vector<std::pair<oracle::Raw, oracle::Raw>> pairs{{{1}, phi.image(1).letters()},
                                                               {{2}, phi.image(2).letters()}};
    const bool brute = oracle::has_common_conjugator(2, pairs, 6);
    const auto found = is_inner(phi);
    if (brute != found.has_value()) ++disagreements;
    if (found) {
      ++inner_count;
      const Word wi = found->inverse();
      CHECK(*found * w2("a") * wi == phi.image(1));
      CHECK(*found * w2("b") * wi == phi.image(2));
    }
  }
  CHECK(checked > 200);
  CHECK(inner_count > 20);
  CHECK(disagreements == 0);
}

TEST_CASE("common_conjugator agrees with brute force") {
  std::mt19937_64 rng(11);
  const auto words = oracle::all_words(2, 3);
  const auto conjugators = oracle::all_words(2, 3);
  std::size_t agree = 0, total = 0, positive = 0;
  for (int trial = 0; trial < 600; ++trial) {
    std::uniform_int_distribution<std::size_t> pw(1, words.size() - 1), pc(0, conjugators.size() - 1);
    const auto& u0 = words[pw(rng)];
    const auto& u1 = words[pw(rng)];
    const auto& c = conjugators[pc(rng)];
    oracle::Raw v0 = oracle::conj(c, u0), v1 = oracle::conj(c, u1);
    // Half the trials break the second pair.
    if (trial % 2 == 1) v1 = oracle::conj(conjugators[pc(rng)], u1);
    const std::vector<std::pair<oracle::Raw, oracle::Raw>> raw{{u0, v0}, {u1, v1}};
    const bool brute = oracle::has_common_conjugator(2, raw, 6);
    const std::vector<std::pair<Word, Word>> pairs{{Word::reduce(kF2, u0), Word::reduce(kF2, v0)},
                                                   {Word::reduce(kF2, u1), Word::reduce(kF2, v1)}};
    const auto found = common_conjugator(pairs);
    ++total;
    if (brute == found.has_value()) ++agree;
    if (found) {
      ++positive;
      for (const auto& [u, v] : pairs) CHECK(*found * u * found->inverse() == v);
    }
  }
  CHECK(agree == total);
  CHECK(positive > 100);
}

TEST_CASE("group laws on sampled automorphisms") {
  const auto pool = sampled(3, GeneratorFamily::Nielsen, 30, 5, 3);
  for (std::size_t i = 0; i + 2 < pool.size(); ++i) {
    const auto& f = pool[i];
    const auto& g = pool[i + 1];
    const auto& h = pool[i + 2];
    CHECK(compose(compose(f, g), h) == compose(f, compose(g, h)));
    CHECK(compose(f, f.inverse()).is_identity());
    CHECK(compose(f.inverse(), f).is_identity());
    CHECK(f.pow(3) == compose(f, compose(f, f)));
    CHECK(compose(f.pow(-2), f.pow(2)).is_identity());
  }
}

TEST_CASE("outer_eq is an equivalence invariant under inner twists") {
  auto pool = sampled(2, GeneratorFamily::Nielsen, 12, 4, 5);
  const std::size_t base = pool.size();
  for (std::size_t i = 0; i < base; i += 3) {
    pool.push_back(compose(FreeAutomorphism::inner(w2("abA")), pool[i]));
    pool.push_back(compose(FreeAutomorphism::inner(w2("bb")), pool[i]));
  }
  for (const auto& f : pool) {
    CHECK(outer_eq(f, f));
    CHECK(outer_eq(f, compose(FreeAutomorphism::inner(w2("aBa")), f)));
    for (const auto& g : pool) {
      CHECK(outer_eq(f, g) == outer_eq(g, f));
      for (const auto& h : pool) {
        if (outer_eq(f, g) && outer_eq(g, h)) CHECK(outer_eq(f, h));
      }
    }
  }
  CHECK_FALSE(outer_eq(FreeAutomorphism::identity(kF2), transvection()));
  CHECK(OuterClass(transvection()) == OuterClass(compose(FreeAutomorphism::inner(w2("b")), transvection())));
}

TEST_CASE("standard generator families") {
  auto contains = [](const std::vector<FreeAutomorphism>& gens, const FreeAutomorphism& f) {
    return std::find(gens.begin(), gens.end(), f) != gens.end();
  };
  const auto ia2 = standard_generators(2, GeneratorFamily::IA3);
  CHECK(contains(ia2, aut2("baB", "b", "Bab", "b")));
  CHECK(contains(ia2, aut2("abbb", "b", "aBBB", "b")));
  const Alphabet f3(3);
  auto w3 = [&](const char* s) { return parse_word(f3, s); };
  const auto ia3 = standard_generators(3, GeneratorFamily::IA3);
  CHECK(contains(ia3, FreeAutomorphism::certify({w3("abcBC"), w3("b"), w3("c")}, {w3("acbCB"), w3("b"), w3("c")})));
  for (const auto& g : ia3) CHECK(in_ia3(g));
  CHECK_THROWS(standard_generators(1, GeneratorFamily::IA3));
  CHECK(parse_family("ia3") == GeneratorFamily::IA3);
  CHECK_THROWS(parse_family("whitehead"));
}

TEST_CASE("sample is deterministic and stays in IA") {
  const auto gens = standard_generators(3, GeneratorFamily::IA3);
  CHECK(sample(gens, 6, 42) == sample(gens, 6, 42));
  const std::vector<FreeAutomorphism> one{transvection()};
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto f = sample(one, 1, s);
    CHECK((f == transvection() || f == transvection().inverse()));
  }
  for (const auto& f : sampled(3, GeneratorFamily::IA3, 200, 8, 9)) CHECK(in_ia3(f));
  CHECK_THROWS(sample(std::vector<FreeAutomorphism>{}, 1, 0));
}

TEST_CASE("automorphism text round trip") {
  const auto f = parse_automorphism("# nielsen\na -> ab\nb -> b\n\na -> aB\nb -> b\n");
  CHECK(f == transvection());
  CHECK(parse_automorphism(to_text(f)) == f);
  CHECK(summary(f) == "a->ab b->b");
  CHECK_THROWS_AS(parse_automorphism("a -> ab\nb -> b\n\na -> a\nb -> b\n"), CompositeNotIdentity);
  CHECK_THROWS_AS(parse_automorphism("a -> ab\n"), ParseError);
}

TEST_CASE("cancellation_bound dominates cancellation in images of reduced products") {
  std::mt19937_64 rng(21);
  for (int rank : {2, 3}) {
    const Alphabet al(rank);
    auto autos = sampled(rank, GeneratorFamily::Nielsen, 60, 6, 5);
    for (const auto& phi : sampled(rank, GeneratorFamily::IA3, 60, 4, 6)) autos.push_back(phi);
    const auto words = oracle::all_words(rank, 5);
    std::uniform_int_distribution<std::size_t> pick(1, words.size() - 1);
    std::size_t worst = 0;
    for (const auto& phi : autos) {
      const std::size_t bound = cancellation_bound(phi);
      for (int trial = 0; trial < 200; ++trial) {
        const auto& u = words[pick(rng)];
        const auto& v = words[pick(rng)];
        if (u.back() == -v.front()) continue;
        const Word pu = phi(Word::reduce(al, u)), pv = phi(Word::reduce(al, v));
        const std::size_t cancelled = (pu.size() + pv.size() - (pu * pv).size()) / 2;
        CHECK(cancelled <= bound);
        worst = std::max(worst, cancelled);
      }
    }
    CHECK(worst > 0);
  }
}

TEST_CASE("bounded substitution is exact below the cap") {
  std::mt19937_64 rng(3);
  const auto words = oracle::all_words(2, 6);
  std::uniform_int_distribution<std::size_t> pick(0, words.size() - 1);
  for (const auto& phi : sampled(2, GeneratorFamily::IA3, 50, 8, 12)) {
    for (int trial = 0; trial < 50; ++trial) {
      const Word w = Word::reduce(kF2, words[pick(rng)]);
      const Word full = phi(w);
      for (std::size_t cap : {std::size_t{0}, std::size_t{5}, full.size(), full.size() + 1, std::size_t{200}}) {
        for (std::size_t slack : {cancellation_bound(phi), SIZE_MAX}) {
          const auto b = apply_endo_bounded(phi.forward(), w, cap, slack);
          CHECK(b.has_value() == (full.size() <= cap));
          if (b) CHECK(*b == full);
        }
      }
    }
  }
}
