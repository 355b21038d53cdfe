#include "aplab/errors.hpp"
#include "aplab/homology.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace aplab;

namespace {

IntegerMatrix mat(const std::vector<IntVector>& rows) { return IntegerMatrix::from_rows(rows); }

std::vector<std::vector<std::int64_t>> rows_of(const IntegerMatrix& m) {
  std::vector<std::vector<std::int64_t>> out(static_cast<std::size_t>(m.dim()));
  for (int i = 0; i < m.dim(); ++i) {
    for (int j = 0; j < m.dim(); ++j) out[static_cast<std::size_t>(i)].push_back(m(i, j));
  }
  return out;
}

// Per(M) restricted to the box agrees with the orbit oracle.
void check_per_against_orbits(const IntegerMatrix& m, int radius) {
  const auto per = per_subgroup(m);
  const auto rows = rows_of(m);
  const int max_k = static_cast<int>(torsion_exponent(m.dim()));
  std::vector<IntVector> periodic;
  for (const auto& v : oracle::box(m.dim(), radius)) {
    const bool orbit = oracle::periodic_vector(rows, v, max_k);
    CHECK(per.contains(v) == orbit);
    if (orbit) periodic.push_back(v);
  }
  CHECK(Sublattice::saturated_span(m.dim(), periodic) == per);
}

FreeAutomorphism nielsen(const char* a, const char* b, const char* ai, const char* bi) {
  const Alphabet f2(2);
  return FreeAutomorphism::certify({parse_word(f2, a), parse_word(f2, b)}, {parse_word(f2, ai), parse_word(f2, bi)});
}

}  // namespace

TEST_CASE("abelianization uses image columns") {
  CHECK(abelianization(FreeAutomorphism::identity(Alphabet(3))).is_identity());
  CHECK(abelianization(nielsen("ab", "b", "aB", "b")) == mat({{1, 0}, {1, 1}}));
  CHECK(abelianization(nielsen("baB", "b", "Bab", "b")).is_identity());
  CHECK(exponent_vector(parse_word(Alphabet(3), "abAcc")) == IntVector{0, 1, 2});
}

TEST_CASE("in_ia3 examples") {
  CHECK(in_ia3(nielsen("abbb", "b", "aBBB", "b")));
  CHECK_FALSE(in_ia3(nielsen("ab", "b", "aB", "b")));
  CHECK_FALSE(in_ia3(nielsen("b", "a", "b", "a")));
  CHECK(in_ia3(FreeAutomorphism::inner(parse_word(Alphabet(2), "abA"))));
}

TEST_CASE("abelianization is functorial") {
  const auto gens = standard_generators(3, GeneratorFamily::Nielsen);
  for (std::uint64_t s = 0; s < 60; ++s) {
    const auto f = sample(gens, 4, trial_seed(1, s));
    const auto g = sample(gens, 4, trial_seed(2, s));
    CHECK(abelianization(compose(f, g)) == abelianization(f) * abelianization(g));
    CHECK((abelianization(f) * abelianization(f.inverse())).is_identity());
    CHECK(abelianization(f).is_unimodular());
    CHECK(in_ia3(compose(f, g)) == (Mod3Matrix::reduce(abelianization(f)) * Mod3Matrix::reduce(abelianization(g))).is_identity());
  }
}

TEST_CASE("torsion exponent") {
  CHECK(euler_totient(1) == 1);
  CHECK(euler_totient(8) == 4);
  CHECK(euler_totient(12) == 4);
  CHECK(torsion_exponent(1) == 2);
  CHECK(torsion_exponent(2) == 12);
  CHECK(torsion_exponent(3) == 12);
  // 8 has totient 4, so 8 divides the exponent.
  CHECK(torsion_exponent(4) == 120);
  // A companion matrix of x^4 + 1 has order 8 in GL_4(Z).
  const auto c8 = mat({{0, 0, 0, -1}, {1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}});
  CHECK(finite_order(c8) == 8);
}

TEST_CASE("fix and per examples") {
  CHECK(fix_subgroup(IntegerMatrix::identity(2)) == Sublattice::full(2));
  CHECK(fix_subgroup(mat({{1, 3}, {0, 1}})) == Sublattice::saturated_span(2, {{1, 0}}));
  CHECK(fix_subgroup(mat({{0, -1}, {1, 0}})).rank() == 0);
  CHECK(per_subgroup(mat({{0, -1}, {1, 0}})) == Sublattice::full(2));
  CHECK(per_subgroup(mat({{1, 3}, {0, 1}})) == Sublattice::saturated_span(2, {{1, 0}}));
  const auto block = mat({{0, -1, 0, 0}, {1, 0, 0, 0}, {0, 0, 2, 1}, {0, 0, 1, 1}});
  CHECK(per_subgroup(block) == Sublattice::saturated_span(4, {{1, 0, 0, 0}, {0, 1, 0, 0}}));
  CHECK_THROWS_AS(fix_subgroup(mat({{2, 0}, {0, 1}})), NotInvertible);
  CHECK_THROWS_AS(per_subgroup(mat({{1, 1}, {1, 1}})), NotInvertible);
}

TEST_CASE("per_subgroup agrees with the orbit oracle") {
  check_per_against_orbits(mat({{0, -1}, {1, 0}}), 5);
  check_per_against_orbits(mat({{1, 3}, {0, 1}}), 5);
  check_per_against_orbits(mat({{-1, 0}, {0, 1}}), 5);
  check_per_against_orbits(mat({{2, 1}, {1, 1}}), 5);
  check_per_against_orbits(mat({{0, 1, 0}, {0, 0, 1}, {1, 0, 0}}), 4);
  check_per_against_orbits(mat({{0, -1, 0, 0}, {1, 0, 0, 0}, {0, 0, 2, 1}, {0, 0, 1, 1}}), 3);
}

TEST_CASE("sublattice invariants") {
  const std::vector<IntegerMatrix> ms{mat({{1, 3}, {0, 1}}), mat({{0, -1}, {1, 0}}), mat({{-1, 0}, {0, 1}}),
                                      mat({{1, 0, 0}, {0, 0, 1}, {0, 1, 0}}), mat({{4, 3, 0}, {-3, -2, 0}, {0, 0, 1}})};
  for (const auto& m : ms) {
    const auto fix = fix_subgroup(m);
    const auto per = per_subgroup(m);
    for (const auto& b : fix.basis()) {
      CHECK(per.contains(b));
      CHECK(m * b == b);
    }
    for (const auto& b : per.basis()) CHECK(per.contains(m * b));
    // saturation: 2v in L implies v in L
    for (const auto& v : oracle::box(m.dim(), 2)) {
      IntVector twice = v;
      for (auto& x : twice) x *= 2;
      CHECK(per.contains(twice) == per.contains(v));
      CHECK(fix.contains(twice) == fix.contains(v));
    }
  }
  CHECK(Sublattice::saturated_span(2, {{2, 4}}) == Sublattice::saturated_span(2, {{1, 2}}));
  CHECK(Sublattice::saturated_span(2, {{1, 0}, {1, 3}}) == Sublattice::full(2));
}

TEST_CASE("finite_order examples") {
  CHECK(finite_order(IntegerMatrix::identity(3)) == 1);
  CHECK(finite_order(mat({{0, -1}, {1, 0}})) == 4);
  CHECK(finite_order(mat({{0, -1}, {1, -1}})) == 3);
  CHECK_FALSE(finite_order(mat({{1, 1}, {0, 1}})).has_value());
  CHECK_FALSE(finite_order(mat({{2, 1}, {1, 1}})).has_value());
  CHECK_THROWS_AS(finite_order(mat({{2, 0}, {0, 2}})), NotInvertible);
}

TEST_CASE("rational rank and mod 3 span") {
  CHECK(rational_rank({{1, 2}, {2, 4}}) == 1);
  CHECK(rational_rank({{1, 0, 0}, {0, 1, 0}, {1, 1, 0}}) == 2);
  CHECK(rational_rank({}) == 0);
  CHECK(mod3_span({{3, 0}}).empty());
  CHECK(mod3_span({{1, 1}, {2, 2}}).size() == 1);
}

TEST_CASE("minkowski scan") {
  const auto r = minkowski_scan(2, 6, 3, Exec::Serial);
  CHECK(r.violations == 0);
  CHECK(r.invertible > 0);
  const auto r1 = minkowski_scan(1, 8, 3, Exec::Serial);
  CHECK(r1.invertible == 1);
  CHECK(r1.violations == 0);
  const auto control = minkowski_scan(2, 6, 1, Exec::Serial);
  CHECK(control.violations > 0);
  REQUIRE(control.examples.size() > 0);
  for (const auto& m : control.examples) {
    CHECK_FALSE(m.is_identity());
    CHECK(finite_order(m).has_value());
  }
  CHECK(finite_order(mat({{-1, 0}, {0, -1}})) == 2);
  CHECK_THROWS(minkowski_scan(4, 2));
}

TEST_CASE("abelian standing assumptions") {
  const auto r = abelian_standing_assumptions_check(2, 5, Exec::Serial);
  CHECK(r.violations == 0);
  CHECK(r.invertible > 0);
  CHECK(per_subgroup(IntegerMatrix::identity(3)) == fix_subgroup(IntegerMatrix::identity(3)));
  const auto rot = mat({{0, -1}, {1, 0}});
  CHECK(per_subgroup(rot) != fix_subgroup(rot));
}

TEST_CASE("serial and parallel scans agree") {
  for (int bound : {2, 4, 6}) {
    auto s = minkowski_scan(2, bound, 1, Exec::Serial);
    auto p = minkowski_scan(2, bound, 1, Exec::Parallel);
    CHECK(s.enumerated == p.enumerated);
    CHECK(s.invertible == p.invertible);
    CHECK(s.violations == p.violations);
    CHECK(s.examples == p.examples);
  }
  auto s = abelian_standing_assumptions_check(3, 2, Exec::Serial);
  auto p = abelian_standing_assumptions_check(3, 2, Exec::Parallel);
  CHECK(s.invertible == p.invertible);
  CHECK(s.violations == p.violations);
}

TEST_CASE("matrix text") {
  const auto m = parse_matrix("1 3\n0 1\n");
  CHECK(m == mat({{1, 3}, {0, 1}}));
  CHECK(parse_matrix(to_string(m)) == m);
  CHECK_THROWS_AS(parse_matrix("1 x\n0 1\n"), ParseError);
}
