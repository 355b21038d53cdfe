// Acceptance run: one PASS/FAIL line per criterion. Budgets and tolerances
// are pinned here; exit status is the number of failing criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "aplab/graphs.hpp"
#include "aplab/harness.hpp"
#include "aplab/homology.hpp"
#include "aplab/rtt.hpp"
#include "oracles.hpp"

using namespace aplab;

namespace {

constexpr double kMinkowskiSeconds = 60.0;
constexpr double kLemmaSeconds = 60.0;
constexpr double kConjugacySeconds = 120.0;
constexpr double kGoldenRatio = 1.6180339887;
constexpr double kLambdaTol = 1e-8;
constexpr int kConjugacySamples = 1000;  // per rank
constexpr std::size_t kRank3ClassPool = 128;
constexpr int kFactorSamples = 500;
constexpr int kSplittingSamples = 200;
constexpr int kTorsionSamples = 300;  // per rank
constexpr int kBccTrials = 1000;
constexpr std::uint64_t kSeed = 2024;

int failures = 0;

void report(int id, bool pass, const std::string& detail) {
  std::printf("%s criterion %d: %s\n", pass ? "PASS" : "FAIL", id, detail.c_str());
  std::fflush(stdout);
  failures += !pass;
}

double since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string data(const std::string& rel) { return std::string(APLAB_DATA_DIR) + "/" + rel; }

void criterion_1() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto scan = minkowski_scan(2, 6, 3);
  const double secs = since(t0);
  // level 1 admits -I, which the scan must count; examples hold only the first few
  const auto control = minkowski_scan(2, 6, 1);
  const auto minus_i = IntegerMatrix::from_rows({{-1, 0}, {0, -1}});
  const bool minus_identity = finite_order(minus_i) == std::optional<std::int64_t>{2} &&
                              minkowski_scan(2, 1, 1).violations >= 1;
  const bool found_control = control.violations >= 1 && minus_identity;
  report(1, scan.violations == 0 && secs < kMinkowskiSeconds && found_control,
         fmt("GL2 level 3 entries<=6: %llu unimodular, %llu finite-order; level-1 control %llu violations; %.2fs",
             static_cast<unsigned long long>(scan.invertible), static_cast<unsigned long long>(scan.violations),
             static_cast<unsigned long long>(control.violations), secs));
}

void criterion_2() {
  const auto scan = abelian_standing_assumptions_check(2, 6);
  // lattice-orbit oracle: v periodic (M^k v = v, k <= 12) iff v in Per iff v in Fix
  std::uint64_t matrices = 0, vectors = 0, disagreements = 0;
  for (int a = -6; a <= 6; ++a) {
    for (int b = -6; b <= 6; ++b) {
      for (int c = -6; c <= 6; ++c) {
        for (int d = -6; d <= 6; ++d) {
          if ((a - 1) % 3 || b % 3 || c % 3 || (d - 1) % 3) continue;
          if (std::abs(a * d - b * c) != 1) continue;
          ++matrices;
          const auto m = IntegerMatrix::from_rows({{a, b}, {c, d}});
          const auto per = per_subgroup(m), fix = fix_subgroup(m);
          for (std::int64_t x = -5; x <= 5; ++x) {
            for (std::int64_t y = -5; y <= 5; ++y) {
              std::int64_t u = x, v = y;
              bool periodic = false;
              for (int k = 1; k <= 12 && !periodic; ++k) {
                const std::int64_t nu = a * u + b * v, nv = c * u + d * v;
                u = nu;
                v = nv;
                periodic = u == x && v == y;
              }
              ++vectors;
              disagreements += (per.contains({x, y}) != periodic) + (fix.contains({x, y}) != periodic);
            }
          }
        }
      }
    }
  }
  report(2, scan.violations == 0 && disagreements == 0 && matrices == scan.invertible,
         fmt("%llu level-3 matrices: Per=Fix violations %llu; oracle disagreements %llu over %llu vectors",
             static_cast<unsigned long long>(matrices), static_cast<unsigned long long>(scan.violations),
             static_cast<unsigned long long>(disagreements), static_cast<unsigned long long>(vectors)));
}

void criterion_3() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto r = graph_lemma_check(6);
  const double secs = since(t0);
  report(3, r.violations == 0 && r.graphs > 0 && secs < kLemmaSeconds,
         fmt("%llu graphs with <=6 edges, %llu automorphisms, %llu violations; %.2fs",
             static_cast<unsigned long long>(r.graphs), static_cast<unsigned long long>(r.automorphisms),
             static_cast<unsigned long long>(r.violations), secs));
}

void criteria_4_5() {
  const auto t0 = std::chrono::steady_clock::now();
  std::uint64_t outer_bad = 0, aut_bad = 0, outer_n = 0, aut_n = 0, outer_p1 = 0, aut_p1 = 0;
  bool outer_control = true, aut_control = true;
  for (int rank : {2, 3}) {
    ExperimentConfig cfg;
    cfg.rank = rank;
    cfg.samples = kConjugacySamples;
    cfg.seed = kSeed;
    cfg.class_pool_size = rank == 2 ? 0 : kRank3ClassPool;
    const auto r = run_conjugacy_experiment(cfg);
    const auto& outer = r.outcomes.at("outer");
    const auto& aut = r.outcomes.at("aut");
    outer_bad += outer.period_many;
    aut_bad += aut.period_many;
    outer_n += outer.total();
    aut_n += aut.total();
    outer_p1 += outer.period_one;
    aut_p1 += aut.period_one;
    outer_control = outer_control && r.controls.at(0).met;
    aut_control = aut_control && r.controls.at(1).met;
  }
  const double secs = since(t0);
  report(4, outer_bad == 0 && outer_control && secs < kConjugacySeconds && outer_p1 > 0,
         fmt("%d samples x ranks 2,3: %llu class orbits, %llu Period(1), %llu Period(>1); swap control %s; %.1fs",
             kConjugacySamples, static_cast<unsigned long long>(outer_n), static_cast<unsigned long long>(outer_p1),
             static_cast<unsigned long long>(outer_bad), outer_control ? "Period(2)" : "missed", secs));
  report(5, aut_bad == 0 && aut_control && aut_p1 > 0,
         fmt("%llu word orbits, %llu Period(1), %llu Period(>1); swap control %s",
             static_cast<unsigned long long>(aut_n), static_cast<unsigned long long>(aut_p1),
             static_cast<unsigned long long>(aut_bad), aut_control ? "Period(2)" : "missed"));
}

void criterion_6() {
  ExperimentConfig cfg;
  cfg.rank = 3;
  cfg.samples = kFactorSamples;
  cfg.seed = kSeed;
  const auto r = run_factor_experiment(cfg);
  const auto& h = r.outcomes.at("factors");
  const bool control = r.controls.at(0).outcomes.periods.count(3) == 1;
  report(6, r.violations.empty() && control && h.period_one > 0,
         fmt("rank 3, %d samples, %llu systems: %llu Period(1), %llu Period(>1), %llu open; 3-cycle control %s",
             kFactorSamples, static_cast<unsigned long long>(h.total()), static_cast<unsigned long long>(h.period_one),
             static_cast<unsigned long long>(h.period_many), static_cast<unsigned long long>(h.no_period + h.blowup),
             control ? "Period(3)" : "missed"));
}

void criterion_7() {
  ExperimentConfig cfg;
  cfg.rank = 2;
  cfg.samples = kSplittingSamples;
  cfg.seed = kSeed;
  cfg.splitting_pool = load_splitting_pool(data("splittings"));
  const auto r = run_splitting_experiment(cfg);
  const auto& h = r.outcomes.at("splittings");
  report(7, cfg.splitting_pool.size() >= 3 && r.violations.empty() && h.period_many == 0 && r.controls_met(),
         fmt("%zu marked graphs x %d samples: %llu Period(1), %llu Period(>1), %llu open; swap control %s",
             cfg.splitting_pool.size(), kSplittingSamples, static_cast<unsigned long long>(h.period_one),
             static_cast<unsigned long long>(h.period_many), static_cast<unsigned long long>(h.no_period + h.blowup),
             r.controls_met() ? "Period(2)" : "missed"));
}

void criterion_8() {
  std::uint64_t n = 0, bad = 0;
  bool control = true;
  for (int rank : {2, 3}) {
    ExperimentConfig cfg;
    cfg.rank = rank;
    cfg.samples = kTorsionSamples;
    cfg.seed = kSeed;
    const auto r = run_torsion_experiment(cfg);
    n += r.outcomes.at("order").total();
    bad += r.violations.size();
    control = control && r.controls_met();
  }
  report(8, bad == 0 && control && n >= 2 * kTorsionSamples,
         fmt("%llu non-inner samples over ranks 2,3: %llu with an inner power k<=12; swap control %s",
             static_cast<unsigned long long>(n), static_cast<unsigned long long>(bad), control ? "order 2" : "missed"));
}

void criterion_9() {
  const auto fib = parse_graph_map(slurp(data("maps/fibonacci.map")));
  const auto fs = filtration_of(fib);
  const bool fib_ok = fs.size() == 1 && fs[0].growth.kind == StratumKind::EG &&
                      std::abs(fs[0].growth.lambda - kGoldenRatio) <= kLambdaTol && fs[0].partition &&
                      fs[0].partition->period == 1;
  const bool rtt_ok = verify_rtt(fib, fs).pass();
  const auto dbl = parse_graph_map(slurp(data("maps/doubling.map")));
  const auto ds = filtration_of(dbl);
  bool dbl_ok = ds.size() == 1 && ds[0].partition && ds[0].partition->period == 2;
  if (dbl_ok) {
    auto classes = ds[0].partition->classes;
    std::sort(classes.begin(), classes.end());
    dbl_ok = classes == std::vector<std::vector<int>>{{0}, {1}};
  }
  if (dbl_ok) {
    // edges of class i map into class i+1 (no lower strata here)
    const auto& classes = ds[0].partition->classes;
    for (std::size_t i = 0; i < classes.size(); ++i) {
      const auto& next = classes[(i + 1) % classes.size()];
      for (int e : classes[i]) {
        for (EdgeRef r : dbl.map.edge[static_cast<std::size_t>(e)]) {
          dbl_ok = dbl_ok && std::find(next.begin(), next.end(), edge_index(r)) != next.end();
        }
      }
    }
  }
  report(9, fib_ok && rtt_ok && dbl_ok,
         fmt("a->ab,b->a: lambda %.12f, period %d, RTT %s; a->bb,b->aa: period %d, classes {a},{b} %s",
             fs.empty() ? 0.0 : fs[0].growth.lambda, fs.empty() || !fs[0].partition ? 0 : fs[0].partition->period,
             rtt_ok ? "pass" : "fail", ds.empty() || !ds[0].partition ? 0 : ds[0].partition->period,
             dbl_ok ? "map cyclically" : "do not map cyclically"));
}

void criterion_10() {
  std::vector<std::filesystem::path> maps;
  for (const auto& e : std::filesystem::directory_iterator(data("maps"))) maps.push_back(e.path());
  std::sort(maps.begin(), maps.end());
  int violations = 0, trials = 0;
  std::int64_t worst = 0;
  for (const auto& p : maps) {
    const auto f = parse_graph_map(slurp(p));
    const auto r = bcc_check(f, kBccTrials, 50, kSeed);
    violations += r.violations;
    trials += r.trials;
    worst = std::max(worst, r.worst_cancellation);
    // recount independently of bcc_check
    std::mt19937_64 rng(kSeed + 1);
    std::uniform_int_distribution<int> len(2, 50);
    const auto c = bcc_bound(f);
    for (int t = 0; t < kBccTrials; ++t) {
      const auto rho = random_tight_path(f.graph(), len(rng), rng);
      std::uniform_int_distribution<std::size_t> cut(1, rho.size() - 1);
      const std::size_t k = cut(rng);
      const EdgePath r1(rho.begin(), rho.begin() + static_cast<std::ptrdiff_t>(k));
      const EdgePath r2(rho.begin() + static_cast<std::ptrdiff_t>(k), rho.end());
      const auto whole = static_cast<std::int64_t>(f.image(rho).size());
      const auto parts = static_cast<std::int64_t>(f.image(r1).size() + f.image(r2).size());
      violations += whole < parts - 2 * c;
      ++trials;
    }
  }
  report(10, violations == 0 && maps.size() >= 3,
         fmt("%zu shipped maps, %d splittings: %d violations, worst cancellation %lld", maps.size(), trials, violations,
             static_cast<long long>(worst)));
}

void criterion_11() {
  using oracle::Raw;
  std::mt19937_64 rng(kSeed);
  const Alphabet f2(2);
  const auto words4 = oracle::all_words(2, 4);
  const auto words3 = oracle::all_words(2, 3);
  std::uniform_int_distribution<std::size_t> pick3(1, words3.size() - 1), pick4(1, words4.size() - 1);
  const auto to_word = [&](const Raw& r) { return Word::reduce(f2, r); };

  // membership: products of <= 4 generators are members; members reach within length 10
  std::uint64_t mem_n = 0, mem_bad = 0;
  for (int s = 0; s < 60; ++s) {
    std::vector<Raw> gens{words3[pick3(rng)]};
    if (s % 2) gens.push_back(words3[pick3(rng)]);
    std::vector<Word> wg;
    for (const auto& g : gens) wg.push_back(to_word(g));
    const auto core = StallingsCore::fold(f2, wg);
    const auto products = oracle::generator_products(gens, 4);
    const auto reach = oracle::short_products(gens, 10);
    for (const auto& w : words4) {
      const bool member = membership(to_word(w), core);
      const bool in_products = products.count(w) > 0;
      const bool reachable = reach.count(w) > 0;
      ++mem_n;
      mem_bad += (in_products && !member) || (member != reachable);
    }
  }
  // conjugacy of cyclic subgroups against conjugator search up to length 6
  std::uint64_t conj_n = 0, conj_bad = 0;
  for (int s = 0; s < 400; ++s) {
    const Raw u = words4[pick4(rng)];
    const Raw v = s % 2 ? oracle::conj(words3[pick3(rng)], u) : words4[pick4(rng)];
    if (v.size() > 6) continue;
    const auto cu = oracle::conjugates(2, u, 6);
    const bool brute = cu.count(v) || cu.count(oracle::inverse(v));
    const bool lib = conjugacy_eq(SubgroupConjClass::of(f2, {to_word(u)}), SubgroupConjClass::of(f2, {to_word(v)}));
    ++conj_n;
    conj_bad += brute != lib;
  }
  // is_inner against conjugator search up to length 6
  std::uint64_t inner_n = 0, inner_bad = 0;
  const auto nielsen = standard_generators(2, GeneratorFamily::Nielsen);
  for (int s = 0; s < 300; ++s) {
    FreeAutomorphism phi = FreeAutomorphism::inner(to_word(words3[pick3(rng)]));
    if (s % 3 == 1) phi = compose(sample(nielsen, 1 + s % 3, trial_seed(kSeed, static_cast<std::uint64_t>(s))), phi);
    if (s % 3 == 2) phi = compose(FreeAutomorphism::inner(to_word(words3[pick3(rng)])), phi);
    std::vector<std::pair<Raw, Raw>> pairs;
    for (int i = 1; i <= 2; ++i) pairs.push_back({Raw{i}, phi.image(i).letters()});
    const bool brute = oracle::has_common_conjugator(2, pairs, 6);
    ++inner_n;
    inner_bad += brute != is_inner(phi).has_value();
  }
  report(11, mem_bad + conj_bad + inner_bad == 0,
         fmt("membership %llu/%llu, conjugacy_eq %llu/%llu, is_inner %llu/%llu agree",
             static_cast<unsigned long long>(mem_n - mem_bad), static_cast<unsigned long long>(mem_n),
             static_cast<unsigned long long>(conj_n - conj_bad), static_cast<unsigned long long>(conj_n),
             static_cast<unsigned long long>(inner_n - inner_bad), static_cast<unsigned long long>(inner_n)));
}

}  // namespace

int main() {
  const std::vector<std::function<void()>> criteria{criterion_1, criterion_2, criterion_3, criteria_4_5,
                                                    criterion_6, criterion_7, criterion_8, criterion_9,
                                                    criterion_10, criterion_11};
  for (const auto& c : criteria) {
    try {
      c();
    } catch (const std::exception& e) {
      std::printf("FAIL criterion run aborted: %s\n", e.what());
      ++failures;
    }
  }
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
