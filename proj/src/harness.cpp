#include "aplab/harness.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include "aplab/errors.hpp"
#include "aplab/homology.hpp"
#include "json.hpp"

namespace aplab {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

const char* family_name(GeneratorFamily f) { return f == GeneratorFamily::IA3 ? "ia3" : "nielsen"; }

FreeAutomorphism sample_with(std::span<const FreeAutomorphism> gens, int budget, std::uint64_t stream) {
  // the length is drawn from a stream separate from the one choosing generators
  const int length = 1 + static_cast<int>(trial_seed(stream, 0x9e37) % static_cast<std::uint64_t>(budget));
  return sample(gens, length, stream);
}

// A seeded subset of the pool in pool order, or the whole pool.
template <class T>
std::vector<const T*> draw(const std::vector<T>& pool, std::size_t size, std::uint64_t stream) {
  std::vector<const T*> all;
  for (const auto& x : pool) all.push_back(&x);
  if (size == 0 || size >= pool.size()) return all;
  std::vector<const T*> out;
  std::mt19937_64 rng(stream);
  std::sample(all.begin(), all.end(), std::back_inserter(out), size, rng);
  return out;
}

struct TrialResult {
  std::map<std::string, Histogram> outcomes;
  std::vector<std::string> violations;
};

ExperimentReport gather(std::string name, const ExperimentConfig& cfg, std::vector<TrialResult> results) {
  ExperimentReport report;
  report.experiment = std::move(name);
  report.config = cfg;
  report.trials = results.size();
  for (auto& r : results) {
    for (const auto& [section, h] : r.outcomes) report.outcomes[section].merge(h);
    for (auto& v : r.violations) report.violations.push_back(std::move(v));
  }
  return report;
}

Control control(std::string name, std::string expectation, const std::vector<OrbitOutcome>& outcomes, int expected) {
  Control c{std::move(name), std::move(expectation), {}, false};
  for (const auto& o : outcomes) {
    c.outcomes.add(o);
    c.met = c.met || (o.kind == OrbitOutcome::Kind::Period && o.period == expected);
  }
  return c;
}

std::string describe(const FreeAutomorphism& phi, const std::string& what, const OrbitOutcome& o) {
  return summary(phi) + " on " + what + ": " + to_string(o);
}

nlohmann::json histogram_json(const Histogram& h) {
  nlohmann::json periods = nlohmann::json::object();
  for (const auto& [p, n] : h.periods) periods[std::to_string(p)] = n;
  return {{"period_1", h.period_one},
          {"period_gt_1", h.period_many},
          {"no_period_within", h.no_period},
          {"blowup", h.blowup},
          {"periods", periods}};
}

}  // namespace

void validate(const ExperimentConfig& cfg) {
  if (cfg.rank < 2) throw std::invalid_argument("free-group experiments need rank >= 2");
  if (cfg.rank > 26) throw std::invalid_argument("rank exceeds the alphabet");
  if (cfg.samples <= 0 || cfg.budget <= 0 || cfg.pool_length <= 0 || cfg.max_iter <= 0 || cfg.length_cap == 0) {
    throw std::invalid_argument("experiment caps must be positive");
  }
}

void Histogram::add(const OrbitOutcome& o) {
  switch (o.kind) {
    case OrbitOutcome::Kind::Period:
      ++(o.period == 1 ? period_one : period_many);
      ++periods[o.period];
      break;
    case OrbitOutcome::Kind::NoPeriodWithin: ++no_period; break;
    case OrbitOutcome::Kind::Blowup: ++blowup; break;
  }
}

void Histogram::merge(const Histogram& other) {
  period_one += other.period_one;
  period_many += other.period_many;
  no_period += other.no_period;
  blowup += other.blowup;
  for (const auto& [p, n] : other.periods) periods[p] += n;
}

bool ExperimentReport::controls_met() const {
  return !controls.empty() && std::all_of(controls.begin(), controls.end(), [](const Control& c) { return c.met; });
}

FreeAutomorphism sample_trial(const ExperimentConfig& cfg, std::uint64_t index) {
  const auto gens = standard_generators(cfg.rank, cfg.family);
  return sample_with(gens, cfg.budget, trial_seed(cfg.seed, index));
}

std::vector<Word> word_pool(Alphabet alphabet, int max_length) {
  std::vector<Word> out;
  std::vector<Letter> w;
  const auto grow = [&](auto&& self) -> void {
    if (!w.empty()) out.push_back(Word::reduce(alphabet, w));
    if (static_cast<int>(w.size()) == max_length) return;
    for (int i = 1; i <= alphabet.rank; ++i) {
      for (Letter l : {i, -i}) {
        if (!w.empty() && w.back() == -l) continue;
        w.push_back(l);
        self(self);
        w.pop_back();
      }
    }
  };
  grow(grow);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<CyclicWord> class_pool(Alphabet alphabet, int max_length) {
  std::set<CyclicWord> classes;
  for (const auto& w : word_pool(alphabet, max_length)) {
    const auto c = CyclicWord::of(w);
    // phi^p fixes [w] iff it fixes [w^-1]
    classes.insert(std::min(c, CyclicWord::of(w.inverse())));
  }
  return {classes.begin(), classes.end()};
}

FreeAutomorphism cycle_automorphism(Alphabet alphabet, int k) {
  if (k < 1 || k > alphabet.rank) throw std::invalid_argument("cycle length out of range");
  std::vector<Word> fwd, bwd;
  for (int i = 1; i <= alphabet.rank; ++i) {
    const int next = i <= k ? i % k + 1 : i;
    const int prev = i <= k ? (i + k - 2) % k + 1 : i;
    fwd.push_back(Word::letter(alphabet, next));
    bwd.push_back(Word::letter(alphabet, prev));
  }
  return FreeAutomorphism::certify(fwd, bwd);
}

ExperimentReport run_conjugacy_experiment(const ExperimentConfig& cfg) {
  validate(cfg);
  const auto start = Clock::now();
  const Alphabet alphabet(cfg.rank);
  const auto classes = class_pool(alphabet, cfg.pool_length);
  const auto words = word_pool(alphabet, cfg.pool_length);
  auto results = map_indices<TrialResult>(static_cast<std::size_t>(cfg.samples), cfg.exec, [&](std::size_t i) {
    TrialResult r;
    const auto phi = sample_trial(cfg, i);
    for (const auto* c : draw(classes, cfg.class_pool_size, trial_seed(cfg.seed ^ 0xc1a55, i))) {
      const auto o = orbit_period_mitm(phi, *c, cfg.max_iter, cfg.length_cap);
      r.outcomes["outer"].add(o);
      if (o.kind == OrbitOutcome::Kind::Period && o.period > 1) r.violations.push_back(describe(phi, "[" + to_string(*c) + "]", o));
    }
    for (const auto* w : draw(words, cfg.word_pool_size, trial_seed(cfg.seed ^ 0x3077d, i))) {
      const auto o = word_orbit_period_mitm(phi, *w, cfg.max_iter, cfg.length_cap);
      r.outcomes["aut"].add(o);
      if (o.kind == OrbitOutcome::Kind::Period && o.period > 1) r.violations.push_back(describe(phi, to_string(*w), o));
    }
    return r;
  });
  auto report = gather("conjugacy", cfg, std::move(results));
  const auto swap = cycle_automorphism(alphabet, 2);
  const Word a = Word::letter(alphabet, 1);
  report.controls.push_back(control("swap on [a]", "Period(2)", {orbit_period(swap, CyclicWord::of(a), cfg.max_iter, cfg.length_cap)}, 2));
  report.controls.push_back(control("swap on a", "Period(2)", {word_orbit_period(swap, a, cfg.max_iter, cfg.length_cap)}, 2));
  report.elapsed = seconds_since(start);
  return report;
}

ExperimentReport run_factor_experiment(const ExperimentConfig& cfg) {
  validate(cfg);
  const auto start = Clock::now();
  const Alphabet alphabet(cfg.rank);
  std::vector<std::vector<std::vector<int>>> shapes{{{1}}, {{1}, {2}}, {{1, 2}}};
  if (cfg.rank >= 3) {
    shapes.push_back({{1}, {2, 3}});
    shapes.push_back({{1}, {2}, {3}});
  }
  const auto nielsen = standard_generators(cfg.rank, GeneratorFamily::Nielsen);
  auto results = map_indices<TrialResult>(static_cast<std::size_t>(cfg.samples), cfg.exec, [&](std::size_t i) {
    TrialResult r;
    const auto phi = sample_trial(cfg, i);
    for (std::size_t s = 0; s < shapes.size(); ++s) {
      const auto witness = sample_with(nielsen, 4, trial_seed(trial_seed(cfg.seed ^ 0xfac7, i), s));
      const FreeFactorSystem ffs(witness, shapes[s]);
      const auto o = orbit_period(phi, ffs, cfg.max_iter, cfg.length_cap);
      r.outcomes["factors"].add(o);
      if (o.kind == OrbitOutcome::Kind::Period && o.period > 1) {
        r.violations.push_back(describe(phi, "system witnessed by " + summary(witness), o));
      }
    }
    return r;
  });
  auto report = gather("factors", cfg, std::move(results));
  const auto cycle = cycle_automorphism(alphabet, cfg.rank);
  const FreeFactorSystem a(FreeAutomorphism::identity(alphabet), {{1}});
  report.controls.push_back(control(std::to_string(cfg.rank) + "-cycle on [<a>]", "Period(" + std::to_string(cfg.rank) + ")",
                                    {orbit_period(cycle, a, cfg.max_iter, cfg.length_cap)}, cfg.rank));
  report.elapsed = seconds_since(start);
  return report;
}

namespace {

// First k <= max_iter with phi^k inner. A power can only be inner when its
// abelianization is I, so only multiples of that matrix's order are tried.
OrbitOutcome outer_order(const FreeAutomorphism& phi, int max_iter, std::size_t length_cap) {
  OrbitOutcome o;
  const auto order = finite_order(abelianization(phi));
  if (!order || *order > max_iter) {
    o.kind = OrbitOutcome::Kind::NoPeriodWithin;
    return o;
  }
  const int step = static_cast<int>(*order);
  const auto jump = phi.pow(step);
  FreeAutomorphism power = jump;
  for (int k = step; k <= max_iter; k += step) {
    o.iterations = k;
    if (power.image_length() > length_cap) {
      o.kind = OrbitOutcome::Kind::Blowup;
      return o;
    }
    if (is_inner(power)) {
      o.kind = OrbitOutcome::Kind::Period;
      o.period = k;
      return o;
    }
    power = compose(jump, power);
  }
  o.kind = OrbitOutcome::Kind::NoPeriodWithin;
  return o;
}

}  // namespace

ExperimentReport run_torsion_experiment(const ExperimentConfig& cfg) {
  validate(cfg);
  const auto start = Clock::now();
  const Alphabet alphabet(cfg.rank);
  const auto gens = standard_generators(cfg.rank, cfg.family);
  auto results = map_indices<TrialResult>(static_cast<std::size_t>(cfg.samples), cfg.exec, [&](std::size_t i) {
    TrialResult r;
    // redraw until non-inner; inner samples are excluded, not counted
    FreeAutomorphism phi = FreeAutomorphism::identity(alphabet);
    for (std::uint64_t attempt = 0;; ++attempt) {
      phi = sample_with(gens, cfg.budget, trial_seed(trial_seed(cfg.seed, i), attempt));
      if (!is_inner(phi)) break;
      if (attempt > 1000) throw VerificationFailed("no non-inner sample found");
    }
    const auto o = outer_order(phi, cfg.max_iter, cfg.length_cap);
    r.outcomes["order"].add(o);
    if (o.kind == OrbitOutcome::Kind::Period) r.violations.push_back(describe(phi, "Out(F_N)", o));
    return r;
  });
  auto report = gather("torsion", cfg, std::move(results));
  report.controls.push_back(
      control("swap", "order 2", {outer_order(cycle_automorphism(alphabet, 2), cfg.max_iter, cfg.length_cap)}, 2));
  report.elapsed = seconds_since(start);
  return report;
}

ExperimentReport run_splitting_experiment(const ExperimentConfig& cfg) {
  validate(cfg);
  const auto start = Clock::now();
  const Alphabet alphabet(cfg.rank);
  std::vector<const MarkedGraph*> pool;
  for (const auto& x : cfg.splitting_pool) {
    if (x.alphabet() == alphabet) pool.push_back(&x);
  }
  if (pool.empty()) throw std::invalid_argument("no marked graph of rank " + std::to_string(cfg.rank) + " in the pool");
  auto results = map_indices<TrialResult>(static_cast<std::size_t>(cfg.samples), cfg.exec, [&](std::size_t i) {
    TrialResult r;
    const auto phi = sample_trial(cfg, i);
    for (std::size_t g = 0; g < pool.size(); ++g) {
      const auto o = splitting_orbit_period(*pool[g], phi, cfg.max_iter, cfg.length_cap);
      r.outcomes["splittings"].add(o);
      if (o.kind == OrbitOutcome::Kind::Period && o.period > 1) {
        r.violations.push_back(describe(phi, "pool graph " + std::to_string(g), o));
      }
    }
    return r;
  });
  auto report = gather("splittings", cfg, std::move(results));
  const auto swap = cycle_automorphism(alphabet, 2);
  std::vector<OrbitOutcome> swapped;
  for (const auto* x : pool) swapped.push_back(splitting_orbit_period(*x, swap, cfg.max_iter, cfg.length_cap));
  report.controls.push_back(control("swap on every pool graph", "some Period(2)", swapped, 2));
  report.elapsed = seconds_since(start);
  return report;
}

std::vector<MarkedGraph> load_splitting_pool(const std::string& directory) {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(directory)) {
    if (entry.path().extension() == ".mg") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<MarkedGraph> out;
  for (const auto& f : files) {
    std::ifstream in(f);
    std::stringstream ss;
    ss << in.rdbuf();
    out.push_back(parse_marked_graph(ss.str()));
  }
  return out;
}

std::string to_json(const ExperimentReport& report, bool with_elapsed) {
  const auto& c = report.config;
  nlohmann::json js;
  js["experiment"] = report.experiment;
  js["config"] = {{"rank", c.rank},           {"family", family_name(c.family)}, {"samples", c.samples},
                  {"budget", c.budget},       {"pool_length", c.pool_length},    {"class_pool_size", c.class_pool_size},
                  {"word_pool_size", c.word_pool_size}, {"max_iter", c.max_iter},
                  {"length_cap", c.length_cap}, {"seed", c.seed},                {"splitting_pool", c.splitting_pool.size()}};
  js["trials"] = report.trials;
  js["outcomes"] = nlohmann::json::object();
  for (const auto& [section, h] : report.outcomes) js["outcomes"][section] = histogram_json(h);
  js["violations"] = report.violations;
  js["controls"] = nlohmann::json::array();
  for (const auto& ctl : report.controls) {
    js["controls"].push_back(
        {{"name", ctl.name}, {"expectation", ctl.expectation}, {"outcomes", histogram_json(ctl.outcomes)}, {"met", ctl.met}});
  }
  js["pass"] = report.violations.empty();
  if (with_elapsed) js["elapsed"] = report.elapsed;
  return js.dump(2) + "\n";
}

}  // namespace aplab
