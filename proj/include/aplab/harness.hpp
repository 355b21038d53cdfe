#pragma once

// Seeded experiments sampling the IA3 family. Each trial is keyed by
// (seed, trial index) so the report does not depend on scheduling.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "aplab/aut.hpp"
#include "aplab/parallel.hpp"
#include "aplab/splittings.hpp"
#include "aplab/subgroups.hpp"

namespace aplab {

struct ExperimentConfig {
  int rank = 2;
  GeneratorFamily family = GeneratorFamily::IA3;
  int samples = 1000;
  int budget = 8;        // each sample is a product of 1..budget generators
  int pool_length = 6;   // word pool: reduced words of length <= this
  // per-trial subsets drawn from the class and word pools; 0 keeps the whole pool
  std::size_t class_pool_size = 0;
  std::size_t word_pool_size = 256;
  int max_iter = kDefaultMaxIter;
  std::size_t length_cap = kDefaultLengthCap;
  std::uint64_t seed = 1;
  std::vector<MarkedGraph> splitting_pool;
  std::string out;
  Exec exec = Exec::Parallel;
};

/// Throws std::invalid_argument unless caps are positive and rank >= 2.
void validate(const ExperimentConfig& cfg);

struct Histogram {
  std::uint64_t period_one = 0;
  std::uint64_t period_many = 0;
  std::uint64_t no_period = 0;
  std::uint64_t blowup = 0;
  std::map<int, std::uint64_t> periods;  // every Period(p) seen

  void add(const OrbitOutcome& o);
  void merge(const Histogram& other);
  std::uint64_t total() const noexcept { return period_one + period_many + no_period + blowup; }
};

struct Control {
  std::string name;
  std::string expectation;
  Histogram outcomes;
  bool met = false;
};

struct ExperimentReport {
  std::string experiment;
  ExperimentConfig config;
  std::uint64_t trials = 0;
  std::map<std::string, Histogram> outcomes;  // per section, e.g. "outer", "aut"
  std::vector<std::string> violations;        // must be empty
  std::vector<Control> controls;
  double elapsed = 0.0;

  bool controls_met() const;
};

/// Sample i of the configured family; a pure function of (seed, i).
FreeAutomorphism sample_trial(const ExperimentConfig& cfg, std::uint64_t index);

/// One representative per conjugacy class of nontrivial elements, up to inversion.
std::vector<CyclicWord> class_pool(Alphabet alphabet, int max_length);
/// Nontrivial reduced words of length <= max_length.
std::vector<Word> word_pool(Alphabet alphabet, int max_length);
/// Signed permutation x_1 -> x_2 -> ... -> x_k -> x_1 of the first k letters.
FreeAutomorphism cycle_automorphism(Alphabet alphabet, int k);

/// Outer version on class_pool and Aut version on word_pool.
ExperimentReport run_conjugacy_experiment(const ExperimentConfig& cfg);
/// Witness systems: basis blocks pushed through sampled Nielsen products.
ExperimentReport run_factor_experiment(const ExperimentConfig& cfg);
/// Non-inner samples; a violation is some k <= max_iter with phi^k inner.
ExperimentReport run_torsion_experiment(const ExperimentConfig& cfg);
/// Each sample against every pool graph of the configured rank.
ExperimentReport run_splitting_experiment(const ExperimentConfig& cfg);

/// Marked graphs from every *.mg file in a directory, sorted by name.
std::vector<MarkedGraph> load_splitting_pool(const std::string& directory);

/// with_elapsed = false gives byte-identical output for identical configs.
std::string to_json(const ExperimentReport& report, bool with_elapsed = true);

}  // namespace aplab
