// aperiodic-lab: runs one experiment or scan and writes a JSON report.
// Exit status 0 iff the report has no violations; 2 on usage or input errors.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "aplab/errors.hpp"
#include "aplab/graphs.hpp"
#include "aplab/harness.hpp"
#include "aplab/homology.hpp"
#include "aplab/rtt.hpp"

#ifndef APLAB_DATA_DIR
#define APLAB_DATA_DIR "data"
#endif

namespace {

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out);
  if (!f) throw std::runtime_error("cannot write " + out);
  f << text;
  if (!f) throw std::runtime_error("write failed for " + out);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Aperiodicity experiments for IA(F_N,3) and IA(Z^n,3)"};
  app.require_subcommand(1);

  aplab::ExperimentConfig cfg;
  std::string family = "ia3";
  std::string pool_dir = std::string(APLAB_DATA_DIR) + "/splittings";
  bool serial = false;
  bool no_elapsed = false;
  int bound = 6;
  int level = 3;
  std::string map_file;
  int bcc_trials = 1000;
  int bcc_length = 50;

  const auto common = [&](CLI::App* sub) {
    sub->add_option("--rank", cfg.rank, "rank N of F_N, or matrix size n")->capture_default_str();
    sub->add_option("--seed", cfg.seed, "base seed")->capture_default_str();
    sub->add_option("--out", cfg.out, "report path (stdout if omitted)");
    sub->add_flag("--serial", serial, "run the serial twin");
    sub->add_flag("--no-elapsed", no_elapsed, "omit timing so reports are byte-identical");
  };
  const auto sampling = [&](CLI::App* sub, int samples) {
    common(sub);
    sub->add_option("--samples", cfg.samples, "number of sampled automorphisms")->default_val(samples);
    sub->add_option("--max-iter", cfg.max_iter, "orbit iteration cap")->capture_default_str();
    sub->add_option("--length-cap", cfg.length_cap, "image length cap")->capture_default_str();
    sub->add_option("--budget", cfg.budget, "generators per sample, at most")->capture_default_str();
    sub->add_option("--family", family, "ia3 or nielsen")->capture_default_str();
  };

  auto* conj = app.add_subcommand("conjugacy", "periodic conjugacy classes and elements");
  sampling(conj, 1000);
  conj->add_option("--pool-length", cfg.pool_length, "word pool length")->capture_default_str();
  conj->add_option("--class-pool", cfg.class_pool_size, "classes drawn per sample, 0 for all")->capture_default_str();
  conj->add_option("--word-pool", cfg.word_pool_size, "words drawn per sample, 0 for all")->capture_default_str();
  auto* factors = app.add_subcommand("factors", "periodic free factor systems");
  sampling(factors, 500);
  auto* torsion = app.add_subcommand("torsion", "finite order in Out(F_N)");
  sampling(torsion, 300);
  auto* splits = app.add_subcommand("splittings", "periodic free splittings");
  sampling(splits, 200);
  splits->add_option("--pool", pool_dir, "directory of .mg marked graphs")->capture_default_str();
  auto* mink = app.add_subcommand("minkowski", "finite order in the level-3 congruence subgroup");
  common(mink);
  mink->add_option("--bound", bound, "entry bound")->capture_default_str();
  mink->add_option("--level", level, "congruence level")->capture_default_str();
  auto* abel = app.add_subcommand("abelian", "Per = Fix for level-3 integer matrices");
  common(abel);
  abel->add_option("--bound", bound, "entry bound")->default_val(5);
  auto* lemma = app.add_subcommand("graph-lemma", "automorphisms of small graphs acting trivially mod 3");
  lemma->add_option("--max-edges", bound, "edge bound")->default_val(6);
  lemma->add_option("--out", cfg.out, "report path (stdout if omitted)");
  lemma->add_flag("--serial", serial, "run the serial twin");
  auto* rtt = app.add_subcommand("rtt-analyze", "strata, train-track conditions and bounded cancellation of a graph map");
  rtt->add_option("map", map_file, "graph-map file")->required()->check(CLI::ExistingFile);
  rtt->add_option("--out", cfg.out, "report path (stdout if omitted)");
  rtt->add_option("--bcc-trials", bcc_trials, "random splittings tested")->capture_default_str();
  rtt->add_option("--bcc-length", bcc_length, "longest random path")->capture_default_str();
  rtt->add_option("--seed", cfg.seed, "base seed")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    cfg.family = aplab::parse_family(family);
    cfg.exec = serial ? aplab::Exec::Serial : aplab::Exec::Parallel;
    const auto run = [&](aplab::ExperimentReport (*experiment)(const aplab::ExperimentConfig&)) {
      const auto report = experiment(cfg);
      emit(aplab::to_json(report, !no_elapsed), cfg.out);
      return report.violations.empty() ? 0 : 1;
    };
    if (*conj) return run(aplab::run_conjugacy_experiment);
    if (*factors) return run(aplab::run_factor_experiment);
    if (*torsion) return run(aplab::run_torsion_experiment);
    if (*splits) {
      cfg.splitting_pool = aplab::load_splitting_pool(pool_dir);
      return run(aplab::run_splitting_experiment);
    }
    if (*mink || *abel) {
      auto report = *mink ? aplab::minkowski_scan(cfg.rank, bound, level, cfg.exec)
                          : aplab::abelian_standing_assumptions_check(cfg.rank, bound, cfg.exec);
      if (no_elapsed) report.elapsed = 0.0;
      emit(aplab::to_json(report), cfg.out);
      return report.violations == 0 ? 0 : 1;
    }
    if (*lemma) {
      const auto report = aplab::graph_lemma_check(bound, cfg.exec);
      emit(aplab::to_json(report), cfg.out);
      return report.violations == 0 ? 0 : 1;
    }
    const auto f = aplab::parse_graph_map(slurp(map_file));
    const auto strata = aplab::filtration_of(f);
    const auto check = aplab::verify_rtt(f, strata);
    const auto bcc = aplab::bcc_check(f, bcc_trials, bcc_length, cfg.seed);
    emit(aplab::to_json(f, strata, check, bcc), cfg.out);
    return bcc.violations == 0 ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "aperiodic-lab: " << e.what() << "\n";
    return 2;
  }
}
