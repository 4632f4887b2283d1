#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "finstoch/core.hpp"

#include "json.hpp"

namespace finstoch::harness {

/// Everything a suite run depends on. The same config always produces the
/// same instances, trial by trial, regardless of execution order.
struct GenConfig {
  std::uint64_t seed = 0;
  std::size_t max_size = 4;      // labels per generated space
  unsigned denom_bound = 12;     // probabilities are drawn as k/denom
  Rational null_prob = Rational(1, 6);  // chance of forcing a zero entry
  std::uint64_t trials = 500;
  double tol = 1e-9;             // float-equality tolerance (bits)
  double sign_slack = 1e-12;     // slack for nonnegativity checks

  nlohmann::ordered_json to_json() const;
  static GenConfig from_json(const nlohmann::json& j);
};

/// splitmix64; values are stable across platforms and runs.
class Rng {
 public:
  explicit Rng(std::uint64_t state) : state_(state) {}
  std::uint64_t next();
  /// Uniform in [0, n); n >= 1.
  std::uint64_t below(std::uint64_t n);
  /// Exact Bernoulli draw with rational probability.
  bool chance(const Rational& p);
  /// Uniform permutation of {0, ..., n-1}.
  std::vector<std::size_t> permutation(std::size_t n);

 private:
  std::uint64_t state_;
};

/// The generator stream for one (suite, trial) cell; parallel and serial
/// execution see identical streams.
Rng trial_rng(const GenConfig& cfg, std::string_view suite, std::uint64_t trial);

// -- Generators -------------------------------------------------------------
// Each has a cfg-seeded form (deterministic in cfg.seed alone) and a streamed
// form for drawing several related instances inside one trial.

ProbSpace gen_space(Rng& rng, const GenConfig& cfg, std::size_t size,
                    const std::string& prefix = "x");
ProbSpace gen_space(const GenConfig& cfg, std::size_t size,
                    const std::string& prefix = "x");

/// A distribution over an existing label set.
ProbSpace gen_dist(Rng& rng, const GenConfig& cfg, std::vector<Label> labels);

StochMap gen_map(Rng& rng, const GenConfig& cfg, std::vector<Label> src,
                 std::vector<Label> tgt, bool deterministic = false);
StochMap gen_map(const GenConfig& cfg, std::vector<Label> src,
                 std::vector<Label> tgt, bool deterministic = false);

Morphism gen_morphism(Rng& rng, const GenConfig& cfg, const ProbSpace& src,
                      std::size_t tgt_size, const std::string& prefix = "y",
                      bool deterministic = false);
Morphism gen_morphism(const GenConfig& cfg, const ProbSpace& src,
                      std::size_t tgt_size, const std::string& prefix = "y",
                      bool deterministic = false);

/// A composable pair guaranteed to admit a mediator, produced by one of
/// three routes chosen pseudo-randomly: a deterministic first leg, an
/// isomorphism second leg, or the bloom-shriek factorization of a random
/// morphism.
std::pair<Morphism, Morphism> gen_coalescable_pair(Rng& rng, const GenConfig& cfg);
std::pair<Morphism, Morphism> gen_coalescable_pair(const GenConfig& cfg);

// -- Reports ----------------------------------------------------------------

struct Failure {
  std::uint64_t trial = 0;
  std::string observed;
  std::string expected;
  /// Self-contained replay record: suite, config, trial, and the generated
  /// instances rendered as a document.
  nlohmann::ordered_json witness;

  nlohmann::ordered_json to_json() const;
};

struct PropReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::uint64_t trials = 0;
  double tol = 1e-9;
  double sign_slack = 1e-12;
  double max_residual = 0.0;
  std::vector<Failure> failures;
  double elapsed_ms = 0.0;

  bool passed() const { return failures.empty(); }
  /// Stable field order; elapsed_ms is the only run-dependent field.
  nlohmann::ordered_json to_json() const;

  /// Associative merge of two runs over disjoint trial ranges (left range
  /// first).
  static PropReport merge(PropReport a, PropReport b);
};

struct TrialResult {
  std::optional<Failure> failure;
  double residual = 0.0;
};

/// Names of all registered suites, in the canonical order.
const std::vector<std::string>& suite_names();

/// One seeded trial of one suite. Throws UnknownSuite.
TrialResult run_trial(const std::string& suite, const GenConfig& cfg,
                      std::uint64_t trial);

/// Runs cfg.trials trials, parallelized over chunks (OpenMP when enabled);
/// the report is identical to the serial runner's except for elapsed_ms.
PropReport run_suite(const std::string& suite, const GenConfig& cfg);

/// Plain one-trial-at-a-time reference runner.
PropReport run_suite_serial(const std::string& suite, const GenConfig& cfg);

/// Re-runs the single check a failure witness came from.
TrialResult replay_witness(const nlohmann::json& witness);

/// Drives m along an exact-rational sequence converging to it (mixing in a
/// cfg-seeded fixed map and source perturbation at weight 1/2^step) and
/// checks that |K(f_n) - K(f)| falls below 1e-6 and is non-increasing over
/// the second half of the steps. steps >= 2.
PropReport check_continuity(const Morphism& m, std::size_t steps,
                            const GenConfig& cfg);

}  // namespace finstoch::harness
