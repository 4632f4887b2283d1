#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "finstoch/document.hpp"
#include "finstoch/harness.hpp"

namespace finstoch::harness {

using SuiteFn = TrialResult (*)(const GenConfig&, std::uint64_t);

struct SuiteEntry {
  const char* name;
  SuiteFn fn;
};

const std::vector<SuiteEntry>& suite_registry();

// splitmix64 finalizer; used to derive independent streams.
std::uint64_t mix64(std::uint64_t x);
std::uint64_t fnv1a(std::string_view s);

std::vector<Label> fresh_labels(std::size_t n, const std::string& prefix);

/// A random distribution as exact counts k/d (d <= cfg.denom_bound), with
/// zero entries forced in per cfg.null_prob.
std::vector<Rational> gen_probs(Rng& rng, const GenConfig& cfg, std::size_t n);

// "%.17g" — enough digits to round-trip a double, stable across runs.
std::string fmt(double v);

/// Renders the generated instances as a document, deduplicating equal
/// spaces, so failure witnesses are self-contained and replayable by hand.
Document name_instances(std::vector<std::pair<std::string, Morphism>> maps,
                        std::vector<std::pair<std::string, ProbSpace>> spaces = {});

Failure make_failure(const GenConfig& cfg, std::string_view suite,
                     std::uint64_t trial, std::string observed,
                     std::string expected, const Document& instances);

}  // namespace finstoch::harness
