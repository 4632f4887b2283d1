#include "finstoch/harness.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "finstoch/measures.hpp"
#include "finstoch/structure.hpp"
#include "harness_internal.hpp"

namespace finstoch::harness {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::uint64_t Rng::next() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t Rng::below(std::uint64_t n) {
  if (n <= 1) return 0;
  std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
  std::uint64_t v;
  do {
    v = next();
  } while (v >= limit);
  return v % n;
}

bool Rng::chance(const Rational& p) {
  if (p <= 0) return false;
  if (p >= 1) return true;
  std::uint64_t den = denominator(p).convert_to<std::uint64_t>();
  std::uint64_t num = numerator(p).convert_to<std::uint64_t>();
  return below(den) < num;
}

std::vector<std::size_t> Rng::permutation(std::size_t n) {
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  for (std::size_t i = n; i > 1; --i)
    std::swap(perm[i - 1], perm[below(i)]);
  return perm;
}

Rng trial_rng(const GenConfig& cfg, std::string_view suite, std::uint64_t trial) {
  return Rng(mix64(mix64(cfg.seed ^ fnv1a(suite)) + trial));
}

nlohmann::ordered_json GenConfig::to_json() const {
  return {{"seed", seed},
          {"max_size", max_size},
          {"denom_bound", denom_bound},
          {"null_prob", to_string(null_prob)},
          {"trials", trials},
          {"tol", tol},
          {"sign_slack", sign_slack}};
}

GenConfig GenConfig::from_json(const nlohmann::json& j) {
  GenConfig cfg;
  cfg.seed = j.value("seed", cfg.seed);
  cfg.max_size = j.value("max_size", cfg.max_size);
  cfg.denom_bound = j.value("denom_bound", cfg.denom_bound);
  if (j.contains("null_prob"))
    cfg.null_prob = parse_rational(j.at("null_prob").get<std::string>());
  cfg.trials = j.value("trials", cfg.trials);
  cfg.tol = j.value("tol", cfg.tol);
  cfg.sign_slack = j.value("sign_slack", cfg.sign_slack);
  return cfg;
}

// -- Generators --------------------------------------------------------------

std::vector<Label> fresh_labels(std::size_t n, const std::string& prefix) {
  std::vector<Label> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = prefix + std::to_string(i);
  return labels;
}

// Counts over a chosen support; exact by construction since they sum to d.
std::vector<Rational> gen_probs(Rng& rng, const GenConfig& cfg, std::size_t n) {
  if (n == 1) return {Rational(1)};
  std::uint64_t d = 1 + rng.below(cfg.denom_bound);
  std::vector<std::size_t> support;
  for (std::size_t i = 0; i < n; ++i)
    if (!rng.chance(cfg.null_prob)) support.push_back(i);
  if (support.empty()) support.push_back(rng.below(n));
  std::vector<std::uint64_t> counts(n, 0);
  for (std::uint64_t u = 0; u < d; ++u)
    ++counts[support[rng.below(support.size())]];
  std::vector<Rational> probs(n);
  for (std::size_t i = 0; i < n; ++i) probs[i] = Rational(counts[i], d);
  return probs;
}

ProbSpace gen_dist(Rng& rng, const GenConfig& cfg, std::vector<Label> labels) {
  auto probs = gen_probs(rng, cfg, labels.size());
  return ProbSpace(std::move(labels), std::move(probs));
}

ProbSpace gen_space(Rng& rng, const GenConfig& cfg, std::size_t size,
                    const std::string& prefix) {
  return gen_dist(rng, cfg, fresh_labels(size, prefix));
}

ProbSpace gen_space(const GenConfig& cfg, std::size_t size,
                    const std::string& prefix) {
  Rng rng(mix64(cfg.seed));
  return gen_space(rng, cfg, size, prefix);
}

StochMap gen_map(Rng& rng, const GenConfig& cfg, std::vector<Label> src,
                 std::vector<Label> tgt, bool deterministic) {
  std::size_t nx = src.size(), ny = tgt.size();
  std::vector<Rational> m(ny * nx, Rational(0));
  for (std::size_t x = 0; x < nx; ++x) {
    if (deterministic) {
      m[rng.below(ny) * nx + x] = 1;
    } else {
      auto col = gen_probs(rng, cfg, ny);
      for (std::size_t y = 0; y < ny; ++y) m[y * nx + x] = std::move(col[y]);
    }
  }
  return StochMap(std::move(src), std::move(tgt), std::move(m));
}

StochMap gen_map(const GenConfig& cfg, std::vector<Label> src,
                 std::vector<Label> tgt, bool deterministic) {
  Rng rng(mix64(cfg.seed));
  return gen_map(rng, cfg, std::move(src), std::move(tgt), deterministic);
}

Morphism gen_morphism(Rng& rng, const GenConfig& cfg, const ProbSpace& src,
                      std::size_t tgt_size, const std::string& prefix,
                      bool deterministic) {
  StochMap map = gen_map(rng, cfg, src.labels(),
                         fresh_labels(tgt_size, prefix), deterministic);
  return Morphism(std::move(map), src);
}

Morphism gen_morphism(const GenConfig& cfg, const ProbSpace& src,
                      std::size_t tgt_size, const std::string& prefix,
                      bool deterministic) {
  Rng rng(mix64(cfg.seed));
  return gen_morphism(rng, cfg, src, tgt_size, prefix, deterministic);
}

std::pair<Morphism, Morphism> gen_coalescable_pair(Rng& rng, const GenConfig& cfg) {
  auto size = [&] { return std::size_t{1} + rng.below(cfg.max_size); };
  switch (rng.below(3)) {
    case 0: {
      // Deterministic first leg.
      ProbSpace p = gen_space(rng, cfg, size(), "x");
      Morphism f = gen_morphism(rng, cfg, p, size(), "y", /*deterministic=*/true);
      Morphism g = gen_morphism(rng, cfg, f.tgt_dist(), size(), "z");
      return {std::move(f), std::move(g)};
    }
    case 1: {
      // Isomorphism second leg.
      ProbSpace p = gen_space(rng, cfg, size(), "x");
      Morphism f = gen_morphism(rng, cfg, p, size(), "y");
      const ProbSpace& q = f.tgt_dist();
      std::size_t ny = q.size();
      auto perm = rng.permutation(ny);
      std::vector<Rational> m(ny * ny, Rational(0));
      std::vector<Rational> r(ny);
      for (std::size_t y = 0; y < ny; ++y) {
        m[perm[y] * ny + y] = 1;
        r[perm[y]] = q.prob(y);
      }
      Morphism g(StochMap(q.labels(), fresh_labels(ny, "z"), std::move(m)), q,
                 ProbSpace(fresh_labels(ny, "z"), std::move(r)));
      return {std::move(f), std::move(g)};
    }
    default: {
      // Bloom-shriek factorization of a random morphism.
      ProbSpace p = gen_space(rng, cfg, size(), "x");
      Morphism m = gen_morphism(rng, cfg, p, size(), "y");
      return bloom_shriek_factorize(m);
    }
  }
}

std::pair<Morphism, Morphism> gen_coalescable_pair(const GenConfig& cfg) {
  Rng rng(mix64(cfg.seed));
  return gen_coalescable_pair(rng, cfg);
}

// -- Reports -----------------------------------------------------------------

nlohmann::ordered_json Failure::to_json() const {
  return {{"trial", trial},
          {"observed", observed},
          {"expected", expected},
          {"witness", witness}};
}

nlohmann::ordered_json PropReport::to_json() const {
  nlohmann::ordered_json fs = nlohmann::ordered_json::array();
  for (const Failure& f : failures) fs.push_back(f.to_json());
  return {{"suite", suite},
          {"seed", seed},
          {"trials", trials},
          {"tolerance", tol},
          {"sign_slack", sign_slack},
          {"max_residual", max_residual},
          {"failures", std::move(fs)},
          {"elapsed_ms", elapsed_ms}};
}

PropReport PropReport::merge(PropReport a, PropReport b) {
  a.trials += b.trials;
  a.max_residual = std::max(a.max_residual, b.max_residual);
  a.elapsed_ms += b.elapsed_ms;
  for (Failure& f : b.failures) a.failures.push_back(std::move(f));
  return a;
}

Document name_instances(std::vector<std::pair<std::string, Morphism>> maps,
                        std::vector<std::pair<std::string, ProbSpace>> spaces) {
  Document doc;
  for (auto& [name, space] : spaces) doc.spaces.emplace_back(name, std::move(space));
  std::size_t counter = 0;
  auto space_name = [&](const ProbSpace& s) -> std::string {
    for (const auto& [n, existing] : doc.spaces)
      if (existing == s) return n;
    std::string name;
    do {
      name = "S" + std::to_string(counter++);
    } while (doc.find_space(name));
    doc.spaces.emplace_back(name, s);
    return name;
  };
  for (auto& [name, m] : maps) {
    std::string src = space_name(m.src_dist());
    std::string tgt = space_name(m.tgt_dist());
    doc.maps.push_back({name, std::move(src), std::move(tgt), std::move(m)});
  }
  return doc;
}

Failure make_failure(const GenConfig& cfg, std::string_view suite,
                     std::uint64_t trial, std::string observed,
                     std::string expected, const Document& instances) {
  Failure f;
  f.trial = trial;
  f.observed = std::move(observed);
  f.expected = std::move(expected);
  f.witness = {{"suite", std::string(suite)},
               {"config", cfg.to_json()},
               {"trial", trial},
               {"doc", print_document(instances)}};
  return f;
}

// -- Runners -----------------------------------------------------------------

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const SuiteEntry& e : suite_registry()) out.emplace_back(e.name);
    return out;
  }();
  return names;
}

namespace {

SuiteFn find_suite(const std::string& name) {
  for (const SuiteEntry& e : suite_registry())
    if (name == e.name) return e.fn;
  throw UnknownSuite("unknown suite '" + name + "'");
}

PropReport empty_report(const std::string& suite, const GenConfig& cfg) {
  PropReport r;
  r.suite = suite;
  r.seed = cfg.seed;
  r.tol = cfg.tol;
  r.sign_slack = cfg.sign_slack;
  return r;
}

void accumulate(PropReport& report, const std::string& suite,
                const GenConfig& cfg, SuiteFn fn, std::uint64_t trial) {
  TrialResult result;
  try {
    result = fn(cfg, trial);
  } catch (const std::exception& e) {
    result.failure = make_failure(cfg, suite, trial,
                                  std::string("exception: ") + e.what(),
                                  "trial runs without throwing", Document{});
  }
  ++report.trials;
  report.max_residual = std::max(report.max_residual, result.residual);
  if (result.failure) report.failures.push_back(std::move(*result.failure));
}

double ms_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - start)
      .count();
}

}  // namespace

TrialResult run_trial(const std::string& suite, const GenConfig& cfg,
                      std::uint64_t trial) {
  return find_suite(suite)(cfg, trial);
}

PropReport run_suite(const std::string& suite, const GenConfig& cfg) {
  SuiteFn fn = find_suite(suite);
  auto start = std::chrono::steady_clock::now();
  constexpr std::uint64_t kChunk = 32;
  std::uint64_t nchunks = (cfg.trials + kChunk - 1) / kChunk;
  std::vector<PropReport> parts(nchunks);
#pragma omp parallel for schedule(dynamic)
  for (long long c = 0; c < static_cast<long long>(nchunks); ++c) {
    PropReport part = empty_report(suite, cfg);
    std::uint64_t hi = std::min<std::uint64_t>(cfg.trials, (c + 1) * kChunk);
    for (std::uint64_t t = c * kChunk; t < hi; ++t)
      accumulate(part, suite, cfg, fn, t);
    parts[c] = std::move(part);
  }
  PropReport total = empty_report(suite, cfg);
  for (PropReport& part : parts)
    total = PropReport::merge(std::move(total), std::move(part));
  total.elapsed_ms = ms_since(start);
  return total;
}

PropReport run_suite_serial(const std::string& suite, const GenConfig& cfg) {
  SuiteFn fn = find_suite(suite);
  auto start = std::chrono::steady_clock::now();
  PropReport report = empty_report(suite, cfg);
  for (std::uint64_t t = 0; t < cfg.trials; ++t)
    accumulate(report, suite, cfg, fn, t);
  report.elapsed_ms = ms_since(start);
  return report;
}

TrialResult replay_witness(const nlohmann::json& witness) {
  std::string suite = witness.at("suite").get<std::string>();
  GenConfig cfg = GenConfig::from_json(witness.at("config"));
  std::uint64_t trial = witness.at("trial").get<std::uint64_t>();
  return run_trial(suite, cfg, trial);
}

// -- Continuity --------------------------------------------------------------

PropReport check_continuity(const Morphism& m, std::size_t steps,
                            const GenConfig& cfg) {
  if (steps < 2) throw std::invalid_argument("continuity check needs steps >= 2");
  constexpr double kFinalTol = 1e-6;

  Rng rng(mix64(cfg.seed ^ fnv1a("continuity-perturbation")));
  const StochMap& f = m.map();
  StochMap noise = gen_map(rng, cfg, f.src(), f.tgt());
  ProbSpace shifted = gen_dist(rng, cfg, f.src());

  PropReport report = empty_report("continuity", cfg);
  report.trials = steps;
  Document instances = name_instances(
      {{"f", m}, {"noise", Morphism(noise, m.src_dist())}},
      {{"shifted", shifted}});

  double k0 = conditional_information_loss(m);
  std::vector<double> residual(steps);
  for (std::size_t step = 1; step <= steps; ++step) {
    Rational w(1, Int(1) << step);
    Rational keep = 1 - w;
    std::vector<Rational> mixed(f.entries().size());
    for (std::size_t i = 0; i < mixed.size(); ++i)
      mixed[i] = keep * f.entries()[i] + w * noise.entries()[i];
    std::vector<Rational> probs(m.src_dist().size());
    for (std::size_t i = 0; i < probs.size(); ++i)
      probs[i] = keep * m.src_dist().prob(i) + w * shifted.prob(i);
    Morphism step_m(StochMap(f.src(), f.tgt(), std::move(mixed)),
                    ProbSpace(f.src(), std::move(probs)));
    residual[step - 1] = std::abs(conditional_information_loss(step_m) - k0);
  }

  double final_residual = residual[steps - 1];
  report.max_residual = final_residual;
  if (!(final_residual < kFinalTol))
    report.failures.push_back(make_failure(
        cfg, "continuity", 0,
        "final |K(f_n) - K(f)| = " + fmt(final_residual),
        "final residual < " + fmt(kFinalTol), instances));
  for (std::size_t i = steps / 2; i + 1 < steps; ++i) {
    if (residual[i + 1] > residual[i] + cfg.sign_slack) {
      report.failures.push_back(make_failure(
          cfg, "continuity", i + 1,
          "residual rises from " + fmt(residual[i]) + " to " +
              fmt(residual[i + 1]) + " at step " + std::to_string(i + 2),
          "residuals non-increasing over the last half", instances));
      break;
    }
  }
  return report;
}

}  // namespace finstoch::harness
