#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "finstoch/bayes.hpp"
#include "finstoch/measures.hpp"
#include "finstoch/structure.hpp"
#include "harness_internal.hpp"

// One function per registered suite. Every check either compares floats
// against cfg.tol (recording the residual) or asserts an exact rational
// predicate; the first violated check per trial is reported with a
// replayable witness.

namespace finstoch::harness {
namespace {

struct Ctx {
  const GenConfig& cfg;
  const char* suite;
  std::uint64_t trial;
  Rng rng;
  Document doc;
  TrialResult out;

  Ctx(const GenConfig& cfg, const char* suite, std::uint64_t trial)
      : cfg(cfg), suite(suite), trial(trial), rng(trial_rng(cfg, suite, trial)) {}

  void instances(std::vector<std::pair<std::string, Morphism>> maps,
                 std::vector<std::pair<std::string, ProbSpace>> spaces = {}) {
    doc = name_instances(std::move(maps), std::move(spaces));
  }

  void fail(std::string observed, std::string expected) {
    if (!out.failure)
      out.failure = make_failure(cfg, suite, trial, std::move(observed),
                                 std::move(expected), doc);
  }

  void feq(double lhs, double rhs, const std::string& what) {
    double r = std::abs(lhs - rhs);
    out.residual = std::max(out.residual, r);
    if (!(r <= cfg.tol))
      fail(what + ": |" + fmt(lhs) + " - " + fmt(rhs) + "| = " + fmt(r),
           what + " within " + fmt(cfg.tol));
  }

  void require(bool ok, const std::string& observed, const std::string& expected) {
    if (!ok) fail(observed, expected);
  }

  std::size_t size() { return std::size_t{1} + rng.below(cfg.max_size); }

  Morphism rand_morphism() {
    ProbSpace p = gen_space(rng, cfg, size(), "x");
    return gen_morphism(rng, cfg, p, size(), "y");
  }

  std::pair<Morphism, Morphism> rand_pair() {
    Morphism f = rand_morphism();
    Morphism g = gen_morphism(rng, cfg, f.tgt_dist(), size(), "z");
    return {std::move(f), std::move(g)};
  }

  // Half the pairs are guaranteed coalescable so both predicate branches
  // are exercised.
  std::pair<Morphism, Morphism> mixed_pair() {
    return rng.below(2) ? gen_coalescable_pair(rng, cfg) : rand_pair();
  }
};

double K(const Morphism& m) { return conditional_information_loss(m); }
double H(const Morphism& m) { return conditional_entropy(m); }

TrialResult suite_positivity(const GenConfig& cfg, std::uint64_t trial) {
  Ctx ctx(cfg, "positivity", trial);
  Morphism m = ctx.rand_morphism();
  ctx.instances({{"f", m}});
  double k = K(m);
  ctx.out.residual = std::max(0.0, -k);
  ctx.require(k >= -cfg.sign_slack, "K(f) = " + fmt(k),
              "K(f) >= -" + fmt(cfg.sign_slack));
  return std::move(ctx.out);
}

TrialResult suite_restriction(const GenConfig& cfg, std::uint64_t trial) {
  Ctx ctx(cfg, "restriction-to-deterministic", trial);
  ProbSpace p = gen_space(ctx.rng, cfg, ctx.size(), "x");
  Morphism m = gen_morphism(ctx.rng, cfg, p, ctx.size(), "y",
                            /*deterministic=*/true);
  ctx.instances({{"f", m}});
  ctx.feq(K(m), shannon_entropy(m.src_dist()) - shannon_entropy(m.tgt_dist()),
          "K(f) = H(p) - H(q) for deterministic f");
  return std::move(ctx.out);
}

TrialResult suite_convex_linearity(const GenConfig& cfg, std::uint64_t trial) {
  Ctx ctx(cfg, "convex-linearity", trial);
  ProbSpace weights = gen_space(ctx.rng, cfg, ctx.size(), "w");
  std::vector<Morphism> blocks;
  std::vector<std::pair<std::string, Morphism>> named;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    ProbSpace pi = gen_space(ctx.rng, cfg, ctx.size(), "a");
    blocks.push_back(gen_morphism(ctx.rng, cfg, pi, ctx.size(), "b"));
    named.emplace_back("Q" + std::to_string(i), blocks.back());
  }
  Morphism sum = convex_sum_morphisms(weights, blocks);
  named.emplace_back("sum", sum);
  ctx.instances(std::move(named), {{"weights", weights}});

  double rhs_k = 0.0, rhs_h = 0.0;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    double w = to_double(weights.prob(i));
    rhs_k += w * K(blocks[i]);
    rhs_h += w * H(blocks[i]);
  }
  ctx.feq(K(sum), rhs_k, "K of a convex sum = weighted sum of K");
  ctx.feq(H(sum), rhs_h, "H of a convex sum = weighted sum of H");
  return std::move(ctx.out);
}

TrialResult suite_continuity(const GenConfig& cfg, std::uint64_t trial) {
  Ctx ctx(cfg, "continuity", trial);
  Morphism m = ctx.rand_morphism();
  ctx.instances({{"f", m}});
  PropReport r = check_continuity(m, 64, cfg);
  ctx.out.residual = r.max_residual;
  if (!r.passed())
    ctx.fail(r.failures.front().observed, r.failures.front().expected);
  return std::move(ctx.out);
}

TrialResult suite_reduction(const GenConfig& cfg, std::uint64_t trial) {
  Ctx ctx(cfg, "reduction", trial);
  Morphism m = ctx.rand_morphism();
  ctx.instances({{"f", m}});
  auto [bloomed, projected] = bloom_shriek_factorize(m);
  ctx.feq(K(m), K(projected), "K(f) = K of the joint-to-target projection");
  ctx.feq(shannon_entropy(joint_distribution(m)),
          H(m) + shannon_entropy(m.src_dist()), "H(joint) = H(f|p) + H(p)");
  ctx.feq(K(m), closs_closed_form(m),
          "definition and closed form of K agree");
  return std::move(ctx.out);
}

TrialResult suite_blooming(const GenConfig& cfg, std::uint64_t trial) {
  Ctx ctx(cfg, "blooming", trial);
  ProbSpace p = gen_space(ctx.rng, cfg, ctx.size(), "x");
  Morphism b = bloom(p);
  ctx.instances({{"bloom_p", b}});
  ctx.feq(K(b), 0.0, "K of a bloom from the point vanishes");
  return std::move(ctx.out);
}

TrialResult suite_shrieking(const GenConfig& cfg, std::uint64_t trial) {
  Ctx ctx(cfg, "shrieking", trial);
  ProbSpace p = gen_space(ctx.rng, cfg, ctx.size(), "x");
  Morphism s = shriek(p);
  ctx.instances({{"shriek_p", s}});
  ctx.feq(H(s), 0.0, "H of a discard morphism vanishes");
  return std::move(ctx.out);
}

TrialResult suite_semifunct_k(const GenConfig& cfg, std::uint64_t trial) {
  Ctx ctx(cfg, "semi-functoriality-K", trial);
  auto [f, g] = gen_coalescable_pair(ctx.rng, cfg);
  ctx.instances({{"f", f}, {"g", g}});
  ctx.feq(K(compose(g, f)), K(f) + K(g), "K adds on coalescable pairs");
  return std::move(ctx.out);
}

TrialResult suite_semifunct_h(const GenConfig& cfg, std::uint64_t trial) {
  Ctx ctx(cfg, "semi-functoriality-H", trial);
  auto [f, g] = gen_coalescable_pair(ctx.rng, cfg);
  ctx.instances({{"f", f}, {"g", g}});
  ctx.feq(H(compose(g, f)), H(f) + H(g), "H adds on coalescable pairs");
  return std::move(ctx.out);
}

TrialResult suite_entropic_bayes(const GenConfig& cfg, std::uint64_t trial) {
  Ctx ctx(cfg, "entropic-bayes", trial);
  Morphism m = ctx.rand_morphism();
  Morphism inv = bayesian_inverse(m).inverse;
  ctx.instances({{"f", m}, {"fbar", inv}});
  ctx.feq(H(m) + H(bloom(m.src_dist())), H(inv) + H(bloom(m.tgt_dist())),
          "H(f) + H(bloom p) = H(fbar) + H(bloom q)");
  return std::move(ctx.out);
}

TrialResult suite_bayes_duality(const GenConfig& cfg, std::uint64_t trial) {
  Ctx ctx(cfg, "bayes-duality", trial);
  Morphism m = ctx.rand_morphism();
  Morphism inv = bayesian_inverse(m).inverse;
  ctx.instances({{"f", m}, {"fbar", inv}});
  ctx.feq(H(m), K(inv), "H(f) = K(fbar)");
  ctx.feq(K(m), H(inv), "K(f) = H(fbar)");
  return std::move(ctx.out);
}

TrialResult suite_bayes_rule_exact(const GenConfig& cfg, std::uint64_t trial) {
  Ctx ctx(cfg, "bayes-rule-exact", trial);
  Morphism m = ctx.rand_morphism();
  BayesPair pair = bayesian_inverse(m);
  ctx.instances({{"f", m}, {"fbar", pair.inverse}});
  ctx.require(verify_bayes_rule(pair), "fbar_xy q_y != f_yx p_x somewhere",
              "the Bayes product rule holds exactly");
  ctx.require(pushforward(pair.inverse.map(), m.tgt_dist()) == m.src_dist(),
              "inverse does not push q to p",
              "the inverse is measure-preserving");
  return std::move(ctx.out);
}

TrialResult suite_double_inverse(const GenConfig& cfg, std::uint64_t trial) {
  Ctx ctx(cfg, "double-inverse", trial);
  Morphism m = ctx.rand_morphism();
  ctx.instances({{"f", m}});
  ctx.require(double_inverse_check(m), "B(B(f)) differs from f on the support",
              "double inversion is the identity p-a.e.");
  return std::move(ctx.out);
}

TrialResult suite_joint_symmetry(const GenConfig& cfg, std::uint64_t trial) {
  Ctx ctx(cfg, "joint-symmetry", trial);
  Morphism m = ctx.rand_morphism();
  Morphism inv = bayesian_inverse(m).inverse;
  ctx.instances({{"f", m}, {"fbar", inv}});
  ProbSpace jf = joint_distribution(m);
  ProbSpace jb = joint_distribution(inv);
  std::size_t nx = m.src_dist().size(), ny = m.tgt_dist().size();
  bool ok = true;
  for (std::size_t x = 0; x < nx && ok; ++x)
    for (std::size_t y = 0; y < ny && ok; ++y)
      ok = jf.prob(x * ny + y) == jb.prob(y * nx + x);
  ctx.require(ok, "joint(f) != swap of joint(fbar)",
              "joint distributions agree under the swap, exactly");
  return std::move(ctx.out);
}

Mediator transport(const Mediator& h) {
  std::size_t nz = h.z_labels.size(), nx = h.x_labels.size();
  Mediator out{h.x_labels, h.z_labels, h.y_labels,
               std::vector<std::size_t>(nz * nx, 0)};
  for (std::size_t z = 0; z < nz; ++z)
    for (std::size_t x = 0; x < nx; ++x)
      out.choice[x * nz + z] = h.at(z, x);
  return out;
}

TrialResult suite_coalescable_duality(const GenConfig& cfg, std::uint64_t trial) {
  Ctx ctx(cfg, "coalescable-duality", trial);
  auto [f, g] = ctx.mixed_pair();
  Morphism fbar = bayesian_inverse(f).inverse;
  Morphism gbar = bayesian_inverse(g).inverse;
  ctx.instances({{"f", f}, {"g", g}, {"fbar", fbar}, {"gbar", gbar}});
  auto h = find_mediator(f, g);
  bool dual = is_coalescable(gbar, fbar);
  ctx.require(h.has_value() == dual,
              std::string("coalescable(f,g) = ") + (h ? "yes" : "no") +
                  ", coalescable(B(g),B(f)) = " + (dual ? "yes" : "no"),
              "the two verdicts agree");
  if (h)
    ctx.require(verify_mediator(transport(*h), gbar, fbar),
                "transported mediator fails on the inverted pair",
                "h∘swap mediates (B(g), B(f))");
  return std::move(ctx.out);
}

TrialResult suite_mediator_deviation(const GenConfig& cfg, std::uint64_t trial) {
  Ctx ctx(cfg, "mediator-deviation-equivalence", trial);
  auto [f, g] = ctx.mixed_pair();
  ctx.instances({{"f", f}, {"g", g}});
  auto h = find_mediator(f, g);
  double dev = functoriality_deviation(f, g);
  ctx.require(dev >= -cfg.sign_slack, "deviation = " + fmt(dev),
              "deviation is nonnegative");
  if (h) {
    ctx.require(verify_mediator(*h, f, g), "found mediator fails verification",
                "find_mediator output verifies");
    ctx.out.residual = std::max(ctx.out.residual, std::abs(dev));
    ctx.require(std::abs(dev) <= cfg.tol, "deviation = " + fmt(dev),
                "deviation vanishes when a mediator exists");
  } else {
    ctx.require(dev > cfg.tol, "deviation = " + fmt(dev),
                "deviation exceeds tol when no mediator exists");
  }
  return std::move(ctx.out);
}

// A morphism with disjoint column supports over the support of p, hence
// vanishing conditional information loss.
Morphism gen_zero_loss_morphism(Ctx& ctx) {
  const GenConfig& cfg = ctx.cfg;
  ProbSpace p = gen_space(ctx.rng, cfg, ctx.size(), "x");
  std::vector<std::size_t> supported;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p.prob(i) != 0) supported.push_back(i);
  std::size_t ny = supported.size() + ctx.rng.below(cfg.max_size);
  auto perm = ctx.rng.permutation(ny);
  // Block owner per target: the first |supported| targets (in permuted
  // order) seed one block each; the rest join random blocks.
  std::vector<std::vector<std::size_t>> block(supported.size());
  for (std::size_t j = 0; j < ny; ++j) {
    std::size_t owner =
        j < supported.size() ? j : ctx.rng.below(supported.size());
    block[owner].push_back(perm[j]);
  }
  std::size_t nx = p.size();
  std::vector<Rational> m(ny * nx, Rational(0));
  for (std::size_t i = 0; i < nx; ++i) {
    auto owner = std::find(supported.begin(), supported.end(), i);
    if (owner == supported.end()) {
      // Unsupported column: anything stochastic.
      auto col = gen_probs(ctx.rng, cfg, ny);
      for (std::size_t y = 0; y < ny; ++y) m[y * nx + i] = std::move(col[y]);
    } else {
      const auto& mine = block[owner - supported.begin()];
      auto col = gen_probs(ctx.rng, cfg, mine.size());
      for (std::size_t j = 0; j < mine.size(); ++j)
        m[mine[j] * nx + i] = std::move(col[j]);
    }
  }
  StochMap map(p.labels(), fresh_labels(ny, "y"), std::move(m));
  return Morphism(std::move(map), std::move(p));
}

TrialResult suite_vanishing_k(const GenConfig& cfg, std::uint64_t trial) {
  Ctx ctx(cfg, "vanishing-K-correctable", trial);
  bool forced = ctx.rng.below(2) == 0;
  Morphism m = forced ? gen_zero_loss_morphism(ctx) : ctx.rand_morphism();
  ctx.instances({{"f", m}});
  Morphism inv = bayesian_inverse(m).inverse;

  bool ae_det = is_ae_deterministic(inv.map(), inv.src_dist());
  bool disint = find_disintegration(inv).has_value();
  bool correctable = find_recovery(code_from_morphism(m)).has_value();
  ctx.require(ae_det == disint && disint == correctable,
              std::string("fbar a.e. deterministic: ") + (ae_det ? "yes" : "no") +
                  ", disintegration: " + (disint ? "yes" : "no") +
                  ", correctable: " + (correctable ? "yes" : "no"),
              "the three zero-loss predicates agree");
  if (forced)
    ctx.require(ae_det, "constructed disjoint-support morphism not recognized",
                "disjoint column supports imply vanishing loss");
  double k = K(m);
  if (ae_det) {
    ctx.out.residual = std::max(ctx.out.residual, std::abs(k));
    ctx.require(std::abs(k) <= cfg.tol, "K(f) = " + fmt(k),
                "K vanishes exactly when the exact predicate holds");
  } else {
    ctx.require(k > cfg.tol, "K(f) = " + fmt(k),
                "K exceeds tol when the exact predicate fails");
  }
  return std::move(ctx.out);
}

TrialResult suite_ae_invariance(const GenConfig& cfg, std::uint64_t trial) {
  Ctx ctx(cfg, "ae-invariance", trial);
  // Force a null source point so the a.e. distinction is real.
  std::size_t nx = 2 + ctx.rng.below(std::max<std::size_t>(cfg.max_size, 2) - 1);
  ProbSpace p0 = gen_space(ctx.rng, cfg, nx, "x");
  std::vector<Rational> probs(p0.probs());
  std::size_t hole = ctx.rng.below(nx);
  std::size_t keep = (hole + 1) % nx;
  probs[keep] += probs[hole];
  probs[hole] = 0;
  ProbSpace p(p0.labels(), std::move(probs));

  Morphism f = gen_morphism(ctx.rng, cfg, p, ctx.size(), "y");
  std::size_t ny = f.tgt_dist().size();
  std::vector<Rational> altered(f.map().entries());
  for (std::size_t x = 0; x < nx; ++x) {
    if (p.prob(x) != 0) continue;
    auto col = gen_probs(ctx.rng, cfg, ny);
    for (std::size_t y = 0; y < ny; ++y) altered[y * nx + x] = std::move(col[y]);
  }
  Morphism g(StochMap(f.map().src(), f.map().tgt(), std::move(altered)),
             p, f.tgt_dist());
  ctx.instances({{"f", f}, {"g", g}});

  ctx.require(ae_equal(f.map(), g.map(), p), "maps differ on the support",
              "the altered map is p-a.e. equal to the original");
  ctx.feq(K(f), K(g), "K is a.e. well-defined");
  ctx.feq(H(f), H(g), "H is a.e. well-defined");
  ctx.require(ae_equal(bayesian_inverse(f).inverse.map(),
                       bayesian_inverse(g).inverse.map(), f.tgt_dist()),
              "Bayesian inverses differ on the support of q",
              "inversion respects a.e. equality");
  return std::move(ctx.out);
}

// Deterministic bijection into / out of a space, with fresh labels.
Morphism random_iso_into(Ctx& ctx, const ProbSpace& p, const std::string& prefix) {
  std::size_t n = p.size();
  auto perm = ctx.rng.permutation(n);
  std::vector<Rational> s(n);
  std::vector<Rational> m(n * n, Rational(0));
  for (std::size_t w = 0; w < n; ++w) {
    m[perm[w] * n + w] = 1;
    s[w] = p.prob(perm[w]);
  }
  std::vector<Label> labels(n);
  for (std::size_t w = 0; w < n; ++w) labels[w] = prefix + std::to_string(w);
  ProbSpace src(labels, std::move(s));
  return Morphism(StochMap(std::move(labels), p.labels(), std::move(m)),
                  std::move(src), p);
}

Morphism random_iso_out_of(Ctx& ctx, const ProbSpace& q, const std::string& prefix) {
  std::size_t n = q.size();
  auto perm = ctx.rng.permutation(n);
  std::vector<Rational> r(n);
  std::vector<Rational> m(n * n, Rational(0));
  for (std::size_t y = 0; y < n; ++y) {
    m[perm[y] * n + y] = 1;
    r[perm[y]] = q.prob(y);
  }
  std::vector<Label> labels(n);
  for (std::size_t z = 0; z < n; ++z) labels[z] = prefix + std::to_string(z);
  ProbSpace tgt(labels, std::move(r));
  return Morphism(StochMap(q.labels(), std::move(labels), std::move(m)), q,
                  std::move(tgt));
}

TrialResult suite_iso_invariance(const GenConfig& cfg, std::uint64_t trial) {
  Ctx ctx(cfg, "iso-invariance", trial);
  Morphism f = ctx.rand_morphism();
  Morphism e = random_iso_into(ctx, f.src_dist(), "w");
  Morphism g = random_iso_out_of(ctx, f.tgt_dist(), "z");
  Morphism wedged = compose(g, compose(f, e));
  ctx.instances({{"f", f}, {"e", e}, {"g", g}});
  ctx.feq(K(wedged), K(f), "K is invariant under isomorphism wedging");
  ctx.feq(H(wedged), H(f), "H is invariant under isomorphism wedging");
  return std::move(ctx.out);
}

TrialResult suite_bloom_decomposition(const GenConfig& cfg, std::uint64_t trial) {
  Ctx ctx(cfg, "bloom-decomposition", trial);
  Morphism m = ctx.rand_morphism();
  Morphism inv = bayesian_inverse(m).inverse;
  ctx.instances({{"f", m}});

  Morphism bloom_f = bloom_morphism(m);
  Morphism shriek_f = shriek_morphism(m);
  Morphism shriek_inv = shriek_morphism(inv);
  const ProbSpace& p = m.src_dist();

  struct Functional {
    const char* name;
    double (*eval)(const Morphism&);
  };
  for (const Functional& fn : {Functional{"K", &K}, Functional{"H", &H}}) {
    std::string n = fn.name;
    ctx.feq(fn.eval(m), fn.eval(shriek_inv) + fn.eval(bloom_f),
            n + "(f) = " + n + "(shriek of fbar) + " + n + "(bloom of f)");
    double blooms = 0.0, shrieks = 0.0;
    for (std::size_t x = 0; x < p.size(); ++x) {
      if (p.prob(x) == 0) continue;
      ProbSpace column = m.map().column_space(x);
      blooms += to_double(p.prob(x)) * fn.eval(bloom(column));
      shrieks += to_double(p.prob(x)) * fn.eval(shriek(column));
    }
    ctx.feq(fn.eval(bloom_f), blooms,
            n + "(bloom of f) = weighted " + n + " of column blooms");
    ctx.feq(fn.eval(shriek_f), shrieks,
            n + "(shriek of f) = weighted " + n + " of column shrieks");
  }
  return std::move(ctx.out);
}

TrialResult suite_markov_axioms(const GenConfig& cfg, std::uint64_t trial) {
  Ctx ctx(cfg, "markov-axioms", trial);
  ProbSpace p = gen_space(ctx.rng, cfg, ctx.size(), "x");
  const std::vector<Label>& xs = p.labels();
  StochMap f = gen_map(ctx.rng, cfg, xs, fresh_labels(ctx.size(), "y"));
  ctx.instances({{"f", Morphism(f, p)}});

  StochMap id = identity_map(xs);
  StochMap dup = copy_map(xs);
  StochMap drop = discard_map(xs);
  ctx.require(entries_equal(compose(product(id, drop), dup), id),
              "(id × discard) ∘ copy != id", "copy is counital on the right");
  ctx.require(entries_equal(compose(product(drop, id), dup), id),
              "(discard × id) ∘ copy != id", "copy is counital on the left");
  ctx.require(entries_equal(compose(product(dup, id), dup),
                            compose(product(id, dup), dup)),
              "(copy × id) ∘ copy != (id × copy) ∘ copy",
              "copy is coassociative");
  ctx.require(compose(swap_map(xs, xs), dup) == dup, "swap ∘ copy != copy",
              "copy is cocommutative");
  ctx.require(compose(discard_map(f.tgt()), f) == drop,
              "discard ∘ f != discard", "discard is natural");
  return std::move(ctx.out);
}

}  // namespace

const std::vector<SuiteEntry>& suite_registry() {
  static const std::vector<SuiteEntry> registry = {
      {"positivity", &suite_positivity},
      {"restriction-to-deterministic", &suite_restriction},
      {"convex-linearity", &suite_convex_linearity},
      {"continuity", &suite_continuity},
      {"reduction", &suite_reduction},
      {"blooming", &suite_blooming},
      {"shrieking", &suite_shrieking},
      {"semi-functoriality-K", &suite_semifunct_k},
      {"semi-functoriality-H", &suite_semifunct_h},
      {"entropic-bayes", &suite_entropic_bayes},
      {"bayes-duality", &suite_bayes_duality},
      {"bayes-rule-exact", &suite_bayes_rule_exact},
      {"double-inverse", &suite_double_inverse},
      {"joint-symmetry", &suite_joint_symmetry},
      {"coalescable-duality", &suite_coalescable_duality},
      {"mediator-deviation-equivalence", &suite_mediator_deviation},
      {"vanishing-K-correctable", &suite_vanishing_k},
      {"ae-invariance", &suite_ae_invariance},
      {"iso-invariance", &suite_iso_invariance},
      {"bloom-decomposition", &suite_bloom_decomposition},
      {"markov-axioms", &suite_markov_axioms},
  };
  return registry;
}

}  // namespace finstoch::harness
