#include "doctest.h"

#include "finstoch/core.hpp"
#include "finstoch/harness.hpp"

using namespace finstoch;

namespace {

ProbSpace uniform2() { return ProbSpace({"a", "b"}, {Rational(1, 2), Rational(1, 2)}); }

// The running example used throughout: p = (1/2, 1/2), columns (1,0) and
// (1/2, 1/2).
StochMap running_map() {
  return StochMap({"x0", "x1"}, {"y0", "y1"},
                  {Rational(1), Rational(1, 2), Rational(0), Rational(1, 2)});
}

ProbSpace running_p() {
  return ProbSpace({"x0", "x1"}, {Rational(1, 2), Rational(1, 2)});
}

}  // namespace

TEST_CASE("space construction and validation") {
  ProbSpace unit = unit_space();
  CHECK(unit.size() == 1);
  CHECK(unit.prob(0) == 1);

  ProbSpace u = uniform2();
  CHECK(u.prob(0) == Rational(1, 2));

  CHECK_THROWS_AS(ProbSpace({"a", "b"}, {Rational(1, 3), Rational(1, 3)}),
                  NotNormalized);
  CHECK_THROWS_AS(ProbSpace({"a", "a"}, {Rational(1, 2), Rational(1, 2)}),
                  DuplicateLabel);
  CHECK_THROWS_AS(ProbSpace({"a", "b"}, {Rational(3, 2), Rational(-1, 2)}),
                  OutOfRange);
  CHECK_THROWS_AS(ProbSpace({"a"}, {Rational(1), Rational(0)}), ShapeMismatch);
  CHECK_THROWS_AS(ProbSpace({""}, {Rational(1)}), BadLabel);
  // No labels means no mass.
  CHECK_THROWS_AS(ProbSpace({}, {}), NotNormalized);
}

TEST_CASE("map construction and validation") {
  StochMap id = identity_map({"a", "b"});
  CHECK(id.at(0, 0) == 1);
  CHECK(id.at(1, 0) == 0);

  StochMap constant({"a", "b"}, {"u", "v"},
                    {Rational(1, 2), Rational(1, 2), Rational(1, 2), Rational(1, 2)});
  CHECK(constant.column_space(0) == constant.column_space(1));

  CHECK_THROWS_AS(StochMap({"a"}, {"u", "v"}, {Rational(1), Rational(1, 2)}),
                  ColumnNotNormalized);
  CHECK_THROWS_AS(StochMap({"a"}, {"u"}, {Rational(1), Rational(0)}),
                  ShapeMismatch);
}

TEST_CASE("composition laws on the running example") {
  StochMap f = running_map();
  CHECK(compose(identity_map(f.tgt()), f) == f);
  CHECK(compose(f, identity_map(f.src())) == f);

  // Discard is natural.
  CHECK(compose(discard_map(f.tgt()), f) == discard_map(f.src()));

  // Swap is an involution up to the product relabeling.
  StochMap s = swap_map({"a", "b"}, {"u"});
  CHECK(entries_equal(compose(swap_map({"u"}, {"a", "b"}), s),
                      identity_map(product_labels({"a", "b"}, {"u"}))));

  CHECK_THROWS_AS(compose(f, f), ShapeMismatch);
}

TEST_CASE("products") {
  StochMap idu = identity_map({"u", "v"});
  CHECK(product(identity_map({"a", "b"}), idu) ==
        identity_map(product_labels({"a", "b"}, {"u", "v"})));

  // Constant-uniform times identity, expanded by hand from the product rule:
  // each column (x, y) puts 1/2 on (a, y) and 1/2 on (b, y).
  StochMap uniform({"a", "b"}, {"a", "b"},
                   {Rational(1, 2), Rational(1, 2), Rational(1, 2), Rational(1, 2)});
  StochMap prod = product(uniform, idu);
  for (std::size_t x = 0; x < 2; ++x)
    for (std::size_t y = 0; y < 2; ++y)
      for (std::size_t xp = 0; xp < 2; ++xp)
        for (std::size_t yp = 0; yp < 2; ++yp)
          CHECK(prod.at(xp * 2 + yp, x * 2 + y) ==
                (yp == y ? Rational(1, 2) : Rational(0)));

  StochMap point = identity_map({"p"});
  CHECK(product(point, point).src_size() == 1);
}

TEST_CASE("pushforward") {
  StochMap f = running_map();
  ProbSpace p = running_p();
  CHECK(pushforward(identity_map(p.labels()), p) == p);

  ProbSpace q = pushforward(f, p);
  CHECK(q.prob(0) == Rational(3, 4));
  CHECK(q.prob(1) == Rational(1, 4));

  ProbSpace pushed = pushforward(discard_map(p.labels()), p);
  CHECK(pushed.size() == 1);
  CHECK(pushed.prob(0) == 1);

  CHECK_THROWS_AS(pushforward(f, pushforward(f, p)), ShapeMismatch);
}

TEST_CASE("morphism validation") {
  StochMap f = running_map();
  ProbSpace p = running_p();
  ProbSpace q({"y0", "y1"}, {Rational(3, 4), Rational(1, 4)});
  CHECK_NOTHROW(Morphism(f, p, q));
  ProbSpace wrong({"y0", "y1"}, {Rational(1, 2), Rational(1, 2)});
  CHECK_THROWS_AS(Morphism(f, p, wrong), MeasureMismatch);
}

TEST_CASE("joint distribution") {
  ProbSpace p = uniform2();
  Morphism ident(identity_map(p.labels()), p);
  ProbSpace diag = joint_distribution(ident);
  CHECK(diag.prob(0) == Rational(1, 2));  // (a,a)
  CHECK(diag.prob(1) == 0);               // (a,b)
  CHECK(diag.prob(3) == Rational(1, 2));  // (b,b)

  Morphism running(running_map(), running_p());
  ProbSpace joint = joint_distribution(running);
  CHECK(joint.prob(0) == Rational(1, 2));  // (x0,y0)
  CHECK(joint.prob(1) == 0);               // (x0,y1)
  CHECK(joint.prob(2) == Rational(1, 4));  // (x1,y0)
  CHECK(joint.prob(3) == Rational(1, 4));  // (x1,y1)

  // A distribution viewed from the point has itself as joint, on •×X.
  Morphism from_point(StochMap({kUnitLabel}, p.labels(), {Rational(1, 2), Rational(1, 2)}),
                      unit_space());
  ProbSpace jp = joint_distribution(from_point);
  CHECK(jp.probs() == p.probs());
}

TEST_CASE("nullspace") {
  CHECK(nullspace(uniform2()).empty());
  CHECK(nullspace(ProbSpace({"a", "b"}, {Rational(1), Rational(0)})) ==
        std::vector<Label>{"b"});
  CHECK(nullspace(ProbSpace({"a", "b", "c"},
                            {Rational(0), Rational(0), Rational(1)})) ==
        std::vector<Label>{"a", "b"});
}

TEST_CASE("determinism predicates") {
  CHECK(is_deterministic(identity_map({"a", "b"})));
  StochMap f = running_map();
  CHECK_FALSE(is_deterministic(f));
  // Only the supported column matters for a.e. determinism.
  ProbSpace point({"x0", "x1"}, {Rational(1), Rational(0)});
  CHECK(is_ae_deterministic(f, point));
  CHECK_FALSE(is_ae_deterministic(f, running_p()));
}

TEST_CASE("a.e. equality") {
  StochMap f = running_map();
  ProbSpace p = running_p();
  CHECK(ae_equal(f, f, p));

  StochMap g({"x0", "x1"}, {"y0", "y1"},
             {Rational(1), Rational(0), Rational(0), Rational(1)});
  ProbSpace point({"x0", "x1"}, {Rational(1), Rational(0)});
  CHECK(ae_equal(f, g, point));   // differ only on the null column
  CHECK_FALSE(ae_equal(f, g, p)); // differ on a supported one
}

TEST_CASE("convex sums") {
  ProbSpace point({"w0", "w1"}, {Rational(1), Rational(0)});
  ProbSpace a = uniform2();
  ProbSpace b({"z"}, {Rational(1)});
  ProbSpace sum_point = convex_sum_objects(point, {a, b});
  CHECK(sum_point.labels() ==
        std::vector<Label>{"w0:a", "w0:b", "w1:z"});
  CHECK(sum_point.prob(0) == Rational(1, 2));
  CHECK(sum_point.prob(2) == 0);

  ProbSpace w = ProbSpace({"w0", "w1"}, {Rational(1, 2), Rational(1, 2)});
  ProbSpace two_units = convex_sum_objects(w, {unit_space(), unit_space()});
  CHECK(two_units.probs() ==
        std::vector<Rational>{Rational(1, 2), Rational(1, 2)});

  // Block expansion: id on the unit in one block, discard of a uniform
  // 2-point space in the other.
  Morphism id_unit(identity_map({kUnitLabel}), unit_space());
  Morphism drop(discard_map({"a", "b"}), a);
  Morphism block = convex_sum_morphisms(w, {id_unit, drop});
  CHECK(block.map().src() ==
        std::vector<Label>{"w0:•", "w1:a", "w1:b"});
  CHECK(block.map().tgt() ==
        std::vector<Label>{"w0:•", "w1:•"});
  CHECK(block.map().at(0, 0) == 1);
  CHECK(block.map().at(1, 0) == 0);  // off-block zero
  CHECK(block.map().at(0, 1) == 0);
  CHECK(block.map().at(1, 1) == 1);
  CHECK(block.map().at(1, 2) == 1);

  CHECK_THROWS_AS(convex_sum_objects(w, {a}), ShapeMismatch);
}

TEST_CASE("algebraic laws on random instances") {
  harness::GenConfig cfg;
  cfg.seed = 2024;
  for (std::uint64_t t = 0; t < 60; ++t) {
    harness::Rng rng = harness::trial_rng(cfg, "core-laws", t);
    auto size = [&] { return std::size_t{1} + rng.below(cfg.max_size); };
    ProbSpace p = harness::gen_space(rng, cfg, size(), "x");
    Morphism f = harness::gen_morphism(rng, cfg, p, size(), "y");
    Morphism g = harness::gen_morphism(rng, cfg, f.tgt_dist(), size(), "z");
    Morphism h = harness::gen_morphism(rng, cfg, g.tgt_dist(), size(), "v");

    // Associativity, exactly.
    CHECK(compose(h, compose(g, f)) == compose(compose(h, g), f));

    // Pushforward respects composition.
    CHECK(pushforward(compose(g.map(), f.map()), p) ==
          pushforward(g.map(), pushforward(f.map(), p)));

    // Joint marginals recover source and target.
    Morphism jf(f.map(), p);
    ProbSpace joint = joint_distribution(jf);
    StochMap to_src = proj_first(f.map().src(), f.map().tgt());
    StochMap to_tgt = proj_second(f.map().src(), f.map().tgt());
    CHECK(pushforward(to_src, joint) == p);
    CHECK(pushforward(to_tgt, joint) == f.tgt_dist());

    // Product interchange.
    Morphism f2 = harness::gen_morphism(rng, cfg, harness::gen_space(rng, cfg, size(), "s"),
                                        size(), "t");
    Morphism g2 = harness::gen_morphism(rng, cfg, f2.tgt_dist(), size(), "u");
    CHECK(compose(product(g.map(), g2.map()), product(f.map(), f2.map())) ==
          product(compose(g.map(), f.map()), compose(g2.map(), f2.map())));

    // Convex sums of measure-preserving morphisms are measure-preserving:
    // construction validates exactly that.
    ProbSpace weights = harness::gen_space(rng, cfg, 2, "w");
    CHECK_NOTHROW(convex_sum_morphisms(weights, {f, f2}));
  }
}
