#include "doctest.h"

#include "finstoch/document.hpp"
#include "finstoch/harness.hpp"

using namespace finstoch;

namespace {

const char* kRunning = R"(# running example
space p { x0: 1/2, x1: 1/2 }
space q { y0: 3/4, y1: 1/4 }
map f : p -> q { y0|x0 = 1, y0|x1 = 1/2, y1|x1 = 1/2 }
)";

}  // namespace

TEST_CASE("parsing the line format") {
  Document doc = parse_document(kRunning);
  REQUIRE(doc.spaces.size() == 2);
  REQUIRE(doc.maps.size() == 1);
  const ProbSpace& p = doc.space("p");
  CHECK(p.prob(0) == Rational(1, 2));
  const Morphism& f = doc.map("f").morphism;
  CHECK(f.map().at(0, 0) == 1);
  CHECK(f.map().at(1, 0) == 0);  // omitted entry defaults to 0
  CHECK(f.map().at(0, 1) == Rational(1, 2));
  CHECK_THROWS_AS(doc.space("nope"), Error);
}

TEST_CASE("parse errors carry locations") {
  CHECK_THROWS_AS(parse_document("space p { x: }"), SyntaxError);
  CHECK_THROWS_AS(parse_document("spade p { x: 1 }"), SyntaxError);
  CHECK_THROWS_AS(parse_document("space p { x: 1/0 }"), SyntaxError);

  // Bad column sum, reported as validation with the map's location.
  try {
    parse_document("space p { a: 1 }\nspace q { u: 1/2, v: 1/2 }\n"
                   "map f : p -> q { u|a = 1/3, v|a = 1/2 }");
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(e.line == 3);
  }

  CHECK_THROWS_AS(parse_document("map f : p -> q { }"), UnresolvedReference);
  CHECK_THROWS_AS(
      parse_document("space p { a: 1 }\nmap f : p -> nowhere { }"),
      UnresolvedReference);
  CHECK_THROWS_AS(
      parse_document("space p { a: 1 }\nspace p { a: 1 }"), ValidationError);
  CHECK_THROWS_AS(
      parse_document("space p { a: 1 }\nmap f : p -> p { a|a = 1, a|a = 0 }"),
      ValidationError);
  CHECK_THROWS_AS(
      parse_document("space p { a: 1 }\nmap f : p -> p { b|a = 1 }"),
      ValidationError);
  CHECK_THROWS_AS(parse_document("space p { a: 1/3, b: 1/3 }"), ValidationError);
}

TEST_CASE("printing and reparsing is the identity") {
  Document doc = parse_document(kRunning);
  Document round = parse_document(print_document(doc));
  CHECK(round == doc);

  // Labels needing quotes survive the trip.
  Document weird = parse_document(
      "space s { \"a:b\": 1/2, \"x y\": 1/4, \"(p,q)\": 1/4 }\n"
      "map m : s -> s { \"a:b\"|\"a:b\" = 1, \"x y\"|\"x y\" = 1,"
      " (p,q)|\"(p,q)\" = 1 }\n");
  CHECK(parse_document(print_document(weird)) == weird);

  // Product labels print bare and reparse as single tokens.
  Document prod = parse_document(
      "space s { (x0,y0): 1/2, (x1,y1): 1/2 }");
  CHECK(parse_document(print_document(prod)) == prod);
}

TEST_CASE("round trip on generated documents") {
  harness::GenConfig cfg;
  cfg.seed = 3030;
  for (std::uint64_t t = 0; t < 40; ++t) {
    harness::Rng rng = harness::trial_rng(cfg, "doc-roundtrip", t);
    auto size = [&] { return std::size_t{1} + rng.below(cfg.max_size); };
    ProbSpace p = harness::gen_space(rng, cfg, size(), "x");
    Morphism f = harness::gen_morphism(rng, cfg, p, size(), "y");
    Morphism g = harness::gen_morphism(rng, cfg, f.tgt_dist(), size(), "z");

    Document doc;
    doc.spaces.emplace_back("p", f.src_dist());
    doc.spaces.emplace_back("q", f.tgt_dist());
    doc.spaces.emplace_back("r", g.tgt_dist());
    doc.maps.push_back({"f", "p", "q", f});
    doc.maps.push_back({"g", "q", "r", g});
    CHECK(parse_document(print_document(doc)) == doc);
  }
}

TEST_CASE("json input") {
  const char* json = R"({
    "spaces": [
      {"name": "p", "labels": ["x0", "x1"], "probs": ["1/2", "1/2"]},
      {"name": "q", "labels": ["y0", "y1"], "probs": ["3/4", "1/4"]}
    ],
    "maps": [
      {"name": "f", "src": "p", "tgt": "q",
       "matrix": [["1", "1/2"], [0, "1/2"]]}
    ]
  })";
  Document from_json = parse_document(json);
  Document from_text = parse_document(kRunning);
  CHECK(from_json == from_text);

  CHECK_THROWS_AS(parse_document("{ not json"), SyntaxError);
  CHECK_THROWS_AS(parse_document(R"({"spaces": [{"name": "p"}]})"),
                  ValidationError);
  CHECK_THROWS_AS(
      parse_document(
          R"({"maps": [{"name": "f", "src": "p", "tgt": "p", "matrix": []}]})"),
      UnresolvedReference);
}
