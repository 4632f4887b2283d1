// finstoch — command-line front end: load spaces and maps from a document,
// compute entropy measures, run structural checks and the property suites.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "finstoch/bayes.hpp"
#include "finstoch/document.hpp"
#include "finstoch/harness.hpp"
#include "finstoch/measures.hpp"
#include "finstoch/structure.hpp"

namespace {

using namespace finstoch;
using nlohmann::ordered_json;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Document load(const std::string& path) { return parse_document(slurp(path)); }

std::string fmt6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string entropy_units(double base) {
  if (base == 2.0) return "bits (base 2)";
  char buf[64];
  std::snprintf(buf, sizeof buf, "units (base %g)", base);
  return buf;
}

void print_matrix(const StochMap& f) {
  std::size_t rows = f.tgt_size(), cols = f.src_size();
  std::vector<std::size_t> width(cols + 1, 0);
  for (std::size_t t = 0; t < rows; ++t)
    width[0] = std::max(width[0], f.tgt()[t].size());
  std::vector<std::vector<std::string>> cells(rows, std::vector<std::string>(cols));
  for (std::size_t s = 0; s < cols; ++s) {
    width[s + 1] = f.src()[s].size();
    for (std::size_t t = 0; t < rows; ++t) {
      cells[t][s] = to_string(f.at(t, s));
      width[s + 1] = std::max(width[s + 1], cells[t][s].size());
    }
  }
  auto pad = [](const std::string& s, std::size_t w) {
    return s + std::string(w - s.size() + 2, ' ');
  };
  std::string header = pad("", width[0]);
  for (std::size_t s = 0; s < cols; ++s) header += pad(f.src()[s], width[s + 1]);
  std::cout << header << "\n";
  for (std::size_t t = 0; t < rows; ++t) {
    std::string line = pad(f.tgt()[t], width[0]);
    for (std::size_t s = 0; s < cols; ++s) line += pad(cells[t][s], width[s + 1]);
    std::cout << line << "\n";
  }
}

ordered_json matrix_json(const StochMap& f) {
  ordered_json rows = ordered_json::array();
  for (std::size_t t = 0; t < f.tgt_size(); ++t) {
    ordered_json row = ordered_json::array();
    for (std::size_t s = 0; s < f.src_size(); ++s)
      row.push_back(to_string(f.at(t, s)));
    rows.push_back(std::move(row));
  }
  return {{"src", f.src()}, {"tgt", f.tgt()}, {"matrix", std::move(rows)}};
}

ordered_json space_json(const ProbSpace& p) {
  ordered_json probs = ordered_json::array();
  for (const Rational& r : p.probs()) probs.push_back(to_string(r));
  return {{"labels", p.labels()}, {"probs", std::move(probs)}};
}

void emit(const ordered_json& j) { std::cout << j.dump(2) << "\n"; }

int cmd_entropy(const std::string& file, const std::string& space, double base,
                bool json) {
  Document doc = load(file);
  const ProbSpace& p = doc.space(space);
  double h = shannon_entropy(p, base);
  if (json)
    emit({{"command", "entropy"}, {"space", space}, {"base", base}, {"value", h}});
  else
    std::cout << "H(" << space << ") = " << fmt6(h) << " " << entropy_units(base)
              << "\n";
  return 0;
}

int cmd_condent(const std::string& file, const std::string& map, double base,
                bool json) {
  Document doc = load(file);
  const Document::MapDecl& m = doc.map(map);
  double h = conditional_entropy(m.morphism, base);
  if (json)
    emit({{"command", "condent"}, {"map", map}, {"base", base}, {"value", h}});
  else
    std::cout << "H(" << map << "|" << m.src_space << ") = " << fmt6(h) << " "
              << entropy_units(base) << "\n";
  return 0;
}

int cmd_closs(const std::string& file, const std::string& map, double base,
              bool json) {
  Document doc = load(file);
  const Document::MapDecl& m = doc.map(map);
  double by_definition = conditional_information_loss(m.morphism, base);
  double closed = closs_closed_form(m.morphism, base);
  if (json) {
    emit({{"command", "closs"},
          {"map", map},
          {"base", base},
          {"definition", by_definition},
          {"closed_form", closed}});
  } else {
    std::cout << "K(" << map << ") = " << fmt6(by_definition) << " "
              << entropy_units(base) << " [definition]\n";
    std::cout << "K(" << map << ") = " << fmt6(closed) << " "
              << entropy_units(base) << " [closed form]\n";
  }
  return 0;
}

int cmd_invert(const std::string& file, const std::string& map, bool json) {
  Document doc = load(file);
  const Document::MapDecl& m = doc.map(map);
  BayesPair pair = bayesian_inverse(m.morphism);
  const StochMap& inv = pair.inverse.map();
  const ProbSpace& q = pair.inverse.src_dist();
  std::vector<std::string> filled;
  for (std::size_t y = 0; y < q.size(); ++y)
    if (q.prob(y) == 0) filled.push_back(q.label(y));
  if (json) {
    ordered_json j = matrix_json(inv);
    j["command"] = "invert";
    j["map"] = map;
    j["uniform_fill"] = filled;
    emit(j);
    return 0;
  }
  std::cout << "inverse of " << map << " : " << m.tgt_space << " -> "
            << m.src_space << "\n";
  for (std::size_t y = 0; y < inv.src_size(); ++y) {
    std::cout << "column " << inv.src()[y];
    if (q.prob(y) == 0) std::cout << " [uniform fill]";
    std::cout << ":";
    for (std::size_t x = 0; x < inv.tgt_size(); ++x)
      std::cout << (x ? ", " : " ") << inv.tgt()[x] << " = "
                << to_string(inv.at(x, y));
    std::cout << "\n";
  }
  return 0;
}

// Maps are given in pipeline order: `compose f g` is "apply f, then g".
int cmd_compose(const std::string& file, const std::string& first,
                const std::string& second, bool json) {
  Document doc = load(file);
  const Document::MapDecl& f = doc.map(first);
  const Document::MapDecl& g = doc.map(second);
  Morphism composite = compose(g.morphism, f.morphism);
  if (json) {
    ordered_json j = matrix_json(composite.map());
    j["command"] = "compose";
    emit(j);
  } else {
    std::cout << second << " after " << first << " : " << f.src_space << " -> "
              << g.tgt_space << "\n";
    print_matrix(composite.map());
  }
  return 0;
}

int cmd_coalescable(const std::string& file, const std::string& first,
                    const std::string& second, bool json) {
  Document doc = load(file);
  const Morphism& f = doc.map(first).morphism;
  const Morphism& g = doc.map(second).morphism;
  auto h = find_mediator(f, g);
  if (h) {
    if (json) {
      ordered_json table = ordered_json::array();
      for (std::size_t z = 0; z < h->z_labels.size(); ++z)
        for (std::size_t x = 0; x < h->x_labels.size(); ++x)
          table.push_back({{"z", h->z_labels[z]},
                           {"x", h->x_labels[x]},
                           {"y", h->y_labels[h->at(z, x)]}});
      emit({{"command", "coalescable"}, {"coalescable", true},
            {"mediator", std::move(table)}});
    } else {
      std::cout << "coalescable: mediator found\n";
      for (std::size_t z = 0; z < h->z_labels.size(); ++z)
        for (std::size_t x = 0; x < h->x_labels.size(); ++x)
          std::cout << "  h(" << h->z_labels[z] << ", " << h->x_labels[x]
                    << ") = " << h->y_labels[h->at(z, x)] << "\n";
    }
    return 0;
  }
  // Report the first source/output cell reachable through two middles.
  const StochMap& fm = f.map();
  const StochMap& gm = g.map();
  for (std::size_t x = 0; x < fm.src_size(); ++x) {
    if (f.src_dist().prob(x) == 0) continue;
    for (std::size_t z = 0; z < gm.tgt_size(); ++z) {
      std::vector<std::string> overlap;
      for (std::size_t y = 0; y < fm.tgt_size(); ++y)
        if (gm.at(z, y) != 0 && fm.at(y, x) != 0)
          overlap.push_back(fm.tgt()[y]);
      if (overlap.size() < 2) continue;
      if (json) {
        emit({{"command", "coalescable"}, {"coalescable", false},
              {"witness", {{"z", gm.tgt()[z]},
                           {"x", fm.src()[x]},
                           {"overlap", overlap}}}});
      } else {
        std::cout << "not coalescable: output " << gm.tgt()[z] << " from input "
                  << fm.src()[x] << " passes through {";
        for (std::size_t i = 0; i < overlap.size(); ++i)
          std::cout << (i ? ", " : "") << overlap[i];
        std::cout << "}\n";
      }
      return 1;
    }
  }
  throw Error("internal error: no mediator but no overlap witness");
}

int cmd_deviation(const std::string& file, const std::string& first,
                  const std::string& second, double base, bool json) {
  Document doc = load(file);
  double dev = functoriality_deviation(doc.map(first).morphism,
                                       doc.map(second).morphism, base);
  if (json)
    emit({{"command", "deviation"}, {"base", base}, {"value", dev}});
  else
    std::cout << "deviation(" << first << ", " << second << ") = " << fmt6(dev)
              << " " << entropy_units(base) << "\n";
  return 0;
}

int cmd_bloom(const std::string& file, const std::string& map, bool json) {
  Document doc = load(file);
  const Document::MapDecl& m = doc.map(map);
  StochMap b = bloom(m.morphism.map());
  if (json) {
    ordered_json j = matrix_json(b);
    j["command"] = "bloom";
    emit(j);
  } else {
    std::cout << "bloom of " << map << "\n";
    print_matrix(b);
  }
  return 0;
}

int cmd_factorize(const std::string& file, const std::string& map, bool json) {
  Document doc = load(file);
  const Document::MapDecl& m = doc.map(map);
  auto [bloomed, projected] = bloom_shriek_factorize(m.morphism);
  if (json) {
    emit({{"command", "factorize"},
          {"bloom", matrix_json(bloomed.map())},
          {"midpoint", space_json(bloomed.tgt_dist())},
          {"projection", matrix_json(projected.map())}});
    return 0;
  }
  std::cout << "bloom factor:\n";
  print_matrix(bloomed.map());
  std::cout << "midpoint distribution:\n";
  const ProbSpace& mid = bloomed.tgt_dist();
  for (std::size_t i = 0; i < mid.size(); ++i)
    std::cout << "  " << mid.label(i) << ": " << to_string(mid.prob(i)) << "\n";
  std::cout << "projection factor:\n";
  print_matrix(projected.map());
  return 0;
}

int cmd_correctable(const std::string& file, const std::string& map, bool json) {
  Document doc = load(file);
  const Document::MapDecl& m = doc.map(map);
  Code code = code_from_morphism(m.morphism);
  auto recovery = find_recovery(code);
  if (recovery) {
    if (json) {
      ordered_json rel;
      for (std::size_t y = 0; y < recovery->src.size(); ++y) {
        ordered_json image = ordered_json::array();
        for (std::size_t a : recovery->images[y]) image.push_back(recovery->tgt[a]);
        rel[recovery->src[y]] = std::move(image);
      }
      emit({{"command", "correctable"}, {"correctable", true},
            {"recovery", std::move(rel)}});
    } else {
      std::cout << "correctable: recovery map found\n";
      for (std::size_t y = 0; y < recovery->src.size(); ++y) {
        std::cout << "  D(" << recovery->src[y] << ") = {";
        for (std::size_t i = 0; i < recovery->images[y].size(); ++i)
          std::cout << (i ? ", " : "")
                    << recovery->tgt[recovery->images[y][i]];
        std::cout << "}\n";
      }
    }
    return 0;
  }
  // Witness: an output reachable from two codewords.
  for (std::size_t y = 0; y < code.y.size(); ++y) {
    std::vector<std::string> reachers;
    for (std::size_t i = 0; i < code.a.size(); ++i) {
      const auto& image = code.noise.images[code.encode[i]];
      if (std::find(image.begin(), image.end(), y) != image.end())
        reachers.push_back(code.a[i]);
    }
    if (reachers.size() < 2) continue;
    if (json) {
      emit({{"command", "correctable"}, {"correctable", false},
            {"witness", {{"y", code.y[y]}, {"overlap", reachers}}}});
    } else {
      std::cout << "not correctable: output " << code.y[y]
                << " is reachable from {";
      for (std::size_t i = 0; i < reachers.size(); ++i)
        std::cout << (i ? ", " : "") << reachers[i];
      std::cout << "}\n";
    }
    return 1;
  }
  throw Error("internal error: no recovery but no overlap witness");
}

int cmd_propcheck(const std::string& suite, const harness::GenConfig& cfg,
                  bool json) {
  std::vector<std::string> names;
  if (suite.empty()) {
    names = harness::suite_names();
  } else {
    names.push_back(suite);
  }
  bool any_failed = false;
  ordered_json reports = ordered_json::array();
  for (const std::string& name : names) {
    harness::PropReport report = harness::run_suite(name, cfg);
    any_failed = any_failed || !report.passed();
    if (json) {
      reports.push_back(report.to_json());
      continue;
    }
    std::cout << name << ": " << (report.passed() ? "PASS" : "FAIL") << " ("
              << report.trials << " trials, max residual "
              << fmt17(report.max_residual) << ")\n";
    for (const harness::Failure& f : report.failures) {
      std::cout << "  trial " << f.trial << ": " << f.observed << "\n"
                << "    expected: " << f.expected << "\n";
      std::istringstream doc(f.witness.value("doc", std::string()));
      for (std::string line; std::getline(doc, line);)
        std::cout << "    | " << line << "\n";
    }
  }
  if (json) {
    emit(reports);
  } else if (any_failed) {
    std::cout << "some suites FAILED\n";
  } else {
    std::cout << "all suites passed\n";
  }
  return any_failed ? 1 : 0;
}

int run(int argc, char** argv) {
  CLI::App app{"finstoch — exact finite probability spaces, stochastic maps, "
               "entropy measures, and a seeded property-check harness"};
  app.require_subcommand(1);

  std::string file, space, map_a, map_b;
  double base = 2.0;
  bool json = false;
  int rc = 0;

  auto add_file = [&](CLI::App* sub) {
    sub->add_option("file", file, "input document")->required();
    sub->add_flag("--json", json, "machine-readable output");
  };
  auto add_base = [&](CLI::App* sub) {
    sub->add_option("--base", base, "logarithm base (> 1)")
        ->check(CLI::Range(std::nextafter(1.0, 2.0), 1e9));
  };

  auto* entropy = app.add_subcommand("entropy", "Shannon entropy of a space");
  add_file(entropy);
  entropy->add_option("space", space, "space name")->required();
  add_base(entropy);
  entropy->callback([&] { rc = cmd_entropy(file, space, base, json); });

  auto* condent = app.add_subcommand("condent", "conditional entropy of a map");
  add_file(condent);
  condent->add_option("map", map_a, "map name")->required();
  add_base(condent);
  condent->callback([&] { rc = cmd_condent(file, map_a, base, json); });

  auto* closs = app.add_subcommand(
      "closs", "conditional information loss of a map (both evaluations)");
  add_file(closs);
  closs->add_option("map", map_a, "map name")->required();
  add_base(closs);
  closs->callback([&] { rc = cmd_closs(file, map_a, base, json); });

  auto* invert = app.add_subcommand("invert", "Bayesian inverse of a map");
  add_file(invert);
  invert->add_option("map", map_a, "map name")->required();
  invert->callback([&] { rc = cmd_invert(file, map_a, json); });

  auto* comp = app.add_subcommand(
      "compose", "composite of two maps (pipeline order: first, then second)");
  add_file(comp);
  comp->add_option("first", map_a, "first map")->required();
  comp->add_option("second", map_b, "second map")->required();
  comp->callback([&] { rc = cmd_compose(file, map_a, map_b, json); });

  auto* coal = app.add_subcommand(
      "coalescable", "mediator search for a composable pair (pipeline order)");
  add_file(coal);
  coal->add_option("first", map_a, "first map")->required();
  coal->add_option("second", map_b, "second map")->required();
  coal->callback([&] { rc = cmd_coalescable(file, map_a, map_b, json); });

  auto* dev = app.add_subcommand(
      "deviation", "deviation from additivity of conditional entropy");
  add_file(dev);
  dev->add_option("first", map_a, "first map")->required();
  dev->add_option("second", map_b, "second map")->required();
  add_base(dev);
  dev->callback([&] { rc = cmd_deviation(file, map_a, map_b, base, json); });

  auto* bloom_cmd = app.add_subcommand("bloom", "bloom of a map");
  add_file(bloom_cmd);
  bloom_cmd->add_option("map", map_a, "map name")->required();
  bloom_cmd->callback([&] { rc = cmd_bloom(file, map_a, json); });

  auto* fact = app.add_subcommand(
      "factorize", "bloom-shriek factorization through the joint distribution");
  add_file(fact);
  fact->add_option("map", map_a, "map name")->required();
  fact->callback([&] { rc = cmd_factorize(file, map_a, json); });

  auto* corr = app.add_subcommand(
      "correctable", "recovery-map search for the code induced by a map");
  add_file(corr);
  corr->add_option("map", map_a, "map name")->required();
  corr->callback([&] { rc = cmd_correctable(file, map_a, json); });

  harness::GenConfig cfg;
  std::string suite;
  auto* prop = app.add_subcommand("propcheck", "run the property suites");
  prop->add_option("--suite", suite, "run a single suite by name");
  prop->add_option("--trials", cfg.trials, "trials per suite");
  prop->add_option("--seed", cfg.seed, "generator seed");
  prop->add_option("--size", cfg.max_size, "maximum labels per generated space")
      ->check(CLI::PositiveNumber);
  prop->add_flag("--json", json, "machine-readable reports");
  prop->callback([&] { rc = cmd_propcheck(suite, cfg, json); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  return rc;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const finstoch::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
