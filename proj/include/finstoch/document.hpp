#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "finstoch/core.hpp"

namespace finstoch {

/// Named spaces and maps parsed from an input file. Declaration order is
/// preserved; every map is validated as a morphism between its declared
/// spaces (column-stochastic and measure-preserving).
struct Document {
  struct MapDecl {
    std::string name;
    std::string src_space;
    std::string tgt_space;
    Morphism morphism;

    bool operator==(const MapDecl&) const = default;
  };

  std::vector<std::pair<std::string, ProbSpace>> spaces;
  std::vector<MapDecl> maps;

  const ProbSpace* find_space(std::string_view name) const;
  const MapDecl* find_map(std::string_view name) const;
  /// Throwing lookups for command-line use.
  const ProbSpace& space(std::string_view name) const;
  const MapDecl& map(std::string_view name) const;

  bool operator==(const Document&) const = default;
};

/// Parses the line-oriented declaration format:
///
///   space p { x0: 1/2, x1: 1/2 }
///   map f : p -> q { y0|x0 = 1, y0|x1 = 1/2, y1|x1 = 1/2 }
///
/// Omitted map entries default to 0; '#' starts a comment; labels may be
/// double-quoted when they contain reserved characters. Input whose first
/// character is '{' is instead read as the JSON mirror:
///
///   {"spaces": [{"name": ..., "labels": [...], "probs": [...]}],
///    "maps":   [{"name": ..., "src": ..., "tgt": ..., "matrix": [[...]]}]}
///
/// Every parse error carries a line and column.
Document parse_document(std::string_view text);

/// Canonical rendering in the line-oriented format; parsing it back yields
/// an equal Document.
std::string print_document(const Document& doc);

}  // namespace finstoch
