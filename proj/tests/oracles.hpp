#pragma once

// Test-only oracles: independent brute-force and enumeration routes used to
// cross-check the library's constructive algorithms. Deliberately separate
// from the implementations they check.

#include <cmath>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <vector>

#include "finstoch/core.hpp"
#include "finstoch/structure.hpp"

namespace oracles {

using finstoch::Code;
using finstoch::Label;
using finstoch::Mediator;
using finstoch::Morphism;
using finstoch::ProbSpace;
using finstoch::Rational;
using finstoch::StochMap;

// -Σ v log2(v) evaluated directly on doubles.
inline double entropy2(const std::vector<double>& probs) {
  double h = 0.0;
  for (double v : probs)
    if (v > 0.0) h -= v * std::log2(v);
  return h;
}

// All exact distributions on n points whose entries can be written as k/d
// with d <= max_denom, deduplicated.
inline std::vector<std::vector<Rational>> enumerate_dists(std::size_t n,
                                                          unsigned max_denom) {
  std::set<std::vector<Rational>> seen;
  std::vector<Rational> current(n);
  for (unsigned d = 1; d <= max_denom; ++d) {
    auto place = [&](auto&& self, std::size_t i, unsigned left) -> void {
      if (i + 1 == n) {
        current[i] = Rational(left, d);
        seen.insert(current);
        return;
      }
      for (unsigned k = 0; k <= left; ++k) {
        current[i] = Rational(k, d);
        self(self, i + 1, left - k);
      }
    };
    place(place, 0, d);
  }
  return {seen.begin(), seen.end()};
}

// Exhaustive mediator search: every table Z×X -> Y, checked with the exact
// three-index identity.
inline bool mediator_exists_brute_force(const Morphism& f, const Morphism& g) {
  std::size_t nx = f.map().src_size();
  std::size_t ny = f.map().tgt_size();
  std::size_t nz = g.map().tgt_size();
  std::size_t slots = nz * nx;
  double tables = std::pow(static_cast<double>(ny), static_cast<double>(slots));
  if (tables > 1e7) throw std::runtime_error("mediator search space too large");

  Mediator h{g.map().tgt(), f.map().src(), f.map().tgt(),
             std::vector<std::size_t>(slots, 0)};
  while (true) {
    if (finstoch::verify_mediator(h, f, g)) return true;
    std::size_t i = 0;
    for (; i < slots; ++i) {
      if (++h.choice[i] < ny) break;
      h.choice[i] = 0;
    }
    if (i == slots) return false;
  }
}

// Exhaustive recovery search over every possibilistic map Y -> A, with the
// composite checked through plain bitmasks.
inline bool recovery_exists_brute_force(const Code& code) {
  std::size_t na = code.a.size();
  std::size_t ny = code.y.size();
  if (na >= 30) throw std::runtime_error("too many codewords for bitmasks");
  std::uint32_t full = (std::uint32_t{1} << na) - 1;
  double candidates =
      std::pow(static_cast<double>(full), static_cast<double>(ny));
  if (candidates > 1e7) throw std::runtime_error("recovery search space too large");

  // Support of the noise at each codeword, as an output bitmask.
  if (ny >= 30) throw std::runtime_error("too many outputs for bitmasks");
  std::vector<std::uint32_t> reach(na, 0);
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t y : code.noise.images[code.encode[i]])
      reach[i] |= std::uint32_t{1} << y;

  // decode[y] ranges over nonempty subsets of A, encoded as mask+1 offsets.
  std::vector<std::uint32_t> decode(ny, 1);
  while (true) {
    bool ok = true;
    for (std::size_t i = 0; i < na && ok; ++i) {
      std::uint32_t recovered = 0;
      for (std::size_t y = 0; y < ny; ++y)
        if (reach[i] & (std::uint32_t{1} << y)) recovered |= decode[y];
      ok = recovered == (std::uint32_t{1} << i);
    }
    if (ok) return true;
    std::size_t y = 0;
    for (; y < ny; ++y) {
      if (++decode[y] <= full) break;
      decode[y] = 1;
    }
    if (y == ny) return false;
  }
}

}  // namespace oracles
