#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "finstoch/bayes.hpp"
#include "finstoch/core.hpp"

namespace finstoch {

// -- Bloom / shriek --------------------------------------------------------

/// The bloom of f: X ⇝ X×Y, sending x to the point (x, ·) spread along f_x:
/// entry at ((x',y), x) is f_yx when x' = x and 0 otherwise. Equals
/// (id × f) ∘ copy.
StochMap bloom(const StochMap& f);

/// The shriek of f: the projection X×Y → X.
StochMap shriek(const StochMap& f);

/// The distribution p viewed as a map from the one-point space.
Morphism bloom(const ProbSpace& p);

/// The discard morphism (X,p) → the one-point space.
Morphism shriek(const ProbSpace& p);

/// Bloom of m as a morphism (X,p) ⇝ (X×Y, joint).
Morphism bloom_morphism(const Morphism& m);

/// Shriek of m as a morphism (X×Y, joint) → (X,p).
Morphism shriek_morphism(const Morphism& m);

/// Factors m as projection ∘ bloom through (X×Y, joint): returns the pair
/// (bloom, projection-to-Y). Their composite equals m exactly, both factors
/// are measure-preserving, and the pair is coalescable.
std::pair<Morphism, Morphism> bloom_shriek_factorize(const Morphism& m);

// -- Mediators and coalescability -----------------------------------------

/// A deterministic assignment Z×X → Y recovering the middle stage of a
/// composite from its outer data.
struct Mediator {
  std::vector<Label> z_labels;
  std::vector<Label> x_labels;
  std::vector<Label> y_labels;
  std::vector<std::size_t> choice;  // indexed z * |X| + x, values into y_labels

  std::size_t at(std::size_t z, std::size_t x) const {
    return choice[z * x_labels.size() + x];
  }
};

/// Searches for a mediator of the composable pair (f, g): for each (z, x)
/// with p_x > 0 there must be at most one y with g_zy f_yx != 0. Slots that
/// are unconstrained (p_x = 0, or no contributing y) are filled with the
/// first target label for reproducibility.
std::optional<Mediator> find_mediator(const Morphism& f, const Morphism& g);

/// Exact check of the three-index identity
///   [h(z,x)=y] (g∘f)_zx p_x = g_zy f_yx p_x   for all (z, y, x).
bool verify_mediator(const Mediator& h, const Morphism& f, const Morphism& g);

/// Whether (f, g) admits a mediator over the support of p.
bool is_coalescable(const Morphism& f, const Morphism& g);

/// The strong form: the at-most-one criterion must hold at every source
/// element, not just p-a.e.
bool is_strongly_coalescable(const StochMap& f, const StochMap& g);

// -- Disintegrations -------------------------------------------------------

/// For g: (Y,q) ⇝ (X,p), returns f with g∘f = id p-a.e. when g is q-a.e.
/// deterministic (the Bayesian inverse of g), and nothing otherwise.
std::optional<Morphism> find_disintegration(const Morphism& g);

// -- Possibilistic maps and correctable codes ------------------------------

/// A full relation: each source label carries a nonempty set of target
/// labels (stored as sorted index sets).
struct PossMap {
  PossMap(std::vector<Label> src, std::vector<Label> tgt,
          std::vector<std::vector<std::size_t>> images);

  std::vector<Label> src;
  std::vector<Label> tgt;
  std::vector<std::vector<std::size_t>> images;

  bool operator==(const PossMap&) const = default;
};

/// Relational composite: (d∘n)_x = union of d over the image n_x.
PossMap compose_poss(const PossMap& d, const PossMap& n);

PossMap identity_poss(std::vector<Label> labels);

/// The support relation of f: x |-> { y : f_yx > 0 }.
PossMap ceiling(const StochMap& f);

/// A classical code: codewords A included in carrier X via E, noised into Y
/// by the possibilistic map N.
struct Code {
  Code(std::vector<Label> a, std::vector<Label> x, std::vector<Label> y,
       std::vector<std::size_t> encode, PossMap noise);

  std::vector<Label> a;
  std::vector<Label> x;
  std::vector<Label> y;
  std::vector<std::size_t> encode;  // index into x per label of a; injective
  PossMap noise;                    // X ⇝ Y
};

/// The code induced by a morphism: A = supported source labels, E the
/// inclusion, N the support relation of the map.
Code code_from_morphism(const Morphism& m);

/// Searches for a recovery map D: Y ⇝ A with D∘N∘E = id_A. Builds D by
/// assigning each output the unique codeword that can reach it, then
/// verifies; overlapping codeword supports make recovery impossible.
std::optional<PossMap> find_recovery(const Code& c);

}  // namespace finstoch
