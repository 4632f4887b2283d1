#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "finstoch/errors.hpp"
#include "finstoch/rational.hpp"

namespace finstoch {

using Label = std::string;

/// Label of the one-point set.
inline const Label kUnitLabel = "•";

/// "(a,b)" — the canonical name of a pair in a product label set.
Label pair_label(const Label& a, const Label& b);

/// "tag:inner" — the canonical name of a member of a disjoint union.
Label tagged_label(const Label& tag, const Label& inner);

/// Pairs in row-major order: (x0,y0), (x0,y1), ..., (x1,y0), ...
std::vector<Label> product_labels(const std::vector<Label>& xs,
                                  const std::vector<Label>& ys);

/// A finite labeled set carrying an exact probability distribution.
/// Label order is the identity used for all matrix indexing; two spaces are
/// equal iff labels and probabilities agree in order.
class ProbSpace {
 public:
  /// Validates: labels nonempty and pairwise distinct, probs the same length,
  /// each in [0,1], summing to exactly 1.
  ProbSpace(std::vector<Label> labels, std::vector<Rational> probs);

  std::size_t size() const { return labels_.size(); }
  const std::vector<Label>& labels() const { return labels_; }
  const std::vector<Rational>& probs() const { return probs_; }
  const Label& label(std::size_t i) const { return labels_[i]; }
  const Rational& prob(std::size_t i) const { return probs_[i]; }

  std::optional<std::size_t> index_of(std::string_view label) const;

  bool operator==(const ProbSpace&) const = default;

 private:
  std::vector<Label> labels_;
  std::vector<Rational> probs_;
};

/// A column-stochastic matrix of exact rationals between two labeled sets.
/// Entry (t, s) is the probability of target label t given source label s;
/// every column sums to exactly 1.
class StochMap {
 public:
  /// `matrix` is row-major with |tgt| rows and |src| columns.
  StochMap(std::vector<Label> src, std::vector<Label> tgt,
           std::vector<Rational> matrix);

  const std::vector<Label>& src() const { return src_; }
  const std::vector<Label>& tgt() const { return tgt_; }
  std::size_t src_size() const { return src_.size(); }
  std::size_t tgt_size() const { return tgt_.size(); }

  const Rational& at(std::size_t t, std::size_t s) const {
    return mat_[t * src_.size() + s];
  }
  const std::vector<Rational>& entries() const { return mat_; }

  /// The distribution a single source element is sent to.
  ProbSpace column_space(std::size_t s) const;

  /// Index of the target carrying all mass of column s, if the column is a
  /// point mass.
  std::optional<std::size_t> point_mass_target(std::size_t s) const;

  bool operator==(const StochMap&) const = default;

 private:
  std::vector<Label> src_;
  std::vector<Label> tgt_;
  std::vector<Rational> mat_;
};

/// A stochastic map together with source and target distributions it
/// preserves exactly: q_t = sum_s f_{ts} p_s.
class Morphism {
 public:
  /// Validates measure preservation against the given target distribution.
  Morphism(StochMap map, ProbSpace src_dist, ProbSpace tgt_dist);
  /// Computes the target distribution by pushforward.
  Morphism(StochMap map, ProbSpace src_dist);

  const StochMap& map() const { return map_; }
  const ProbSpace& src_dist() const { return src_; }
  const ProbSpace& tgt_dist() const { return tgt_; }

  bool operator==(const Morphism&) const = default;

 private:
  StochMap map_;
  ProbSpace src_;
  ProbSpace tgt_;
};

// -- Constructors for the structural maps --------------------------------

ProbSpace unit_space();

StochMap identity_map(std::vector<Label> labels);
/// x |-> (x,x)
StochMap copy_map(const std::vector<Label>& labels);
/// x |-> the one-point set
StochMap discard_map(const std::vector<Label>& labels);
/// (x,y) |-> (y,x)
StochMap swap_map(const std::vector<Label>& xs, const std::vector<Label>& ys);
/// (x,y) |-> x
StochMap proj_first(const std::vector<Label>& xs, const std::vector<Label>& ys);
/// (x,y) |-> y
StochMap proj_second(const std::vector<Label>& xs, const std::vector<Label>& ys);

// -- Operations -----------------------------------------------------------

/// (g∘f)_{zx} = sum_y g_{zy} f_{yx}; requires f.tgt == g.src (same order).
StochMap compose(const StochMap& g, const StochMap& f);
/// Composition of morphisms; requires f's target object to equal g's source
/// object (labels and distribution).
Morphism compose(const Morphism& g, const Morphism& f);

/// (f×g)_{(x',y')(x,y)} = f_{x'x} g_{y'y} on product label sets.
StochMap product(const StochMap& f, const StochMap& g);

/// q_t = sum_s f_{ts} p_s; requires p over f.src.
ProbSpace pushforward(const StochMap& f, const ProbSpace& p);

/// Distribution on src×tgt with mass f_{ts} p_s at (s,t).
ProbSpace joint_distribution(const Morphism& m);

/// Labels with probability exactly 0, in label order.
std::vector<Label> nullspace(const ProbSpace& p);
std::vector<std::size_t> nullspace_indices(const ProbSpace& p);

/// True iff every column is a 0/1 point mass.
bool is_deterministic(const StochMap& f);
/// True iff every column with p > 0 is a 0/1 point mass.
bool is_ae_deterministic(const StochMap& f, const ProbSpace& p);

/// Columnwise equality over the support of p; requires equal shapes.
bool ae_equal(const StochMap& f, const StochMap& g, const ProbSpace& p);

/// Same dimensions and equal entries, ignoring label text. Used where two
/// constructions agree only up to the canonical product relabeling.
bool entries_equal(const StochMap& f, const StochMap& g);

/// Disjoint union of `spaces` weighted by p; member z of the x-th summand
/// becomes label "x:z" with probability p_x q^x_z. One space per label of p,
/// in order.
ProbSpace convex_sum_objects(const ProbSpace& p,
                             const std::vector<ProbSpace>& spaces);

/// Block-diagonal convex sum of morphisms (zero off the blocks), between the
/// corresponding convex sums of their source and target objects.
Morphism convex_sum_morphisms(const ProbSpace& p,
                              const std::vector<Morphism>& morphs);

}  // namespace finstoch
