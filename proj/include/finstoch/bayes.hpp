#pragma once

#include "finstoch/core.hpp"

namespace finstoch {

/// A morphism together with a Bayesian inverse: fbar_{xy} q_y = f_{yx} p_x
/// holds exactly for all x, y.
struct BayesPair {
  Morphism forward;
  Morphism inverse;
};

/// The canonical Bayesian inverse: fbar_{xy} = p_x f_{yx} / q_y on supported
/// columns, and the uniform distribution on X where q_y = 0. Inverses are
/// only unique up to q-a.e. equality; this is the fixed representative.
BayesPair bayesian_inverse(const Morphism& m);

/// Exact check of fbar_{xy} q_y = f_{yx} p_x for every entry.
bool verify_bayes_rule(const BayesPair& pair);

/// Inverting twice returns the original map p-a.e. (exactly, when p and q
/// have full support).
bool double_inverse_check(const Morphism& m);

}  // namespace finstoch
