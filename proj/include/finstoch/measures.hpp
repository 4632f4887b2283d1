#pragma once

#include "finstoch/core.hpp"

namespace finstoch {

// Entropy values are the library's only floating-point surface. Every sum is
// accumulated over exact-rational terms converted at the last step, and
// 0·log 0 terms are skipped by support filtering rather than evaluated.
// Results are in units of the logarithm base (bits by default).

/// H(p) = -sum_x p_x log(p_x). Requires base > 1.
double shannon_entropy(const ProbSpace& p, double base = 2.0);

/// H(f|p) = sum_x p_x H(f_x): the average uncertainty of the output given
/// the input. Zero exactly when f is p-a.e. deterministic.
double conditional_entropy(const Morphism& m, double base = 2.0);

/// K(f) = H(p) - H(q) + H(f|p). Nonnegative for every morphism.
double conditional_information_loss(const Morphism& m, double base = 2.0);

/// K(f) evaluated as the single double sum
///   -sum_{x: p_x>0} sum_{y: f_yx>0} f_yx p_x log(f_yx p_x / q_y),
/// an independent route that must agree with the three-term definition.
double closs_closed_form(const Morphism& m, double base = 2.0);

/// How far the pair (f, g) is from satisfying H(g∘f|p) = H(f|p) + H(g|q):
///   -sum p_x g_zy f_yx log(g_zy f_yx / (g∘f)_zx)
/// over supported triples. Nonnegative; zero iff the pair admits a mediator.
double functoriality_deviation(const Morphism& f, const Morphism& g,
                               double base = 2.0);

}  // namespace finstoch
