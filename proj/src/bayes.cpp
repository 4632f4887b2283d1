#include "finstoch/bayes.hpp"

namespace finstoch {

BayesPair bayesian_inverse(const Morphism& m) {
  const StochMap& f = m.map();
  const ProbSpace& p = m.src_dist();
  const ProbSpace& q = m.tgt_dist();
  std::size_t nx = f.src_size(), ny = f.tgt_size();
  Rational uniform(1, static_cast<long long>(nx));
  std::vector<Rational> inv(nx * ny);
  for (std::size_t y = 0; y < ny; ++y) {
    const Rational& qy = q.prob(y);
    for (std::size_t x = 0; x < nx; ++x)
      inv[x * ny + y] = (qy == 0) ? uniform : Rational(p.prob(x) * f.at(y, x) / qy);
  }
  StochMap inv_map(f.tgt(), f.src(), std::move(inv));
  return BayesPair{m, Morphism(std::move(inv_map), q, p)};
}

bool verify_bayes_rule(const BayesPair& pair) {
  const StochMap& f = pair.forward.map();
  const StochMap& b = pair.inverse.map();
  if (f.src() != b.tgt() || f.tgt() != b.src())
    throw ShapeMismatch("inverse does not run between the forward map's objects");
  if (pair.forward.src_dist() != pair.inverse.tgt_dist() ||
      pair.forward.tgt_dist() != pair.inverse.src_dist())
    throw ShapeMismatch("inverse does not carry the forward map's distributions");
  const ProbSpace& p = pair.forward.src_dist();
  const ProbSpace& q = pair.forward.tgt_dist();
  for (std::size_t x = 0; x < f.src_size(); ++x)
    for (std::size_t y = 0; y < f.tgt_size(); ++y)
      if (b.at(x, y) * q.prob(y) != f.at(y, x) * p.prob(x)) return false;
  return true;
}

bool double_inverse_check(const Morphism& m) {
  Morphism twice = bayesian_inverse(bayesian_inverse(m).inverse).inverse;
  return ae_equal(twice.map(), m.map(), m.src_dist());
}

}  // namespace finstoch
