#include "finstoch/measures.hpp"

#include <cmath>
#include <stdexcept>

namespace finstoch {

namespace {

double checked_base(double base) {
  if (!(base > 1.0)) throw std::invalid_argument("logarithm base must exceed 1");
  return base;
}

double log_in_base(double v, double base) {
  return base == 2.0 ? std::log2(v) : std::log(v) / std::log(base);
}

}  // namespace

double shannon_entropy(const ProbSpace& p, double base) {
  checked_base(base);
  double h = 0.0;
  for (const Rational& px : p.probs()) {
    if (px == 0) continue;
    double v = to_double(px);
    h -= v * log_in_base(v, base);
  }
  return h;
}

double conditional_entropy(const Morphism& m, double base) {
  checked_base(base);
  const StochMap& f = m.map();
  double h = 0.0;
  for (std::size_t x = 0; x < f.src_size(); ++x) {
    const Rational& px = m.src_dist().prob(x);
    if (px == 0) continue;
    for (std::size_t y = 0; y < f.tgt_size(); ++y) {
      const Rational& fyx = f.at(y, x);
      if (fyx == 0) continue;
      h -= to_double(px * fyx) * log_in_base(to_double(fyx), base);
    }
  }
  return h;
}

double conditional_information_loss(const Morphism& m, double base) {
  return shannon_entropy(m.src_dist(), base) -
         shannon_entropy(m.tgt_dist(), base) + conditional_entropy(m, base);
}

double closs_closed_form(const Morphism& m, double base) {
  checked_base(base);
  const StochMap& f = m.map();
  double k = 0.0;
  for (std::size_t x = 0; x < f.src_size(); ++x) {
    const Rational& px = m.src_dist().prob(x);
    if (px == 0) continue;
    for (std::size_t y = 0; y < f.tgt_size(); ++y) {
      const Rational& fyx = f.at(y, x);
      if (fyx == 0) continue;
      Rational mass = fyx * px;
      // q_y >= f_yx p_x > 0 here, so the ratio is well-defined.
      Rational ratio = mass / m.tgt_dist().prob(y);
      k -= to_double(mass) * log_in_base(to_double(ratio), base);
    }
  }
  return k;
}

double functoriality_deviation(const Morphism& f, const Morphism& g,
                               double base) {
  checked_base(base);
  if (f.tgt_dist() != g.src_dist())
    throw ShapeMismatch("cannot compose: middle objects differ");
  const StochMap& fm = f.map();
  const StochMap& gm = g.map();
  StochMap gf = compose(gm, fm);
  double dev = 0.0;
  for (std::size_t x = 0; x < fm.src_size(); ++x) {
    const Rational& px = f.src_dist().prob(x);
    if (px == 0) continue;
    for (std::size_t y = 0; y < fm.tgt_size(); ++y) {
      const Rational& fyx = fm.at(y, x);
      if (fyx == 0) continue;
      for (std::size_t z = 0; z < gm.tgt_size(); ++z) {
        const Rational& gzy = gm.at(z, y);
        if (gzy == 0) continue;
        Rational mass = gzy * fyx;
        // (g∘f)_zx >= g_zy f_yx > 0, so the ratio is in (0,1].
        Rational ratio = mass / gf.at(z, x);
        dev -= to_double(px * mass) * log_in_base(to_double(ratio), base);
      }
    }
  }
  return dev;
}

}  // namespace finstoch
