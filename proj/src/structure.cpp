#include "finstoch/structure.hpp"

#include <algorithm>

namespace finstoch {

StochMap bloom(const StochMap& f) {
  std::size_t nx = f.src_size(), ny = f.tgt_size();
  std::vector<Rational> m(nx * ny * nx, Rational(0));
  for (std::size_t x = 0; x < nx; ++x)
    for (std::size_t y = 0; y < ny; ++y)
      m[(x * ny + y) * nx + x] = f.at(y, x);
  return StochMap(f.src(), product_labels(f.src(), f.tgt()), std::move(m));
}

StochMap shriek(const StochMap& f) { return proj_first(f.src(), f.tgt()); }

Morphism bloom(const ProbSpace& p) {
  std::vector<Rational> column(p.probs());
  return Morphism(StochMap({kUnitLabel}, p.labels(), std::move(column)),
                  unit_space(), p);
}

Morphism shriek(const ProbSpace& p) {
  return Morphism(discard_map(p.labels()), p, unit_space());
}

Morphism bloom_morphism(const Morphism& m) {
  return Morphism(bloom(m.map()), m.src_dist(), joint_distribution(m));
}

Morphism shriek_morphism(const Morphism& m) {
  return Morphism(shriek(m.map()), joint_distribution(m), m.src_dist());
}

std::pair<Morphism, Morphism> bloom_shriek_factorize(const Morphism& m) {
  ProbSpace joint = joint_distribution(m);
  Morphism bloomed(bloom(m.map()), m.src_dist(), joint);
  Morphism projected(proj_second(m.map().src(), m.map().tgt()), joint,
                     m.tgt_dist());
  return {std::move(bloomed), std::move(projected)};
}

namespace {

void check_composable(const Morphism& f, const Morphism& g) {
  if (f.map().tgt() != g.map().src() || f.tgt_dist() != g.src_dist())
    throw ShapeMismatch("cannot compose: middle objects differ");
}

}  // namespace

std::optional<Mediator> find_mediator(const Morphism& f, const Morphism& g) {
  check_composable(f, g);
  const StochMap& fm = f.map();
  const StochMap& gm = g.map();
  std::size_t nx = fm.src_size(), ny = fm.tgt_size(), nz = gm.tgt_size();
  Mediator h{gm.tgt(), fm.src(), fm.tgt(),
             std::vector<std::size_t>(nz * nx, 0)};
  for (std::size_t x = 0; x < nx; ++x) {
    if (f.src_dist().prob(x) == 0) continue;
    for (std::size_t z = 0; z < nz; ++z) {
      std::optional<std::size_t> unique_y;
      for (std::size_t y = 0; y < ny; ++y) {
        if (gm.at(z, y) == 0 || fm.at(y, x) == 0) continue;
        if (unique_y) return std::nullopt;
        unique_y = y;
      }
      if (unique_y) h.choice[z * nx + x] = *unique_y;
    }
  }
  return h;
}

bool verify_mediator(const Mediator& h, const Morphism& f, const Morphism& g) {
  check_composable(f, g);
  const StochMap& fm = f.map();
  const StochMap& gm = g.map();
  if (h.z_labels != gm.tgt() || h.x_labels != fm.src() || h.y_labels != fm.tgt())
    throw ShapeMismatch("mediator shape does not match the pair");
  StochMap gf = compose(gm, fm);
  for (std::size_t x = 0; x < fm.src_size(); ++x) {
    if (f.src_dist().prob(x) == 0) continue;  // both sides vanish
    for (std::size_t z = 0; z < gm.tgt_size(); ++z) {
      std::size_t chosen = h.at(z, x);
      for (std::size_t y = 0; y < fm.tgt_size(); ++y) {
        Rational lhs = (y == chosen) ? gf.at(z, x) : Rational(0);
        if (lhs != gm.at(z, y) * fm.at(y, x)) return false;
      }
    }
  }
  return true;
}

bool is_coalescable(const Morphism& f, const Morphism& g) {
  return find_mediator(f, g).has_value();
}

bool is_strongly_coalescable(const StochMap& f, const StochMap& g) {
  if (f.tgt() != g.src())
    throw ShapeMismatch("cannot compose: inner label sets differ");
  for (std::size_t x = 0; x < f.src_size(); ++x)
    for (std::size_t z = 0; z < g.tgt_size(); ++z) {
      bool found = false;
      for (std::size_t y = 0; y < f.tgt_size(); ++y) {
        if (g.at(z, y) == 0 || f.at(y, x) == 0) continue;
        if (found) return false;
        found = true;
      }
    }
  return true;
}

std::optional<Morphism> find_disintegration(const Morphism& g) {
  if (!is_ae_deterministic(g.map(), g.src_dist())) return std::nullopt;
  Morphism section = bayesian_inverse(g).inverse;
  // Guaranteed by construction; a violation would be a library bug.
  if (!ae_equal(compose(g.map(), section.map()),
                identity_map(g.map().tgt()), section.src_dist()))
    throw Error("internal error: disintegration does not section the map");
  return section;
}

PossMap::PossMap(std::vector<Label> src_in, std::vector<Label> tgt_in,
                 std::vector<std::vector<std::size_t>> images_in)
    : src(std::move(src_in)), tgt(std::move(tgt_in)), images(std::move(images_in)) {
  if (images.size() != src.size())
    throw ShapeMismatch("need one image set per source label");
  for (auto& image : images) {
    if (image.empty())
      throw Error("possibilistic maps need nonempty image sets");
    std::sort(image.begin(), image.end());
    image.erase(std::unique(image.begin(), image.end()), image.end());
    if (image.back() >= tgt.size())
      throw ShapeMismatch("image index outside the target label set");
  }
}

PossMap compose_poss(const PossMap& d, const PossMap& n) {
  if (n.tgt != d.src)
    throw ShapeMismatch("cannot compose: inner label sets differ");
  std::vector<std::vector<std::size_t>> images(n.src.size());
  std::vector<char> mark(d.tgt.size());
  for (std::size_t x = 0; x < n.src.size(); ++x) {
    std::fill(mark.begin(), mark.end(), 0);
    for (std::size_t y : n.images[x])
      for (std::size_t z : d.images[y]) mark[z] = 1;
    for (std::size_t z = 0; z < mark.size(); ++z)
      if (mark[z]) images[x].push_back(z);
  }
  return PossMap(n.src, d.tgt, std::move(images));
}

PossMap identity_poss(std::vector<Label> labels) {
  std::vector<std::vector<std::size_t>> images(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) images[i] = {i};
  std::vector<Label> tgt = labels;
  return PossMap(std::move(labels), std::move(tgt), std::move(images));
}

PossMap ceiling(const StochMap& f) {
  std::vector<std::vector<std::size_t>> images(f.src_size());
  for (std::size_t x = 0; x < f.src_size(); ++x)
    for (std::size_t y = 0; y < f.tgt_size(); ++y)
      if (f.at(y, x) != 0) images[x].push_back(y);
  return PossMap(f.src(), f.tgt(), std::move(images));
}

Code::Code(std::vector<Label> a_in, std::vector<Label> x_in,
           std::vector<Label> y_in, std::vector<std::size_t> encode_in,
           PossMap noise_in)
    : a(std::move(a_in)), x(std::move(x_in)), y(std::move(y_in)),
      encode(std::move(encode_in)), noise(std::move(noise_in)) {
  if (a.empty() || x.empty() || y.empty())
    throw ShapeMismatch("codes need nonempty label sets");
  if (encode.size() != a.size())
    throw ShapeMismatch("need one carrier index per codeword");
  std::vector<char> used(x.size(), 0);
  for (std::size_t i : encode) {
    if (i >= x.size()) throw ShapeMismatch("encoding index outside the carrier");
    if (used[i]) throw Error("encoding must be injective");
    used[i] = 1;
  }
  if (noise.src != x || noise.tgt != y)
    throw ShapeMismatch("noise must run from the carrier to the output set");
}

Code code_from_morphism(const Morphism& m) {
  std::vector<Label> a;
  std::vector<std::size_t> encode;
  for (std::size_t i = 0; i < m.src_dist().size(); ++i) {
    if (m.src_dist().prob(i) != 0) {
      a.push_back(m.src_dist().label(i));
      encode.push_back(i);
    }
  }
  return Code(std::move(a), m.map().src(), m.map().tgt(), std::move(encode),
              ceiling(m.map()));
}

std::optional<PossMap> find_recovery(const Code& c) {
  std::size_t na = c.a.size(), ny = c.y.size();
  // Which codewords can reach each output.
  std::vector<std::vector<std::size_t>> reachers(ny);
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t y : c.noise.images[c.encode[i]]) reachers[y].push_back(i);

  std::vector<std::vector<std::size_t>> images(ny);
  for (std::size_t y = 0; y < ny; ++y)
    images[y] = {reachers[y].empty() ? 0 : reachers[y].front()};
  PossMap recovery(c.y, c.a, std::move(images));

  // Restrict the noise to codewords so the composite lands in A.
  std::vector<std::vector<std::size_t>> noise_images(na);
  for (std::size_t i = 0; i < na; ++i)
    noise_images[i] = c.noise.images[c.encode[i]];
  PossMap noise_on_a(c.a, c.y, std::move(noise_images));

  if (compose_poss(recovery, noise_on_a) == identity_poss(c.a)) return recovery;
  return std::nullopt;
}

}  // namespace finstoch
