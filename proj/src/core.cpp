#include "finstoch/core.hpp"

#include <unordered_set>
#include <utility>

namespace finstoch {

Label pair_label(const Label& a, const Label& b) { return "(" + a + "," + b + ")"; }

Label tagged_label(const Label& tag, const Label& inner) { return tag + ":" + inner; }

std::vector<Label> product_labels(const std::vector<Label>& xs,
                                  const std::vector<Label>& ys) {
  std::vector<Label> out;
  out.reserve(xs.size() * ys.size());
  for (const Label& x : xs)
    for (const Label& y : ys) out.push_back(pair_label(x, y));
  return out;
}

namespace {

void validate_labels(const std::vector<Label>& labels) {
  std::unordered_set<std::string_view> seen;
  for (const Label& l : labels) {
    if (l.empty()) throw BadLabel("labels must be nonempty");
    if (!seen.insert(l).second) throw DuplicateLabel("duplicate label '" + l + "'");
  }
}

}  // namespace

ProbSpace::ProbSpace(std::vector<Label> labels, std::vector<Rational> probs)
    : labels_(std::move(labels)), probs_(std::move(probs)) {
  if (labels_.size() != probs_.size())
    throw ShapeMismatch("label and probability counts differ");
  validate_labels(labels_);
  Rational total = 0;
  for (const Rational& p : probs_) {
    if (!is_probability(p))
      throw OutOfRange("probability " + to_string(p) + " outside [0,1]");
    total += p;
  }
  if (total != 1)
    throw NotNormalized("probabilities sum to " + to_string(total) + ", not 1");
}

std::optional<std::size_t> ProbSpace::index_of(std::string_view label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == label) return i;
  return std::nullopt;
}

StochMap::StochMap(std::vector<Label> src, std::vector<Label> tgt,
                   std::vector<Rational> matrix)
    : src_(std::move(src)), tgt_(std::move(tgt)), mat_(std::move(matrix)) {
  if (src_.empty() || tgt_.empty())
    throw ShapeMismatch("a stochastic map needs nonempty source and target");
  validate_labels(src_);
  validate_labels(tgt_);
  if (mat_.size() != src_.size() * tgt_.size())
    throw ShapeMismatch("matrix has " + std::to_string(mat_.size()) +
                        " entries, expected " +
                        std::to_string(src_.size() * tgt_.size()));
  for (std::size_t s = 0; s < src_.size(); ++s) {
    Rational col = 0;
    for (std::size_t t = 0; t < tgt_.size(); ++t) {
      const Rational& v = at(t, s);
      if (!is_probability(v))
        throw OutOfRange("entry " + to_string(v) + " outside [0,1]");
      col += v;
    }
    if (col != 1)
      throw ColumnNotNormalized("column '" + src_[s] + "' sums to " +
                                to_string(col) + ", not 1");
  }
}

ProbSpace StochMap::column_space(std::size_t s) const {
  std::vector<Rational> probs(tgt_.size());
  for (std::size_t t = 0; t < tgt_.size(); ++t) probs[t] = at(t, s);
  return ProbSpace(tgt_, std::move(probs));
}

std::optional<std::size_t> StochMap::point_mass_target(std::size_t s) const {
  std::optional<std::size_t> hit;
  for (std::size_t t = 0; t < tgt_.size(); ++t) {
    const Rational& v = at(t, s);
    if (v == 1) {
      hit = t;
    } else if (v != 0) {
      return std::nullopt;
    }
  }
  return hit;
}

Morphism::Morphism(StochMap map, ProbSpace src_dist, ProbSpace tgt_dist)
    : map_(std::move(map)), src_(std::move(src_dist)), tgt_(std::move(tgt_dist)) {
  if (src_.labels() != map_.src() || tgt_.labels() != map_.tgt())
    throw ShapeMismatch("distributions do not match the map's label sets");
  for (std::size_t t = 0; t < map_.tgt_size(); ++t) {
    Rational q = 0;
    for (std::size_t s = 0; s < map_.src_size(); ++s)
      q += map_.at(t, s) * src_.prob(s);
    if (q != tgt_.prob(t))
      throw MeasureMismatch("map does not send the source distribution to the "
                            "target distribution at '" + map_.tgt()[t] + "'");
  }
}

Morphism::Morphism(StochMap map, ProbSpace src_dist)
    : Morphism(map, src_dist, pushforward(map, src_dist)) {}

ProbSpace unit_space() { return ProbSpace({kUnitLabel}, {Rational(1)}); }

StochMap identity_map(std::vector<Label> labels) {
  std::size_t n = labels.size();
  std::vector<Rational> m(n * n, Rational(0));
  for (std::size_t i = 0; i < n; ++i) m[i * n + i] = 1;
  return StochMap(labels, labels, std::move(m));
}

StochMap copy_map(const std::vector<Label>& labels) {
  std::size_t n = labels.size();
  std::vector<Rational> m(n * n * n, Rational(0));
  for (std::size_t i = 0; i < n; ++i) m[(i * n + i) * n + i] = 1;
  return StochMap(labels, product_labels(labels, labels), std::move(m));
}

StochMap discard_map(const std::vector<Label>& labels) {
  return StochMap(labels, {kUnitLabel},
                  std::vector<Rational>(labels.size(), Rational(1)));
}

StochMap swap_map(const std::vector<Label>& xs, const std::vector<Label>& ys) {
  std::size_t nx = xs.size(), ny = ys.size(), n = nx * ny;
  std::vector<Rational> m(n * n, Rational(0));
  for (std::size_t x = 0; x < nx; ++x)
    for (std::size_t y = 0; y < ny; ++y)
      m[(y * nx + x) * n + (x * ny + y)] = 1;
  return StochMap(product_labels(xs, ys), product_labels(ys, xs), std::move(m));
}

StochMap proj_first(const std::vector<Label>& xs, const std::vector<Label>& ys) {
  std::size_t nx = xs.size(), ny = ys.size();
  std::vector<Rational> m(nx * nx * ny, Rational(0));
  for (std::size_t x = 0; x < nx; ++x)
    for (std::size_t y = 0; y < ny; ++y) m[x * nx * ny + (x * ny + y)] = 1;
  return StochMap(product_labels(xs, ys), xs, std::move(m));
}

StochMap proj_second(const std::vector<Label>& xs, const std::vector<Label>& ys) {
  std::size_t nx = xs.size(), ny = ys.size();
  std::vector<Rational> m(ny * nx * ny, Rational(0));
  for (std::size_t x = 0; x < nx; ++x)
    for (std::size_t y = 0; y < ny; ++y) m[y * nx * ny + (x * ny + y)] = 1;
  return StochMap(product_labels(xs, ys), ys, std::move(m));
}

StochMap compose(const StochMap& g, const StochMap& f) {
  if (f.tgt() != g.src())
    throw ShapeMismatch("cannot compose: inner label sets differ");
  std::size_t nx = f.src_size(), ny = f.tgt_size(), nz = g.tgt_size();
  std::vector<Rational> m(nz * nx, Rational(0));
  for (std::size_t z = 0; z < nz; ++z)
    for (std::size_t x = 0; x < nx; ++x) {
      Rational acc = 0;
      for (std::size_t y = 0; y < ny; ++y) acc += g.at(z, y) * f.at(y, x);
      m[z * nx + x] = std::move(acc);
    }
  return StochMap(f.src(), g.tgt(), std::move(m));
}

Morphism compose(const Morphism& g, const Morphism& f) {
  if (f.tgt_dist() != g.src_dist())
    throw ShapeMismatch("cannot compose: middle objects differ");
  return Morphism(compose(g.map(), f.map()), f.src_dist(), g.tgt_dist());
}

StochMap product(const StochMap& f, const StochMap& g) {
  std::size_t nx = f.src_size(), ny = g.src_size();
  std::size_t nxp = f.tgt_size(), nyp = g.tgt_size();
  std::vector<Rational> m(nxp * nyp * nx * ny);
  for (std::size_t xp = 0; xp < nxp; ++xp)
    for (std::size_t yp = 0; yp < nyp; ++yp)
      for (std::size_t x = 0; x < nx; ++x)
        for (std::size_t y = 0; y < ny; ++y)
          m[(xp * nyp + yp) * nx * ny + (x * ny + y)] = f.at(xp, x) * g.at(yp, y);
  return StochMap(product_labels(f.src(), g.src()),
                  product_labels(f.tgt(), g.tgt()), std::move(m));
}

ProbSpace pushforward(const StochMap& f, const ProbSpace& p) {
  if (p.labels() != f.src())
    throw ShapeMismatch("distribution is not over the map's source");
  std::vector<Rational> q(f.tgt_size(), Rational(0));
  for (std::size_t t = 0; t < f.tgt_size(); ++t)
    for (std::size_t s = 0; s < f.src_size(); ++s)
      q[t] += f.at(t, s) * p.prob(s);
  return ProbSpace(f.tgt(), std::move(q));
}

ProbSpace joint_distribution(const Morphism& m) {
  const StochMap& f = m.map();
  std::vector<Rational> probs(f.src_size() * f.tgt_size());
  for (std::size_t s = 0; s < f.src_size(); ++s)
    for (std::size_t t = 0; t < f.tgt_size(); ++t)
      probs[s * f.tgt_size() + t] = f.at(t, s) * m.src_dist().prob(s);
  return ProbSpace(product_labels(f.src(), f.tgt()), std::move(probs));
}

std::vector<Label> nullspace(const ProbSpace& p) {
  std::vector<Label> out;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p.prob(i) == 0) out.push_back(p.label(i));
  return out;
}

std::vector<std::size_t> nullspace_indices(const ProbSpace& p) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p.prob(i) == 0) out.push_back(i);
  return out;
}

bool is_deterministic(const StochMap& f) {
  for (std::size_t s = 0; s < f.src_size(); ++s)
    if (!f.point_mass_target(s)) return false;
  return true;
}

bool is_ae_deterministic(const StochMap& f, const ProbSpace& p) {
  if (p.labels() != f.src())
    throw ShapeMismatch("distribution is not over the map's source");
  for (std::size_t s = 0; s < f.src_size(); ++s)
    if (p.prob(s) != 0 && !f.point_mass_target(s)) return false;
  return true;
}

bool ae_equal(const StochMap& f, const StochMap& g, const ProbSpace& p) {
  if (f.src() != g.src() || f.tgt() != g.tgt())
    throw ShapeMismatch("maps have different shapes");
  if (p.labels() != f.src())
    throw ShapeMismatch("distribution is not over the maps' source");
  for (std::size_t s = 0; s < f.src_size(); ++s) {
    if (p.prob(s) == 0) continue;
    for (std::size_t t = 0; t < f.tgt_size(); ++t)
      if (f.at(t, s) != g.at(t, s)) return false;
  }
  return true;
}

bool entries_equal(const StochMap& f, const StochMap& g) {
  return f.src_size() == g.src_size() && f.tgt_size() == g.tgt_size() &&
         f.entries() == g.entries();
}

ProbSpace convex_sum_objects(const ProbSpace& p,
                             const std::vector<ProbSpace>& spaces) {
  if (spaces.size() != p.size())
    throw ShapeMismatch("need one summand per label of the weighting space");
  std::vector<Label> labels;
  std::vector<Rational> probs;
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = 0; j < spaces[i].size(); ++j) {
      labels.push_back(tagged_label(p.label(i), spaces[i].label(j)));
      probs.push_back(p.prob(i) * spaces[i].prob(j));
    }
  }
  return ProbSpace(std::move(labels), std::move(probs));
}

Morphism convex_sum_morphisms(const ProbSpace& p,
                              const std::vector<Morphism>& morphs) {
  if (morphs.size() != p.size())
    throw ShapeMismatch("need one summand per label of the weighting space");
  std::vector<ProbSpace> srcs, tgts;
  srcs.reserve(morphs.size());
  tgts.reserve(morphs.size());
  for (const Morphism& m : morphs) {
    srcs.push_back(m.src_dist());
    tgts.push_back(m.tgt_dist());
  }
  ProbSpace src = convex_sum_objects(p, srcs);
  ProbSpace tgt = convex_sum_objects(p, tgts);

  std::vector<Rational> m(src.size() * tgt.size(), Rational(0));
  std::size_t col0 = 0, row0 = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const StochMap& block = morphs[i].map();
    for (std::size_t t = 0; t < block.tgt_size(); ++t)
      for (std::size_t s = 0; s < block.src_size(); ++s)
        m[(row0 + t) * src.size() + (col0 + s)] = block.at(t, s);
    col0 += block.src_size();
    row0 += block.tgt_size();
  }
  StochMap map(src.labels(), tgt.labels(), std::move(m));
  return Morphism(std::move(map), std::move(src), std::move(tgt));
}

}  // namespace finstoch
