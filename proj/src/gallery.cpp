#include "splitfix/gallery.hpp"

#include "splitfix/error.hpp"
#include "splitfix/random.hpp"

namespace splitfix {

const std::vector<std::string>& gallery_ids() {
  static const std::vector<std::string> ids{"example1", "proj_box", "proj_ball", "proj_halfspace", "affine"};
  return ids;
}

GalleryEntry gallery_entry(const std::string& id) {
  if (id == "example1") return {id, example1_map(), ConvexSet::box(Vector{0.0}, Vector{1.0})};
  if (id == "proj_box")
    return {id, projection_as_map(ConvexSet::box(Vector(3, 0.0), Vector(3, 1.0))),
            ConvexSet::box(Vector(3, -2.0), Vector(3, 3.0))};
  if (id == "proj_ball")
    return {id, projection_as_map(ConvexSet::ball(Vector(2, 0.0), 1.0)), ConvexSet::box(Vector(2, -3.0), Vector(2, 3.0))};
  if (id == "proj_halfspace")
    return {id, projection_as_map(ConvexSet::halfspace(Vector{1.0, 1.0}, 1.0)),
            ConvexSet::box(Vector(2, -3.0), Vector(2, 3.0))};
  if (id == "affine") {
    // -2 scaling about a center: demicontractive with beta = (2-1)/(2+1).
    Matrix m(2, 2);
    m(0, 0) = m(1, 1) = -2.0;
    return {id, affine_map(m, Vector{0.5, -0.25}, 1.0 / 3.0), ConvexSet::box(Vector(2, -3.0), Vector(2, 3.0))};
  }
  throw Error("unknown gallery map '" + id + "'");
}

std::vector<GalleryEntry> standard_gallery() {
  std::vector<GalleryEntry> out;
  for (const auto& id : gallery_ids()) out.push_back(gallery_entry(id));
  return out;
}

std::vector<Vector> uniform_grid_1d(double lo, double hi, std::size_t count) {
  if (count < 2) throw ParameterError("grid needs at least two points");
  std::vector<Vector> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double w = static_cast<double>(i) / static_cast<double>(count - 1);
    out.push_back(Vector{i + 1 == count ? hi : (1.0 - w) * lo + w * hi});
  }
  return out;
}

std::vector<Vector> uniform_samples(const ConvexSet& box, std::size_t count, std::uint64_t seed) {
  const auto* b = std::get_if<ConvexSet::Box>(&box.variant());
  if (!b) throw ParameterError("sampling region must be a box, got " + box.describe());
  Rng rng(seed);
  std::vector<Vector> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    Vector v(b->lower.dim());
    for (std::size_t i = 0; i < v.dim(); ++i) v[i] = rng.uniform(b->lower[i], b->upper[i]);
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<Vector> standard_samples(const GalleryEntry& entry) {
  if (entry.map.dim() == 1) {
    const auto& b = std::get<ConvexSet::Box>(entry.sample_region.variant());
    return uniform_grid_1d(b.lower[0], b.upper[0], kGridPoints1d);
  }
  return uniform_samples(entry.sample_region, kSamplesNd, kSampleSeed);
}

}  // namespace splitfix
