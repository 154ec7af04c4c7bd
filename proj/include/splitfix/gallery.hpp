#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "splitfix/fixed_point_map.hpp"

namespace splitfix {

/// A named standard instance of a gallery map, with the region its
/// properties are sampled on.
struct GalleryEntry {
  std::string id;
  FixedPointMap map;
  /// Bounding box for sampling. One-dimensional maps are sampled on a uniform
  /// grid over it, higher-dimensional ones at fixed-seed uniform points.
  ConvexSet sample_region;
};

inline constexpr std::size_t kGridPoints1d = 10000;
inline constexpr std::size_t kSamplesNd = 1000;
inline constexpr std::uint64_t kSampleSeed = 20240101;

/// Ids: example1, proj_box, proj_ball, proj_halfspace, affine.
const std::vector<std::string>& gallery_ids();

/// Throws Error on an unknown id.
GalleryEntry gallery_entry(const std::string& id);
std::vector<GalleryEntry> standard_gallery();

/// `count` equally spaced points from lo to hi, both endpoints included.
std::vector<Vector> uniform_grid_1d(double lo, double hi, std::size_t count);

/// Fixed-seed uniform points in a box-shaped region.
std::vector<Vector> uniform_samples(const ConvexSet& box, std::size_t count, std::uint64_t seed);

/// The standard sample set of an entry: a 10^4-point grid for 1-D maps and
/// 10^3 seeded points otherwise.
std::vector<Vector> standard_samples(const GalleryEntry& entry);

}  // namespace splitfix
