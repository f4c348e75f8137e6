#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace femtonet {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

struct Segment {
  Point a;
  Point b;
};

inline double distance(Point p, Point q) { return std::hypot(p.x - q.x, p.y - q.y); }

/// True when the two closed segments share at least one point.
bool segments_intersect(const Segment& s, const Segment& t);

/// Uniform point in the disk (area-uniform, not radius-uniform).
Point uniform_in_disk(std::mt19937_64& rng, Point center, double radius);

/// SplitMix64 finalizer; derives independent RNG seeds from (seed, stream).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace femtonet
