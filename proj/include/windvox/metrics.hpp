#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "windvox/mesh.hpp"

namespace windvox {

/// SplitMix64 (Steele, Lea, Flood 2014). Reports are reproducible bit-for-bit
/// from the seed.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

/// n points on the surface: faces picked with probability proportional to
/// area, barycentric coordinates from (u, v) ~ U(0,1)^2 folded into u + v <= 1.
/// Throws DegenerateError when the total area is zero (unless n == 0).
std::vector<Vec3> sample_surface(const TriangleMesh& mesh, std::size_t n, std::uint64_t seed);

/// Static kd-tree over a point set for exact nearest-neighbour distances.
class PointIndex {
 public:
  explicit PointIndex(std::span<const Vec3> points);

  /// Euclidean distance to the nearest indexed point; bit-identical to a brute
  /// force scan with the same distance expression.
  double nearest_distance(const Vec3& q) const;

  std::size_t size() const { return points_.size(); }

 private:
  struct Node {
    std::uint32_t begin, end;  // range in points_
    std::int32_t left = -1, right = -1;
    int axis = 0;
    double split = 0.0;
  };
  std::int32_t build(std::uint32_t begin, std::uint32_t end);

  std::vector<Vec3> points_;
  std::vector<Node> nodes_;
};

/// Nearest-neighbour distance from every point of `from` to the set `to`.
std::vector<double> nearest_distances(std::span<const Vec3> from, std::span<const Vec3> to,
                                      unsigned threads = 0);

/// 0.5 * (mean_a d(a, B) + mean_b d(b, A)) with unsquared Euclidean distances.
/// Throws InvalidArgument if either set is empty.
double chamfer_distance(std::span<const Vec3> a, std::span<const Vec3> b, unsigned threads = 0);

/// max(max_a d(a, B), max_b d(b, A)).
double hausdorff_distance(std::span<const Vec3> a, std::span<const Vec3> b, unsigned threads = 0);

struct ReconstructionReport {
  double chamfer_mean = 0.0;
  double chamfer_std = 0.0;
  double hausdorff_mean = 0.0;
  double hausdorff_std = 0.0;
  std::vector<double> chamfer;    // per repeat
  std::vector<double> hausdorff;  // per repeat
};

/// Samples both meshes `repeats` times with independent seeds derived from
/// `seed` and reports mean and population standard deviation of both
/// distances.
ReconstructionReport evaluate_reconstruction(const TriangleMesh& original,
                                             const TriangleMesh& reconstructed,
                                             std::size_t samples = 20000, int repeats = 3,
                                             std::uint64_t seed = 0, unsigned threads = 0);

}  // namespace windvox
