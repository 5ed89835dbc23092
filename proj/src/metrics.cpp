#include "windvox/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <tuple>

#include "windvox/errors.hpp"
#include "windvox/parallel.hpp"
#include "windvox/winding.hpp"

namespace windvox {

std::vector<Vec3> sample_surface(const TriangleMesh& mesh, std::size_t n, std::uint64_t seed) {
  std::vector<Vec3> out;
  if (n == 0) return out;
  mesh.validate();

  std::vector<double> cdf(mesh.faces.size());
  double acc = 0.0;
  for (std::size_t f = 0; f < mesh.faces.size(); ++f) {
    acc += face_area(mesh, f);
    cdf[f] = acc;
  }
  if (!(acc > 0.0)) throw DegenerateError("cannot sample a surface with zero total area");

  SplitMix64 rng(seed);
  out.reserve(n);
  for (std::size_t s = 0; s < n; ++s) {
    const double pick = rng.uniform() * acc;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), pick);
    if (it == cdf.end()) --it;
    const auto& f = mesh.faces[static_cast<std::size_t>(it - cdf.begin())];
    double u = rng.uniform();
    double v = rng.uniform();
    if (u + v > 1.0) {
      u = 1.0 - u;
      v = 1.0 - v;
    }
    const Vec3& a = mesh.vertices[f[0]];
    out.push_back(a + (mesh.vertices[f[1]] - a) * u + (mesh.vertices[f[2]] - a) * v);
  }
  return out;
}

namespace {
constexpr std::uint32_t kLeafSize = 8;

inline double distance(const Vec3& a, const Vec3& b) { return norm(a - b); }
}  // namespace

PointIndex::PointIndex(std::span<const Vec3> points) : points_(points.begin(), points.end()) {
  if (!points_.empty()) build(0, static_cast<std::uint32_t>(points_.size()));
}

std::int32_t PointIndex::build(std::uint32_t begin, std::uint32_t end) {
  const auto id = static_cast<std::int32_t>(nodes_.size());
  nodes_.push_back({begin, end});
  if (end - begin <= kLeafSize) return id;

  const auto box = bounding_box(std::span<const Vec3>(points_.data() + begin, end - begin));
  const Vec3 ext = box.extent();
  int axis = 0;
  if (ext.y > ext[axis]) axis = 1;
  if (ext.z > ext[axis]) axis = 2;

  const std::uint32_t mid = begin + (end - begin) / 2;
  std::nth_element(points_.begin() + begin, points_.begin() + mid, points_.begin() + end,
                   [axis](const Vec3& l, const Vec3& r) { return l[axis] < r[axis]; });
  nodes_[id].axis = axis;
  nodes_[id].split = points_[mid][axis];
  // Left holds coordinates <= split, right holds >= split.
  const auto left = build(begin, mid);
  const auto right = build(mid, end);
  nodes_[id].left = left;
  nodes_[id].right = right;
  return id;
}

double PointIndex::nearest_distance(const Vec3& q) const {
  if (points_.empty()) throw InvalidArgument("nearest neighbour query on an empty point set");
  // Search on squared distances; prune a subtree only when the splitting
  // plane is strictly farther than the best candidate.
  double best = INFINITY;
  std::int32_t stack[128];
  double stack_bound[128];
  int top = 0;
  stack[top] = 0;
  stack_bound[top++] = 0.0;
  while (top > 0) {
    --top;
    const auto id = stack[top];
    if (stack_bound[top] > best) continue;
    const Node& node = nodes_[id];
    if (node.left < 0) {
      for (std::uint32_t i = node.begin; i < node.end; ++i) {
        best = std::min(best, squared_norm(points_[i] - q));
      }
      continue;
    }
    const double diff = q[node.axis] - node.split;
    const double bound = diff * diff;
    const auto near = diff <= 0.0 ? node.left : node.right;
    const auto far = diff <= 0.0 ? node.right : node.left;
    stack[top] = far;
    stack_bound[top++] = bound;
    stack[top] = near;
    stack_bound[top++] = 0.0;
  }
  return std::sqrt(best);
}

std::vector<double> nearest_distances(std::span<const Vec3> from, std::span<const Vec3> to,
                                      unsigned threads) {
  const PointIndex index(to);
  std::vector<double> d(from.size());
  parallel_chunks(from.size(), 1024, threads, [&](std::size_t b, std::size_t e, unsigned) {
    for (std::size_t i = b; i < e; ++i) d[i] = index.nearest_distance(from[i]);
  });
  return d;
}

double chamfer_distance(std::span<const Vec3> a, std::span<const Vec3> b, unsigned threads) {
  if (a.empty() || b.empty()) throw InvalidArgument("chamfer distance needs non-empty point sets");
  const auto dab = nearest_distances(a, b, threads);
  const auto dba = nearest_distances(b, a, threads);
  const double mab = pairwise_sum(dab.data(), dab.size()) / static_cast<double>(dab.size());
  const double mba = pairwise_sum(dba.data(), dba.size()) / static_cast<double>(dba.size());
  return 0.5 * (mab + mba);
}

double hausdorff_distance(std::span<const Vec3> a, std::span<const Vec3> b, unsigned threads) {
  if (a.empty() || b.empty()) throw InvalidArgument("hausdorff distance needs non-empty point sets");
  const auto dab = nearest_distances(a, b, threads);
  const auto dba = nearest_distances(b, a, threads);
  return std::max(*std::max_element(dab.begin(), dab.end()), *std::max_element(dba.begin(), dba.end()));
}

namespace {
std::pair<double, double> mean_std(const std::vector<double>& xs) {
  const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
  double var = 0.0;
  for (double x : xs) var += (x - mean) * (x - mean);
  return {mean, std::sqrt(var / static_cast<double>(xs.size()))};
}
}  // namespace

ReconstructionReport evaluate_reconstruction(const TriangleMesh& original,
                                             const TriangleMesh& reconstructed, std::size_t samples,
                                             int repeats, std::uint64_t seed, unsigned threads) {
  if (repeats < 1) throw InvalidArgument("repeats must be >= 1");
  if (samples < 1) throw InvalidArgument("samples must be >= 1");
  ReconstructionReport rep;
  SplitMix64 seeds(seed);
  for (int r = 0; r < repeats; ++r) {
    const auto pa = sample_surface(original, samples, seeds.next());
    const auto pb = sample_surface(reconstructed, samples, seeds.next());
    const auto dab = nearest_distances(pa, pb, threads);
    const auto dba = nearest_distances(pb, pa, threads);
    const double mab = pairwise_sum(dab.data(), dab.size()) / static_cast<double>(dab.size());
    const double mba = pairwise_sum(dba.data(), dba.size()) / static_cast<double>(dba.size());
    rep.chamfer.push_back(0.5 * (mab + mba));
    rep.hausdorff.push_back(std::max(*std::max_element(dab.begin(), dab.end()),
                                     *std::max_element(dba.begin(), dba.end())));
  }
  std::tie(rep.chamfer_mean, rep.chamfer_std) = mean_std(rep.chamfer);
  std::tie(rep.hausdorff_mean, rep.hausdorff_std) = mean_std(rep.hausdorff);
  return rep;
}

}  // namespace windvox
