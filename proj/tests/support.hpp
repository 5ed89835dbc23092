#pragma once

#include <cmath>
#include <numbers>

#include "windvox/mesh.hpp"
#include "windvox/metrics.hpp"

namespace testing {

using windvox::TriangleMesh;
using windvox::Vec3;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  double uniform(double lo = 0.0, double hi = 1.0) { return lo + (hi - lo) * gen_.uniform(); }
  Vec3 in_box(double lo, double hi) { return {uniform(lo, hi), uniform(lo, hi), uniform(lo, hi)}; }
  Vec3 unit_vector() {
    const double z = uniform(-1.0, 1.0);
    const double phi = uniform(0.0, 2.0 * std::numbers::pi);
    const double r = std::sqrt(1.0 - z * z);
    return {r * std::cos(phi), r * std::sin(phi), z};
  }
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(gen_.next() % n); }

 private:
  windvox::SplitMix64 gen_;
};

/// Rotation matrix stored row-major.
struct Rotation {
  Vec3 r0, r1, r2;
  Vec3 operator()(const Vec3& p) const { return {dot(r0, p), dot(r1, p), dot(r2, p)}; }
};

inline Rotation axis_angle(const Vec3& axis, double angle) {
  const Vec3 u = windvox::normalized(axis);
  const double c = std::cos(angle), s = std::sin(angle), t = 1.0 - c;
  return {{t * u.x * u.x + c, t * u.x * u.y - s * u.z, t * u.x * u.z + s * u.y},
          {t * u.x * u.y + s * u.z, t * u.y * u.y + c, t * u.y * u.z - s * u.x},
          {t * u.x * u.z - s * u.y, t * u.y * u.z + s * u.x, t * u.z * u.z + c}};
}

template <typename F>
TriangleMesh map_vertices(TriangleMesh m, F f) {
  for (auto& v : m.vertices) v = f(v);
  return m;
}

inline double max_abs_diff(const std::vector<Vec3>& a, const std::vector<Vec3>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (int k = 0; k < 3; ++k) m = std::max(m, std::abs(a[i][k] - b[i][k]));
  }
  return m;
}

inline double max_abs(const std::vector<Vec3>& a) {
  double m = 0.0;
  for (const auto& v : a) m = std::max({m, std::abs(v.x), std::abs(v.y), std::abs(v.z)});
  return m;
}

/// Central differences of f with respect to every vertex coordinate.
template <typename F>
std::vector<Vec3> finite_difference(const TriangleMesh& mesh, F f, double h = 1e-6) {
  std::vector<Vec3> g(mesh.vertices.size());
  TriangleMesh m = mesh;
  for (std::size_t v = 0; v < m.vertices.size(); ++v) {
    for (int k = 0; k < 3; ++k) {
      const double x = m.vertices[v][k];
      m.vertices[v][k] = x + h;
      const double fp = f(m);
      m.vertices[v][k] = x - h;
      const double fm = f(m);
      m.vertices[v][k] = x;
      g[v][k] = (fp - fm) / (2.0 * h);
    }
  }
  return g;
}

}  // namespace testing
