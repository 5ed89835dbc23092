#include "windvox/shapes.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <utility>

namespace windvox::shapes {

TriangleMesh box(const Vec3& lo, const Vec3& hi) {
  TriangleMesh m;
  for (int c = 0; c < 8; ++c) {
    m.vertices.push_back({(c & 1) ? hi.x : lo.x, (c & 2) ? hi.y : lo.y, (c & 4) ? hi.z : lo.z});
  }
  // Corner index bits: 1 = +x, 2 = +y, 4 = +z.
  m.faces = {
      {0, 2, 1}, {1, 2, 3},  // z = lo
      {4, 5, 6}, {5, 7, 6},  // z = hi
      {0, 1, 4}, {1, 5, 4},  // y = lo
      {2, 6, 3}, {3, 6, 7},  // y = hi
      {0, 4, 2}, {2, 4, 6},  // x = lo
      {1, 3, 5}, {3, 7, 5},  // x = hi
  };
  return m;
}

TriangleMesh icosahedron(double radius) {
  const double t = (1.0 + std::sqrt(5.0)) / 2.0;
  TriangleMesh m;
  m.vertices = {{-1, t, 0}, {1, t, 0},  {-1, -t, 0}, {1, -t, 0}, {0, -1, t},  {0, 1, t},
                {0, -1, -t}, {0, 1, -t}, {t, 0, -1},  {t, 0, 1},  {-t, 0, -1}, {-t, 0, 1}};
  for (auto& v : m.vertices) v = normalized(v) * radius;
  m.faces = {{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11}, {1, 5, 9}, {5, 11, 4},
             {11, 10, 2}, {10, 7, 6}, {7, 1, 8},   {3, 9, 4},  {3, 4, 2},   {3, 2, 6}, {3, 6, 8},
             {3, 8, 9},  {4, 9, 5},  {2, 4, 11},  {6, 2, 10}, {8, 6, 7},   {9, 8, 1}};
  return m;
}

TriangleMesh subdivide(const TriangleMesh& mesh) {
  TriangleMesh out;
  out.vertices = mesh.vertices;
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> midpoint;
  auto mid = [&](std::uint32_t a, std::uint32_t b) {
    const auto key = std::minmax(a, b);
    auto [it, inserted] = midpoint.try_emplace(key, static_cast<std::uint32_t>(out.vertices.size()));
    if (inserted) out.vertices.push_back((mesh.vertices[a] + mesh.vertices[b]) * 0.5);
    return it->second;
  };
  out.faces.reserve(4 * mesh.faces.size());
  for (const auto& f : mesh.faces) {
    const auto ab = mid(f[0], f[1]);
    const auto bc = mid(f[1], f[2]);
    const auto ca = mid(f[2], f[0]);
    out.faces.push_back({f[0], ab, ca});
    out.faces.push_back({f[1], bc, ab});
    out.faces.push_back({f[2], ca, bc});
    out.faces.push_back({ab, bc, ca});
  }
  return out;
}

TriangleMesh icosphere(int subdivisions, double radius) {
  TriangleMesh m = icosahedron(1.0);
  for (int s = 0; s < subdivisions; ++s) {
    m = subdivide(m);
    for (auto& v : m.vertices) v = normalized(v);
  }
  for (auto& v : m.vertices) v = v * radius;
  return m;
}

TriangleMesh torus(double major_radius, double minor_radius, std::size_t major_segments,
                   std::size_t minor_segments) {
  TriangleMesh m;
  const double two_pi = 2.0 * std::numbers::pi;
  for (std::size_t i = 0; i < major_segments; ++i) {
    const double u = two_pi * static_cast<double>(i) / static_cast<double>(major_segments);
    for (std::size_t j = 0; j < minor_segments; ++j) {
      const double v = two_pi * static_cast<double>(j) / static_cast<double>(minor_segments);
      const double r = major_radius + minor_radius * std::cos(v);
      m.vertices.push_back({r * std::cos(u), r * std::sin(u), minor_radius * std::sin(v)});
    }
  }
  auto id = [&](std::size_t i, std::size_t j) {
    return static_cast<std::uint32_t>((i % major_segments) * minor_segments + (j % minor_segments));
  };
  for (std::size_t i = 0; i < major_segments; ++i) {
    for (std::size_t j = 0; j < minor_segments; ++j) {
      const auto a = id(i, j), b = id(i + 1, j), c = id(i + 1, j + 1), d = id(i, j + 1);
      m.faces.push_back({a, b, c});
      m.faces.push_back({a, c, d});
    }
  }
  return m;
}

TriangleMesh upper_hemisphere(int subdivisions, double radius) {
  const TriangleMesh sphere = icosphere(subdivisions, radius);
  TriangleMesh cap;
  std::map<std::uint32_t, std::uint32_t> remap;
  auto keep = [&](std::uint32_t v) {
    auto [it, inserted] = remap.try_emplace(v, static_cast<std::uint32_t>(cap.vertices.size()));
    if (inserted) cap.vertices.push_back(sphere.vertices[v]);
    return it->second;
  };
  for (const auto& f : sphere.faces) {
    const double cz = (sphere.vertices[f[0]].z + sphere.vertices[f[1]].z + sphere.vertices[f[2]].z) / 3.0;
    if (cz > 0.0) cap.faces.push_back({keep(f[0]), keep(f[1]), keep(f[2])});
  }
  return cap;
}

TriangleMesh merge(const TriangleMesh& a, const TriangleMesh& b) {
  TriangleMesh out = a;
  const auto off = static_cast<std::uint32_t>(a.vertices.size());
  out.vertices.insert(out.vertices.end(), b.vertices.begin(), b.vertices.end());
  for (const auto& f : b.faces) out.faces.push_back({f[0] + off, f[1] + off, f[2] + off});
  return out;
}

}  // namespace windvox::shapes
