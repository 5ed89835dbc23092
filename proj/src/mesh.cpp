#include "windvox/mesh.hpp"

#include <algorithm>
#include <string>

#include "windvox/errors.hpp"

namespace windvox {

void TriangleMesh::validate() const {
  const auto n = vertices.size();
  for (std::size_t f = 0; f < faces.size(); ++f) {
    for (auto idx : faces[f]) {
      if (idx >= n) {
        throw IndexError("face " + std::to_string(f) + " references vertex " +
                         std::to_string(idx) + " but mesh has " + std::to_string(n) +
                         " vertices");
      }
    }
  }
}

BoundingBox bounding_box(std::span<const Vec3> points) {
  if (points.empty()) throw DegenerateError("bounding box of an empty point set");
  BoundingBox box{points.front(), points.front()};
  for (const auto& p : points) {
    box.min = cwise_min(box.min, p);
    box.max = cwise_max(box.max, p);
  }
  return box;
}

BoundingBox bounding_box(const TriangleMesh& mesh) { return bounding_box(mesh.vertices); }

NormalizedMesh normalize_to_unit_cube(const TriangleMesh& mesh) {
  const auto box = bounding_box(mesh);
  const Vec3 ext = box.extent();
  const double longest = std::max({ext.x, ext.y, ext.z});
  if (!(longest > 0.0)) throw DegenerateError("cannot normalize: all vertices coincide");

  NormalizationTransform t{box.center(), 0.5 * longest};
  return {apply_transform(mesh, t), t};
}

TriangleMesh apply_transform(const TriangleMesh& mesh, const NormalizationTransform& t) {
  TriangleMesh out;
  out.faces = mesh.faces;
  out.vertices.reserve(mesh.vertices.size());
  for (const auto& v : mesh.vertices) out.vertices.push_back(t.apply(v));
  return out;
}

Vec3 face_normal(const TriangleMesh& mesh, std::size_t face) {
  const auto& f = mesh.faces[face];
  const Vec3& a = mesh.vertices[f[0]];
  return cross(mesh.vertices[f[1]] - a, mesh.vertices[f[2]] - a);
}

double face_area(const TriangleMesh& mesh, std::size_t face) {
  return 0.5 * norm(face_normal(mesh, face));
}

double total_area(const TriangleMesh& mesh) {
  double sum = 0.0;
  for (std::size_t f = 0; f < mesh.faces.size(); ++f) sum += face_area(mesh, f);
  return sum;
}

VertexNormals vertex_normals(const TriangleMesh& mesh) {
  VertexNormals out;
  out.normals.assign(mesh.vertices.size(), Vec3{});
  // The unnormalized cross product already carries the area weight.
  for (std::size_t f = 0; f < mesh.faces.size(); ++f) {
    const Vec3 n = face_normal(mesh, f);
    for (auto idx : mesh.faces[f]) out.normals[idx] += n;
  }
  for (std::size_t v = 0; v < out.normals.size(); ++v) {
    const double len = norm(out.normals[v]);
    if (len > 0.0) {
      out.normals[v] = out.normals[v] / len;
    } else {
      out.normals[v] = Vec3{};
      out.unsupported.push_back(static_cast<std::uint32_t>(v));
    }
  }
  return out;
}

std::vector<std::vector<std::uint32_t>> vertex_neighbors(const TriangleMesh& mesh) {
  std::vector<std::vector<std::uint32_t>> adj(mesh.vertices.size());
  for (const auto& f : mesh.faces) {
    for (int k = 0; k < 3; ++k) {
      const auto a = f[k];
      const auto b = f[(k + 1) % 3];
      if (a == b) continue;
      adj[a].push_back(b);
      adj[b].push_back(a);
    }
  }
  for (auto& ring : adj) {
    std::sort(ring.begin(), ring.end());
    ring.erase(std::unique(ring.begin(), ring.end()), ring.end());
  }
  return adj;
}

TriangleMesh flipped_orientation(const TriangleMesh& mesh) {
  TriangleMesh out = mesh;
  for (auto& f : out.faces) std::swap(f[1], f[2]);
  return out;
}

}  // namespace windvox
