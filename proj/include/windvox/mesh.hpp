#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "windvox/vec3.hpp"

namespace windvox {

using Face = std::array<std::uint32_t, 3>;

/// Indexed triangle soup. Faces may be degenerate, duplicated or
/// non-manifold; only index validity is enforced.
struct TriangleMesh {
  std::vector<Vec3> vertices;
  std::vector<Face> faces;

  bool empty() const { return faces.empty(); }
  std::size_t num_vertices() const { return vertices.size(); }
  std::size_t num_faces() const { return faces.size(); }

  /// Throws IndexError if any face index is out of range.
  void validate() const;
};

struct BoundingBox {
  Vec3 min;
  Vec3 max;

  Vec3 extent() const { return max - min; }
  Vec3 center() const { return (min + max) * 0.5; }
  double diagonal() const { return norm(extent()); }
};

/// Throws DegenerateError for a mesh without vertices.
BoundingBox bounding_box(std::span<const Vec3> points);
BoundingBox bounding_box(const TriangleMesh& mesh);

/// Maps normalized coordinates back to model coordinates:
/// model = normalized * scale + center.
struct NormalizationTransform {
  Vec3 center{};
  double scale = 1.0;

  Vec3 apply(const Vec3& p) const { return (p - center) / scale; }
  Vec3 invert(const Vec3& p) const { return p * scale + center; }
};

struct NormalizedMesh {
  TriangleMesh mesh;
  NormalizationTransform transform;
};

/// Centers the bounding box at the origin and scales uniformly so the longest
/// axis spans exactly [-1, 1].
NormalizedMesh normalize_to_unit_cube(const TriangleMesh& mesh);

TriangleMesh apply_transform(const TriangleMesh& mesh, const NormalizationTransform& t);

/// Unnormalized face normal cross(v1 - v0, v2 - v0); its length is twice the area.
Vec3 face_normal(const TriangleMesh& mesh, std::size_t face);
double face_area(const TriangleMesh& mesh, std::size_t face);
double total_area(const TriangleMesh& mesh);

struct VertexNormals {
  std::vector<Vec3> normals;
  /// Vertices without a non-degenerate incident face; their normal is zero.
  std::vector<std::uint32_t> unsupported;
};

/// Area-weighted vertex normals.
VertexNormals vertex_normals(const TriangleMesh& mesh);

/// Sorted, deduplicated 1-ring neighbourhoods derived from face edges.
std::vector<std::vector<std::uint32_t>> vertex_neighbors(const TriangleMesh& mesh);

/// Same mesh with every face orientation reversed (v0, v2, v1).
TriangleMesh flipped_orientation(const TriangleMesh& mesh);

}  // namespace windvox
