#pragma once

#include <cstddef>

#include "windvox/mesh.hpp"

namespace windvox::shapes {

/// Axis-aligned box, 8 vertices and 12 outward (counter-clockwise) triangles.
TriangleMesh box(const Vec3& lo, const Vec3& hi);
inline TriangleMesh cube(double lo, double hi) { return box({lo, lo, lo}, {hi, hi, hi}); }

/// Regular icosahedron with vertices on the sphere of the given radius.
TriangleMesh icosahedron(double radius = 1.0);

/// Icosahedron refined `subdivisions` times by 4-to-1 splits, vertices
/// projected to the sphere. Faces: 20 * 4^subdivisions.
TriangleMesh icosphere(int subdivisions, double radius = 1.0);

/// One 4-to-1 midpoint split of every face (no projection).
TriangleMesh subdivide(const TriangleMesh& mesh);

/// Ring torus around the z axis: 2 * major_segments * minor_segments faces.
TriangleMesh torus(double major_radius, double minor_radius, std::size_t major_segments,
                   std::size_t minor_segments);

/// Faces of an icosphere whose centroid has z > 0: an open cap.
TriangleMesh upper_hemisphere(int subdivisions, double radius = 1.0);

/// Vertex and face lists of b appended to a (indices offset).
TriangleMesh merge(const TriangleMesh& a, const TriangleMesh& b);

}  // namespace windvox::shapes
