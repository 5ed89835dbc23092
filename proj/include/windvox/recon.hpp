#pragma once

#include "windvox/mesh.hpp"
#include "windvox/winding.hpp"

namespace windvox {

/// Extracts the iso-surface of `field` as a triangle mesh in the field's world
/// coordinates. A node is inside when its value is strictly greater than
/// `iso`; faces are oriented with normals pointing from inside to outside.
/// Vertices lie on crossing lattice edges (linear interpolation) and are
/// shared between neighbouring cells. Ambiguous cell faces are resolved with
/// the mean of their four corner values, which keeps the output crack-free.
/// A field without crossings yields an empty mesh. Requires resolution >= 2 on
/// every axis.
TriangleMesh marching_cubes(const ScalarField& field, double iso = 0.5, unsigned threads = 0);

/// Uniform (umbrella) Laplacian smoothing with Jacobi updates:
/// v <- v + lambda * (mean(1-ring) - v), `iterations` times.
TriangleMesh laplacian_smooth(const TriangleMesh& mesh, double lambda = 0.15, int iterations = 10);

}  // namespace windvox
