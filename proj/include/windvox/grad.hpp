#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "windvox/mesh.hpp"
#include "windvox/winding.hpp"

namespace windvox {

/// d(scalar)/d(vertex position), one entry per mesh vertex.
using VertexGradients = std::vector<Vec3>;

/// Gradient of winding_number_soft(mesh, q) with respect to every vertex.
/// Throws OnSurfaceError if q is within the surface tolerance of a centroid.
VertexGradients soft_winding_vertex_jacobian(const TriangleMesh& mesh, const Vec3& q);

struct OccupancyLoss {
  double loss = 0.0;
  VertexGradients grads;
  /// Nodes dropped from the loss because they sit on a face centroid.
  std::size_t excluded_nodes = 0;
  /// Soft winding values at every node (kOnSurfaceValue at excluded nodes).
  std::vector<double> soft_values;
};

/// loss = sum_n w_n (W_soft(node_n) - target_n)^2 / sum_n w_n over the
/// non-excluded nodes (plain mean without weights), with its exact gradient.
/// Parallel over nodes for the forward pass and over faces for the backward
/// pass; results do not depend on the thread count.
OccupancyLoss occupancy_loss_grad(const TriangleMesh& mesh, const ScalarField& targets,
                                  std::optional<std::span<const double>> weights = std::nullopt,
                                  const QueryBatchConfig& batch = {});

}  // namespace windvox
