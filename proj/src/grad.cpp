#include "windvox/grad.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <memory>
#include <numbers>

#include "windvox/errors.hpp"
#include "windvox/parallel.hpp"

namespace windvox {
namespace {

constexpr double kInvEightPi = 1.0 / (8.0 * std::numbers::pi);

struct FacePrep {
  Vec3 normal;                // cross(v1 - v0, v2 - v0)
  Vec3 centroid;
  std::array<Vec3, 3> edge;   // opposite edges: v1 - v2, v2 - v0, v0 - v1
};

std::vector<FacePrep> prepare_faces(const TriangleMesh& mesh) {
  std::vector<FacePrep> prep;
  prep.reserve(mesh.faces.size());
  for (const auto& f : mesh.faces) {
    const Vec3& a = mesh.vertices[f[0]];
    const Vec3& b = mesh.vertices[f[1]];
    const Vec3& c = mesh.vertices[f[2]];
    prep.push_back({cross(b - a, c - a), (a + (b + c)) / 3.0, {b - c, c - a, a - b}});
  }
  return prep;
}

// Adds coef * d(W_face)/d(v_k) for k = 0..2 into acc. W_face is the face's
// dipole term <N, d> / (8 pi |d|^3) with d = centroid - q.
inline void accumulate_face_gradient(const FacePrep& fp, const Vec3& q, double coef,
                                     std::array<Vec3, 3>& acc) {
  const Vec3 d = fp.centroid - q;
  const double r2 = squared_norm(d);
  const double r = std::sqrt(r2);
  const double inv_r3 = 1.0 / (r2 * r);
  const double s = dot(fp.normal, d);
  // Shared part from the centroid moving by 1/3 of each vertex displacement.
  const Vec3 shared = (fp.normal * inv_r3 - d * (3.0 * s * inv_r3 / r2)) / 3.0;
  for (int k = 0; k < 3; ++k) {
    acc[k] += (cross(fp.edge[k], d) * inv_r3 + shared) * (coef * kInvEightPi);
  }
}

}  // namespace

VertexGradients soft_winding_vertex_jacobian(const TriangleMesh& mesh, const Vec3& q) {
  mesh.validate();
  const double tol = surface_tolerance(mesh);
  const auto prep = prepare_faces(mesh);
  VertexGradients grads(mesh.vertices.size());
  for (std::size_t f = 0; f < prep.size(); ++f) {
    if (norm(prep[f].centroid - q) <= tol) {
      throw OnSurfaceError("query point coincides with the centroid of face " + std::to_string(f));
    }
  }
  for (std::size_t f = 0; f < prep.size(); ++f) {
    std::array<Vec3, 3> acc{};
    accumulate_face_gradient(prep[f], q, 1.0, acc);
    for (int k = 0; k < 3; ++k) grads[mesh.faces[f][k]] += acc[k];
  }
  return grads;
}

OccupancyLoss occupancy_loss_grad(const TriangleMesh& mesh, const ScalarField& targets,
                                  std::optional<std::span<const double>> weights,
                                  const QueryBatchConfig& batch) {
  const auto& spec = targets.spec;
  spec.validate();
  const std::size_t n = spec.num_nodes();
  if (targets.values.size() != n) throw InvalidArgument("target field size does not match its grid");
  if (weights && weights->size() != n) throw InvalidArgument("weights must have one entry per node");
  if (mesh.faces.empty()) throw InvalidArgument("occupancy loss needs a non-empty mesh");
  mesh.validate();

  const double tol = surface_tolerance(mesh);
  const unsigned threads = resolve_thread_count(batch.thread_count);

  std::vector<Vec3> nodes(n);
  for (std::size_t i = 0; i < n; ++i) nodes[i] = spec.node(i);

  // Forward: soft winding per node.
  OccupancyLoss out;
  out.soft_values.assign(n, 0.0);
  std::vector<unsigned char> excluded(n, 0);
  std::vector<std::unique_ptr<WindingEvaluator<double>>> evaluators(threads);
  parallel_chunks(n, batch.chunk_size, threads, [&](std::size_t b, std::size_t e, unsigned w) {
    auto& eval = evaluators[w];
    if (!eval) eval = std::make_unique<WindingEvaluator<double>>(mesh, tol);
    for (std::size_t i = b; i < e; ++i) {
      const auto s = eval->soft(nodes[i]);
      out.soft_values[i] = s.value;
      excluded[i] = s.on_surface ? 1 : 0;
    }
  });

  std::vector<double> sq(n, 0.0), wt(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (excluded[i]) {
      ++out.excluded_nodes;
      continue;
    }
    const double w = weights ? (*weights)[i] : 1.0;
    const double r = out.soft_values[i] - targets.values[i];
    sq[i] = w * r * r;
    wt[i] = w;
  }
  const double wsum = pairwise_sum(wt.data(), n);
  out.grads.assign(mesh.vertices.size(), Vec3{});
  if (!(wsum > 0.0)) return out;
  out.loss = pairwise_sum(sq.data(), n) / wsum;

  // dL/dW_n; zero for excluded nodes, which therefore pass no gradient.
  std::vector<double> coef(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (!excluded[i]) coef[i] = 2.0 * wt[i] * (out.soft_values[i] - targets.values[i]) / wsum;
  }

  // Backward: each face sums its own contribution over nodes in node order,
  // then faces scatter into vertices in face order.
  const auto prep = prepare_faces(mesh);
  std::vector<std::array<Vec3, 3>> per_face(prep.size());
  const std::size_t face_chunk = std::max<std::size_t>(1, prep.size() / (8 * threads) + 1);
  parallel_chunks(prep.size(), face_chunk, threads, [&](std::size_t b, std::size_t e, unsigned) {
    for (std::size_t f = b; f < e; ++f) {
      std::array<Vec3, 3> acc{};
      for (std::size_t i = 0; i < n; ++i) {
        if (coef[i] != 0.0) accumulate_face_gradient(prep[f], nodes[i], coef[i], acc);
      }
      per_face[f] = acc;
    }
  });
  for (std::size_t f = 0; f < prep.size(); ++f) {
    for (int k = 0; k < 3; ++k) out.grads[mesh.faces[f][k]] += per_face[f][k];
  }
  return out;
}

}  // namespace windvox
