#include "windvox/openmesh.hpp"

#include "windvox/errors.hpp"

namespace windvox {

FlippedDuplication flipped_duplication(const TriangleMesh& mesh, double epsilon) {
  if (!(epsilon > 0.0)) throw InvalidArgument("flipped duplication needs epsilon > 0");
  mesh.validate();
  auto normals = vertex_normals(mesh);
  if (mesh.vertices.empty() || normals.unsupported.size() == mesh.vertices.size()) {
    throw DegenerateError("flipped duplication: no vertex has a usable normal");
  }

  const auto n = static_cast<std::uint32_t>(mesh.vertices.size());
  FlippedDuplication out;
  out.unmoved = std::move(normals.unsupported);
  out.mesh.vertices = mesh.vertices;
  out.mesh.vertices.reserve(2 * mesh.vertices.size());
  for (std::size_t v = 0; v < mesh.vertices.size(); ++v) {
    out.mesh.vertices.push_back(mesh.vertices[v] - epsilon * normals.normals[v]);
  }
  out.mesh.faces = mesh.faces;
  out.mesh.faces.reserve(2 * mesh.faces.size());
  for (const auto& f : mesh.faces) {
    out.mesh.faces.push_back({f[0] + n, f[2] + n, f[1] + n});
  }
  return out;
}

}  // namespace windvox
