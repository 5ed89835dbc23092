#pragma once

#include <cstdint>
#include <vector>

#include "windvox/mesh.hpp"

namespace windvox {

struct FlippedDuplication {
  TriangleMesh mesh;
  /// Vertices whose normal was zero; their copies coincide with the original.
  std::vector<std::uint32_t> unmoved;
};

/// Turns an open surface into an almost-closed thin shell: appends a copy of
/// every vertex pushed by -epsilon along its vertex normal, and a copy of every
/// face on the new vertices with reversed orientation (v0', v2', v1'). The
/// original vertices and faces come first and are unchanged.
/// Throws DegenerateError if no vertex has a usable normal.
FlippedDuplication flipped_duplication(const TriangleMesh& mesh, double epsilon = 0.01);

}  // namespace windvox
