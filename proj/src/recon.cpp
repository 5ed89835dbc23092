#include "windvox/recon.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <vector>

#include "windvox/errors.hpp"
#include "windvox/parallel.hpp"

namespace windvox {
namespace {

// Cube corners: bit 0 = +x, bit 1 = +y, bit 2 = +z after the usual
// 0..7 numbering (0,0,0) (1,0,0) (1,1,0) (0,1,0) (0,0,1) (1,0,1) (1,1,1) (0,1,1).
constexpr std::array<std::array<int, 3>, 8> kCorner = {{
    {0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}, {0, 0, 1}, {1, 0, 1}, {1, 1, 1}, {0, 1, 1},
}};

// Cell faces, corners counter-clockwise seen from outside the cell.
constexpr std::array<std::array<int, 4>, 6> kFace = {{
    {0, 3, 2, 1},  // z = 0
    {4, 5, 6, 7},  // z = 1
    {0, 1, 5, 4},  // y = 0
    {3, 7, 6, 2},  // y = 1
    {0, 4, 7, 3},  // x = 0
    {1, 2, 6, 5},  // x = 1
}};

constexpr std::array<std::array<int, 2>, 12> kEdge = {{
    {0, 1}, {1, 2}, {2, 3}, {3, 0}, {4, 5}, {5, 6}, {6, 7}, {7, 4}, {0, 4}, {1, 5}, {2, 6}, {3, 7},
}};

constexpr auto kEdgeOf = [] {
  std::array<std::array<int, 8>, 8> t{};
  for (auto& row : t) row.fill(-1);
  for (int e = 0; e < 12; ++e) {
    t[kEdge[e][0]][kEdge[e][1]] = e;
    t[kEdge[e][1]][kEdge[e][0]] = e;
  }
  return t;
}();

// Bitmask of the two cell faces each edge lies on.
constexpr auto kEdgeFaces = [] {
  std::array<unsigned, 12> t{};
  for (int f = 0; f < 6; ++f) {
    for (int k = 0; k < 4; ++k) t[kEdgeOf[kFace[f][k]][kFace[f][(k + 1) % 4]]] |= 1u << f;
  }
  return t;
}();

constexpr std::uint32_t kLocalVertex = 0x80000000u;

struct Lattice {
  std::array<std::size_t, 3> res;
  std::size_t stride[3];

  explicit Lattice(const GridSpec& s) : res(s.resolution) {
    stride[0] = res[1] * res[2];
    stride[1] = res[2];
    stride[2] = 1;
  }
};

}  // namespace

TriangleMesh marching_cubes(const ScalarField& field, double iso, unsigned threads) {
  const auto& spec = field.spec;
  spec.validate();
  for (auto r : spec.resolution) {
    if (r < 2) throw InvalidArgument("marching cubes needs resolution >= 2 on every axis");
  }
  if (field.values.size() != spec.num_nodes()) throw InvalidArgument("field size does not match its grid");

  const Lattice lat(spec);
  const std::size_t n = spec.num_nodes();
  const auto& val = field.values;
  auto inside = [&](std::size_t node) { return val[node] > iso; };
  threads = resolve_thread_count(threads);
  constexpr std::size_t kChunk = 1 << 15;
  const std::size_t num_chunks = (n + kChunk - 1) / kChunk;

  // Crossing lattice edges, id = 3 * lower node + axis, ascending.
  std::vector<std::vector<std::uint64_t>> chunk_edges(num_chunks);
  parallel_chunks(n, kChunk, threads, [&](std::size_t b, std::size_t e, unsigned) {
    auto& out = chunk_edges[b / kChunk];
    for (std::size_t node = b; node < e; ++node) {
      const auto ijk = spec.unflatten(node);
      for (int axis = 0; axis < 3; ++axis) {
        if (ijk[axis] + 1 >= lat.res[axis]) continue;
        if (inside(node) != inside(node + lat.stride[axis])) out.push_back(3 * node + axis);
      }
    }
  });
  std::vector<std::uint64_t> edges;
  for (auto& c : chunk_edges) edges.insert(edges.end(), c.begin(), c.end());
  chunk_edges.clear();

  TriangleMesh mesh;
  if (edges.empty()) return mesh;
  mesh.vertices.resize(edges.size());
  parallel_chunks(edges.size(), kChunk, threads, [&](std::size_t b, std::size_t e, unsigned) {
    for (std::size_t v = b; v < e; ++v) {
      const std::size_t lo = edges[v] / 3;
      const int axis = static_cast<int>(edges[v] % 3);
      const std::size_t hi = lo + lat.stride[axis];
      const Vec3 p0 = spec.node(lo);
      const Vec3 p1 = spec.node(hi);
      const double t = (iso - val[lo]) / (val[hi] - val[lo]);
      mesh.vertices[v] = p0 + (p1 - p0) * t;
    }
  });
  auto vertex_of = [&](std::uint64_t edge_id) {
    auto it = std::lower_bound(edges.begin(), edges.end(), edge_id);
    return static_cast<std::uint32_t>(it - edges.begin());
  };

  // Loops that cannot be fanned without a diagonal across a cell face get a
  // cell-local centre vertex; those are numbered per chunk and remapped below.
  std::vector<std::vector<Face>> chunk_faces(num_chunks);
  std::vector<std::vector<Vec3>> chunk_centres(num_chunks);
  parallel_chunks(n, kChunk, threads, [&](std::size_t b, std::size_t e, unsigned) {
    auto& out = chunk_faces[b / kChunk];
    auto& centres = chunk_centres[b / kChunk];
    std::array<std::size_t, 8> corner_node{};
    std::array<std::uint64_t, 12> edge_id{};
    std::array<int, 12> next{};
    std::array<bool, 12> seen{};
    std::array<int, 12> order{};
    std::array<int, 12> loop{};
    for (std::size_t node = b; node < e; ++node) {
      const auto ijk = spec.unflatten(node);
      if (ijk[0] + 1 >= lat.res[0] || ijk[1] + 1 >= lat.res[1] || ijk[2] + 1 >= lat.res[2]) continue;

      unsigned mask = 0;
      for (int c = 0; c < 8; ++c) {
        corner_node[c] = node + kCorner[c][0] * lat.stride[0] + kCorner[c][1] * lat.stride[1] +
                         kCorner[c][2] * lat.stride[2];
        if (inside(corner_node[c])) mask |= 1u << c;
      }
      if (mask == 0 || mask == 0xFF) continue;

      next.fill(-1);
      int num_crossings = 0;
      for (int ed = 0; ed < 12; ++ed) {
        const int a = kEdge[ed][0];
        const int c = kEdge[ed][1];
        if (((mask >> a) & 1u) == ((mask >> c) & 1u)) continue;
        const std::size_t lo = std::min(corner_node[a], corner_node[c]);
        const std::size_t hi = std::max(corner_node[a], corner_node[c]);
        const int axis = hi - lo == lat.stride[0] ? 0 : (hi - lo == lat.stride[1] ? 1 : 2);
        edge_id[ed] = 3 * lo + axis;
        order[num_crossings++] = ed;
      }

      for (const auto& face : kFace) {
        // Crossings in counter-clockwise order; enter = outside -> inside.
        int xs[4];
        bool enter[4];
        int m = 0;
        for (int t = 0; t < 4; ++t) {
          const int a = face[t];
          const int c = face[(t + 1) % 4];
          const bool ia = (mask >> a) & 1u;
          const bool ic = (mask >> c) & 1u;
          if (ia == ic) continue;
          xs[m] = kEdgeOf[a][c];
          enter[m] = ic;
          ++m;
        }
        if (m == 2) {
          // Segments always run from the exit crossing to the enter crossing.
          if (enter[0]) {
            next[xs[1]] = xs[0];
          } else {
            next[xs[0]] = xs[1];
          }
        } else if (m == 4) {
          // Ambiguous face: join the two inside corners through the face
          // centre if the corner mean is above iso. Corners are summed in
          // global node order so both cells sharing the face agree.
          std::array<std::size_t, 4> nodes{corner_node[face[0]], corner_node[face[1]],
                                           corner_node[face[2]], corner_node[face[3]]};
          std::sort(nodes.begin(), nodes.end());
          const double mean = (val[nodes[0]] + val[nodes[1]] + val[nodes[2]] + val[nodes[3]]) / 4.0;
          const bool join_inside = mean > iso;
          for (int t = 0; t < 4; ++t) {
            const int u = (t + 1) % 4;
            if (join_inside) {
              // Cut off outside corners: exit at t, enter at t + 1.
              if (!enter[t]) next[xs[t]] = xs[u];
            } else {
              // Cut off inside corners: enter at t, exit at t + 1.
              if (enter[t]) next[xs[u]] = xs[t];
            }
          }
        }
      }

      // Chain segments into loops, starting each loop at its smallest edge id.
      std::sort(order.begin(), order.begin() + num_crossings,
                [&](int l, int r) { return edge_id[l] < edge_id[r]; });
      seen.fill(false);
      for (int oi = 0; oi < num_crossings; ++oi) {
        const int start = order[oi];
        if (seen[start]) continue;
        int len = 0;
        for (int cur = start; cur >= 0 && !seen[cur]; cur = next[cur]) {
          seen[cur] = true;
          loop[len++] = cur;
        }
        // A diagonal joining two crossings on one face could also be used by
        // the neighbouring cell, giving an edge with four triangles.
        // Apex choice depends only on the vertex set, so a reversed loop
        // gives the same triangles.
        int fan = -1;
        for (int s0 = 0; s0 < len; ++s0) {
          bool ok = true;
          for (int t = 2; t + 1 < len && ok; ++t) ok = (kEdgeFaces[loop[s0]] & kEdgeFaces[loop[(s0 + t) % len]]) == 0;
          if (ok && (fan < 0 || edge_id[loop[s0]] < edge_id[loop[fan]])) fan = s0;
        }
        auto vid = [&](int t) { return vertex_of(edge_id[loop[t % len]]); };
        if (fan >= 0) {
          for (int t = 1; t + 1 < len; ++t) out.push_back({vid(fan), vid(fan + t + 1), vid(fan + t)});
        } else {
          std::array<std::uint32_t, 12> ids{};
          for (int t = 0; t < len; ++t) ids[t] = vid(t);
          std::sort(ids.begin(), ids.begin() + len);
          Vec3 c;
          for (int t = 0; t < len; ++t) c += mesh.vertices[ids[t]];
          const auto local = kLocalVertex | static_cast<std::uint32_t>(centres.size());
          centres.push_back(c / static_cast<double>(len));
          for (int t = 0; t < len; ++t) out.push_back({local, vid(t + 1), vid(t)});
        }
      }
    }
  });
  for (std::size_t c = 0; c < num_chunks; ++c) {
    const auto base = static_cast<std::uint32_t>(mesh.vertices.size());
    mesh.vertices.insert(mesh.vertices.end(), chunk_centres[c].begin(), chunk_centres[c].end());
    for (auto f : chunk_faces[c]) {
      for (auto& v : f) {
        if (v & kLocalVertex) v = base + (v & ~kLocalVertex);
      }
      mesh.faces.push_back(f);
    }
  }
  return mesh;
}

TriangleMesh laplacian_smooth(const TriangleMesh& mesh, double lambda, int iterations) {
  mesh.validate();
  TriangleMesh out = mesh;
  if (iterations <= 0 || lambda == 0.0) return out;
  const auto rings = vertex_neighbors(mesh);
  std::vector<Vec3> prev;
  for (int it = 0; it < iterations; ++it) {
    prev = out.vertices;
    for (std::size_t v = 0; v < prev.size(); ++v) {
      const auto& ring = rings[v];
      if (ring.empty()) continue;
      Vec3 mean;
      for (auto u : ring) mean += prev[u];
      mean = mean / static_cast<double>(ring.size());
      out.vertices[v] = prev[v] + (mean - prev[v]) * lambda;
    }
  }
  return out;
}

}  // namespace windvox
