#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <numbers>
#include <vector>

#include "windvox/mesh.hpp"
#include "windvox/vec3.hpp"

namespace windvox {

/// Axis-aligned lattice of sample nodes. Node (i, j, k) sits at
/// min + (max - min) * (i / (Rx - 1), j / (Ry - 1), k / (Rz - 1)), i.e. the
/// lattice includes both bounds; an axis with resolution 1 samples its midpoint.
struct GridSpec {
  Vec3 bounds_min{-1.0, -1.0, -1.0};
  Vec3 bounds_max{1.0, 1.0, 1.0};
  std::array<std::size_t, 3> resolution{1, 1, 1};

  static GridSpec cube(double lo, double hi, std::size_t r) {
    return {{lo, lo, lo}, {hi, hi, hi}, {r, r, r}};
  }

  /// Throws InvalidArgument unless min < max componentwise and every resolution >= 1.
  void validate() const;

  std::size_t num_nodes() const { return resolution[0] * resolution[1] * resolution[2]; }

  /// z varies fastest, then y, then x.
  std::size_t flat_index(std::size_t i, std::size_t j, std::size_t k) const {
    return (i * resolution[1] + j) * resolution[2] + k;
  }
  std::array<std::size_t, 3> unflatten(std::size_t flat) const;

  double coordinate(int axis, std::size_t index) const;
  Vec3 node(std::size_t i, std::size_t j, std::size_t k) const;
  Vec3 node(std::size_t flat) const;

  /// Distance between adjacent nodes per axis (zero for single-node axes).
  Vec3 spacing() const;

  bool operator==(const GridSpec&) const = default;
};

/// Raw values on a GridSpec, flat in GridSpec::flat_index order. Exact-mode
/// values are unclamped winding numbers.
struct ScalarField {
  GridSpec spec;
  std::vector<double> values;

  ScalarField() = default;
  explicit ScalarField(const GridSpec& s, double fill = 0.0)
      : spec(s), values(s.num_nodes(), fill) {}

  double& at(std::size_t i, std::size_t j, std::size_t k) { return values[spec.flat_index(i, j, k)]; }
  double at(std::size_t i, std::size_t j, std::size_t k) const { return values[spec.flat_index(i, j, k)]; }
};

enum class WindingMode { exact, soft };
enum class Precision { f64, f32 };

struct QueryBatchConfig {
  std::size_t chunk_size = 2000;
  unsigned thread_count = 0;  // 0 = auto (WINDVOX_THREADS or hardware)
  Precision precision = Precision::f64;
};

/// Value assigned to a query point that lies on the surface.
inline constexpr double kOnSurfaceValue = 0.5;

/// 1e-9 times the bounding-box diagonal; 0 for meshes without vertices.
double surface_tolerance(const TriangleMesh& mesh);

/// Two-argument arctangent: quadrant-aware, and 0 at (0, 0).
double atan2_branch(double y, double x);

struct SolidAngle {
  double value = 0.0;  // steradians, in (-2pi, 2pi]
  bool on_surface = false;
};

/// Signed solid angle of triangle (v0, v1, v2) seen from q, computed as
/// 2 * atan2(det(e0, e1, e2), 1 + e0.e1 + e1.e2 + e2.e0) over unit directions
/// e_j = (v_j - q) / |v_j - q|. Positive when q is behind the counter-clockwise
/// normal. Degenerate triangles give exactly 0. A point within `surface_tol` of
/// the triangle is reported as on_surface with value 0. A negative tolerance
/// selects 1e-9 times the triangle's bounding-box diagonal.
SolidAngle solid_angle_triangle(const Vec3& v0, const Vec3& v1, const Vec3& v2, const Vec3& q,
                                double surface_tol = -1.0);

/// Generalized winding number (1/4pi) * sum of face solid angles. Points on
/// the surface return kOnSurfaceValue.
double winding_number_exact(const TriangleMesh& mesh, const Vec3& q);

/// Dipole (one point per face) discretization:
/// (1/4pi) * sum_i <n_i, c_i - q> A_i / |c_i - q|^3.
/// Throws OnSurfaceError if q is within the surface tolerance of a centroid.
double winding_number_soft(const TriangleMesh& mesh, const Vec3& q);

struct WindingSample {
  double value = 0.0;
  bool on_surface = false;
};

namespace detail {
// Test hook: the single-argument arctangent reproduces the branch-cut
// artifacts that the two-argument form removes.
enum class AngleBranch { atan2, plain_arctan };
}  // namespace detail

/// Reusable evaluator: caches per-face data and scratch buffers for repeated
/// point queries against one mesh. Not thread-safe; use one per thread.
template <typename Real>
class WindingEvaluator {
 public:
  WindingEvaluator(const TriangleMesh& mesh, double surface_tol,
                   detail::AngleBranch branch = detail::AngleBranch::atan2);
  explicit WindingEvaluator(const TriangleMesh& mesh)
      : WindingEvaluator(mesh, surface_tolerance(mesh)) {}

  WindingSample exact(const Vec3& q);
  WindingSample soft(const Vec3& q);

 private:
  using V = BasicVec3<Real>;

  std::vector<V> vertices_;
  std::vector<Face> faces_;
  std::vector<Real> normal_length_;  // |cross(v1 - v0, v2 - v0)|
  std::vector<V> face_normal_;       // cross(v1 - v0, v2 - v0)
  std::vector<V> centroid_;
  Real tol_;
  detail::AngleBranch branch_;

  std::vector<V> dir_;
  std::vector<Real> len_;
  std::vector<unsigned char> near_;
  std::vector<Real> terms_;
};

extern template class WindingEvaluator<double>;
extern template class WindingEvaluator<float>;

/// Evaluates the winding number at every node of `spec`. Output is
/// bit-identical for any thread count and chunk size.
ScalarField voxelize(const TriangleMesh& mesh, const GridSpec& spec, WindingMode mode,
                     const QueryBatchConfig& batch = {});

/// Same as voxelize() over an explicit list of query points.
std::vector<double> evaluate_points(const TriangleMesh& mesh, const std::vector<Vec3>& points,
                                   WindingMode mode, const QueryBatchConfig& batch = {});

namespace detail {
ScalarField voxelize_with_branch(const TriangleMesh& mesh, const GridSpec& spec,
                                 const QueryBatchConfig& batch, AngleBranch branch);
}  // namespace detail

/// 1 where value > threshold, else 0.
ScalarField binarize(const ScalarField& field, double threshold = 0.5);

/// Pairwise (tree) summation with a fixed split rule; used wherever results
/// must not depend on scheduling.
template <typename Real>
Real pairwise_sum(const Real* values, std::size_t n) {
  if (n <= 8) {
    Real s = 0;
    for (std::size_t i = 0; i < n; ++i) s += values[i];
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(values, half) + pairwise_sum(values + half, n - half);
}

}  // namespace windvox
