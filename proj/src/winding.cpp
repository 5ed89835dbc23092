#include "windvox/winding.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>

#include "windvox/errors.hpp"
#include "windvox/geometry.hpp"
#include "windvox/parallel.hpp"

namespace windvox {

void GridSpec::validate() const {
  for (int a = 0; a < 3; ++a) {
    if (!(bounds_min[a] < bounds_max[a])) {
      throw InvalidArgument("grid bounds must satisfy min < max on every axis");
    }
    if (resolution[a] < 1) throw InvalidArgument("grid resolution must be >= 1 on every axis");
  }
}

std::array<std::size_t, 3> GridSpec::unflatten(std::size_t flat) const {
  const std::size_t k = flat % resolution[2];
  const std::size_t rest = flat / resolution[2];
  return {rest / resolution[1], rest % resolution[1], k};
}

double GridSpec::coordinate(int axis, std::size_t index) const {
  const std::size_t r = resolution[axis];
  const double lo = bounds_min[axis];
  const double hi = bounds_max[axis];
  if (r == 1) return 0.5 * (lo + hi);
  return lo + (hi - lo) * (static_cast<double>(index) / static_cast<double>(r - 1));
}

Vec3 GridSpec::node(std::size_t i, std::size_t j, std::size_t k) const {
  return {coordinate(0, i), coordinate(1, j), coordinate(2, k)};
}

Vec3 GridSpec::node(std::size_t flat) const {
  const auto [i, j, k] = unflatten(flat);
  return node(i, j, k);
}

Vec3 GridSpec::spacing() const {
  Vec3 h;
  for (int a = 0; a < 3; ++a) {
    h[a] = resolution[a] > 1 ? (bounds_max[a] - bounds_min[a]) / static_cast<double>(resolution[a] - 1)
                             : 0.0;
  }
  return h;
}

double surface_tolerance(const TriangleMesh& mesh) {
  if (mesh.vertices.empty()) return 0.0;
  return 1e-9 * bounding_box(mesh).diagonal();
}

double atan2_branch(double y, double x) {
  if (x == 0.0 && y == 0.0) return 0.0;
  return std::atan2(y, x);
}

namespace {

template <typename Real>
Real angle_of(Real alpha, Real beta, detail::AngleBranch branch) {
  if (alpha == Real(0) && beta == Real(0)) return Real(0);
  if (branch == detail::AngleBranch::plain_arctan) return std::atan(alpha / beta);
  return std::atan2(alpha, beta);
}

template <typename Real>
Real beta_of(const BasicVec3<Real>& a, const BasicVec3<Real>& b, const BasicVec3<Real>& c) {
  // Grouped so that swapping b and c (an orientation flip) reproduces the
  // same bits.
  return Real(1) + (dot(b, c) + (dot(a, b) + dot(c, a)));
}

template <typename Real>
BasicVec3<Real> centroid_of(const BasicVec3<Real>& a, const BasicVec3<Real>& b,
                            const BasicVec3<Real>& c) {
  return (a + (b + c)) / Real(3);
}

constexpr double kFourPi = 4.0 * std::numbers::pi;
constexpr double kEightPi = 8.0 * std::numbers::pi;

}  // namespace

SolidAngle solid_angle_triangle(const Vec3& v0, const Vec3& v1, const Vec3& v2, const Vec3& q,
                                double surface_tol) {
  if (surface_tol < 0.0) {
    const Vec3 lo = cwise_min(v0, cwise_min(v1, v2));
    const Vec3 hi = cwise_max(v0, cwise_max(v1, v2));
    surface_tol = 1e-9 * norm(hi - lo);
  }
  const Vec3 n = cross(v1 - v0, v2 - v0);
  const double nlen = norm(n);
  if (nlen == 0.0) return {};

  const Vec3 d0 = v0 - q, d1 = v1 - q, d2 = v2 - q;
  const double l0 = norm(d0), l1 = norm(d1), l2 = norm(d2);
  if (l0 <= surface_tol || l1 <= surface_tol || l2 <= surface_tol) return {0.0, true};

  const Vec3 e0 = d0 / l0, e1 = d1 / l1, e2 = d2 / l2;
  const double alpha = det(e0, e1, e2);
  const double beta = beta_of(e0, e1, e2);
  if (std::abs(alpha) * (l0 * (l1 * l2)) <= surface_tol * nlen &&
      point_triangle_distance(q, v0, v1, v2) <= surface_tol) {
    return {0.0, true};
  }
  return {2.0 * atan2_branch(alpha, beta), false};
}

template <typename Real>
WindingEvaluator<Real>::WindingEvaluator(const TriangleMesh& mesh, double surface_tol,
                                         detail::AngleBranch branch)
    : faces_(mesh.faces), tol_(static_cast<Real>(surface_tol)), branch_(branch) {
  mesh.validate();
  vertices_.reserve(mesh.vertices.size());
  for (const auto& v : mesh.vertices) vertices_.emplace_back(v);
  normal_length_.reserve(faces_.size());
  face_normal_.reserve(faces_.size());
  centroid_.reserve(faces_.size());
  for (const auto& f : faces_) {
    const V& a = vertices_[f[0]];
    const V& b = vertices_[f[1]];
    const V& c = vertices_[f[2]];
    const V n = cross(b - a, c - a);
    face_normal_.push_back(n);
    normal_length_.push_back(norm(n));
    centroid_.push_back(centroid_of(a, b, c));
  }
  dir_.resize(vertices_.size());
  len_.resize(vertices_.size());
  near_.resize(vertices_.size());
  terms_.resize(faces_.size());
}

template <typename Real>
WindingSample WindingEvaluator<Real>::exact(const Vec3& query) {
  const V q(query);
  for (std::size_t v = 0; v < vertices_.size(); ++v) {
    const V d = vertices_[v] - q;
    const Real l = norm(d);
    len_[v] = l;
    near_[v] = l <= tol_;
    dir_[v] = l > Real(0) ? d / l : V{};
  }

  bool on_surface = false;
  for (std::size_t f = 0; f < faces_.size(); ++f) {
    const auto& face = faces_[f];
    const Real nlen = normal_length_[f];
    if (nlen == Real(0)) {
      terms_[f] = Real(0);
      continue;
    }
    if (near_[face[0]] | near_[face[1]] | near_[face[2]]) {
      on_surface = true;
      terms_[f] = Real(0);
      continue;
    }
    const V& a = dir_[face[0]];
    const V& b = dir_[face[1]];
    const V& c = dir_[face[2]];
    const Real alpha = det(a, b, c);
    const Real beta = beta_of(a, b, c);
    // |alpha| * l0 l1 l2 / |n| is the distance from q to the supporting plane.
    if (std::abs(alpha) * (len_[face[0]] * (len_[face[1]] * len_[face[2]])) <= tol_ * nlen &&
        point_triangle_distance(q, vertices_[face[0]], vertices_[face[1]], vertices_[face[2]]) <=
            tol_) {
      on_surface = true;
      terms_[f] = Real(0);
      continue;
    }
    terms_[f] = Real(2) * angle_of(alpha, beta, branch_);
  }
  if (on_surface) return {kOnSurfaceValue, true};
  const Real total = pairwise_sum(terms_.data(), terms_.size());
  return {static_cast<double>(total / static_cast<Real>(kFourPi)), false};
}

template <typename Real>
WindingSample WindingEvaluator<Real>::soft(const Vec3& query) {
  const V q(query);
  bool on_surface = false;
  for (std::size_t f = 0; f < faces_.size(); ++f) {
    const V d = centroid_[f] - q;
    const Real r2 = squared_norm(d);
    const Real r = std::sqrt(r2);
    if (r <= tol_) {
      on_surface = true;
      terms_[f] = Real(0);
      continue;
    }
    terms_[f] = dot(face_normal_[f], d) / (r2 * r);
  }
  if (on_surface) return {kOnSurfaceValue, true};
  const Real total = pairwise_sum(terms_.data(), terms_.size());
  return {static_cast<double>(total / static_cast<Real>(kEightPi)), false};
}

template class WindingEvaluator<double>;
template class WindingEvaluator<float>;

double winding_number_exact(const TriangleMesh& mesh, const Vec3& q) {
  if (mesh.faces.empty()) return 0.0;
  WindingEvaluator<double> eval(mesh);
  return eval.exact(q).value;
}

double winding_number_soft(const TriangleMesh& mesh, const Vec3& q) {
  if (mesh.faces.empty()) return 0.0;
  WindingEvaluator<double> eval(mesh);
  const auto s = eval.soft(q);
  if (s.on_surface) throw OnSurfaceError("query point coincides with a face centroid");
  return s.value;
}

namespace {

template <typename Real, typename PointAt>
void evaluate_into(const TriangleMesh& mesh, std::size_t count, PointAt point_at,
                   WindingMode mode, const QueryBatchConfig& batch,
                   detail::AngleBranch branch, std::vector<double>& out) {
  out.assign(count, 0.0);
  if (mesh.faces.empty() || count == 0) return;
  mesh.validate();
  const double tol = surface_tolerance(mesh);
  const unsigned threads = resolve_thread_count(batch.thread_count);
  std::vector<std::unique_ptr<WindingEvaluator<Real>>> evaluators(threads);
  parallel_chunks(count, batch.chunk_size, threads,
                  [&](std::size_t begin, std::size_t end, unsigned worker) {
                    auto& eval = evaluators[worker];
                    if (!eval) eval = std::make_unique<WindingEvaluator<Real>>(mesh, tol, branch);
                    for (std::size_t n = begin; n < end; ++n) {
                      const Vec3 p = point_at(n);
                      out[n] = mode == WindingMode::exact ? eval->exact(p).value
                                                          : eval->soft(p).value;
                    }
                  });
}

template <typename PointAt>
void evaluate_dispatch(const TriangleMesh& mesh, std::size_t count, PointAt point_at,
                       WindingMode mode, const QueryBatchConfig& batch,
                       detail::AngleBranch branch, std::vector<double>& out) {
  if (batch.chunk_size < 1) throw InvalidArgument("chunk_size must be >= 1");
  if (batch.precision == Precision::f32) {
    evaluate_into<float>(mesh, count, point_at, mode, batch, branch, out);
  } else {
    evaluate_into<double>(mesh, count, point_at, mode, batch, branch, out);
  }
}

}  // namespace

ScalarField voxelize(const TriangleMesh& mesh, const GridSpec& spec, WindingMode mode,
                     const QueryBatchConfig& batch) {
  spec.validate();
  ScalarField field;
  field.spec = spec;
  evaluate_dispatch(
      mesh, spec.num_nodes(), [&](std::size_t n) { return spec.node(n); }, mode, batch,
      detail::AngleBranch::atan2, field.values);
  return field;
}

std::vector<double> evaluate_points(const TriangleMesh& mesh, const std::vector<Vec3>& points,
                                   WindingMode mode, const QueryBatchConfig& batch) {
  std::vector<double> out;
  evaluate_dispatch(
      mesh, points.size(), [&](std::size_t n) { return points[n]; }, mode, batch,
      detail::AngleBranch::atan2, out);
  return out;
}

namespace detail {
ScalarField voxelize_with_branch(const TriangleMesh& mesh, const GridSpec& spec,
                                 const QueryBatchConfig& batch, AngleBranch branch) {
  spec.validate();
  ScalarField field;
  field.spec = spec;
  evaluate_dispatch(
      mesh, spec.num_nodes(), [&](std::size_t n) { return spec.node(n); }, WindingMode::exact,
      batch, branch, field.values);
  return field;
}
}  // namespace detail

ScalarField binarize(const ScalarField& field, double threshold) {
  ScalarField out;
  out.spec = field.spec;
  out.values.resize(field.values.size());
  std::transform(field.values.begin(), field.values.end(), out.values.begin(),
                 [threshold](double v) { return v > threshold ? 1.0 : 0.0; });
  return out;
}

}  // namespace windvox
