#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace windvox {

/// Plain 3-vector in model units. Templated so the voxelizer can run its
/// inner loop in single precision; everything else uses Vec3 (double).
template <typename T>
struct BasicVec3 {
  T x{}, y{}, z{};

  constexpr BasicVec3() = default;
  constexpr BasicVec3(T x_, T y_, T z_) : x(x_), y(y_), z(z_) {}

  template <typename U>
  constexpr explicit BasicVec3(const BasicVec3<U>& o)
      : x(static_cast<T>(o.x)), y(static_cast<T>(o.y)), z(static_cast<T>(o.z)) {}

  constexpr T& operator[](std::size_t i) { return i == 0 ? x : (i == 1 ? y : z); }
  constexpr const T& operator[](std::size_t i) const { return i == 0 ? x : (i == 1 ? y : z); }

  constexpr BasicVec3& operator+=(const BasicVec3& o) {
    x += o.x; y += o.y; z += o.z;
    return *this;
  }
  constexpr BasicVec3& operator-=(const BasicVec3& o) {
    x -= o.x; y -= o.y; z -= o.z;
    return *this;
  }
  constexpr BasicVec3& operator*=(T s) {
    x *= s; y *= s; z *= s;
    return *this;
  }

  friend constexpr BasicVec3 operator+(BasicVec3 a, const BasicVec3& b) { return a += b; }
  friend constexpr BasicVec3 operator-(BasicVec3 a, const BasicVec3& b) { return a -= b; }
  friend constexpr BasicVec3 operator-(const BasicVec3& a) { return {-a.x, -a.y, -a.z}; }
  friend constexpr BasicVec3 operator*(BasicVec3 a, T s) { return a *= s; }
  friend constexpr BasicVec3 operator*(T s, BasicVec3 a) { return a *= s; }
  friend constexpr BasicVec3 operator/(const BasicVec3& a, T s) { return {a.x / s, a.y / s, a.z / s}; }
  friend constexpr bool operator==(const BasicVec3&, const BasicVec3&) = default;
};

using Vec3 = BasicVec3<double>;
using Vec3f = BasicVec3<float>;

template <typename T>
constexpr T dot(const BasicVec3<T>& a, const BasicVec3<T>& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}

template <typename T>
constexpr BasicVec3<T> cross(const BasicVec3<T>& a, const BasicVec3<T>& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

// Scalar triple product a . (b x c).
template <typename T>
constexpr T det(const BasicVec3<T>& a, const BasicVec3<T>& b, const BasicVec3<T>& c) {
  return a.x * (b.y * c.z - b.z * c.y) - a.y * (b.x * c.z - b.z * c.x) +
         a.z * (b.x * c.y - b.y * c.x);
}

template <typename T>
T norm(const BasicVec3<T>& a) {
  return std::sqrt(dot(a, a));
}

template <typename T>
constexpr T squared_norm(const BasicVec3<T>& a) {
  return dot(a, a);
}

/// Returns the zero vector for zero-length input.
template <typename T>
BasicVec3<T> normalized(const BasicVec3<T>& a) {
  const T n = norm(a);
  return n > T(0) ? a / n : BasicVec3<T>{};
}

template <typename T>
constexpr BasicVec3<T> cwise_min(const BasicVec3<T>& a, const BasicVec3<T>& b) {
  return {a.x < b.x ? a.x : b.x, a.y < b.y ? a.y : b.y, a.z < b.z ? a.z : b.z};
}

template <typename T>
constexpr BasicVec3<T> cwise_max(const BasicVec3<T>& a, const BasicVec3<T>& b) {
  return {a.x > b.x ? a.x : b.x, a.y > b.y ? a.y : b.y, a.z > b.z ? a.z : b.z};
}

}  // namespace windvox
