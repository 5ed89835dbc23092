#pragma once

#include "windvox/vec3.hpp"

namespace windvox {

/// Closest point to p on triangle (a, b, c); handles degenerate triangles.
/// Region classification after Ericson, Real-Time Collision Detection 5.1.5.
template <typename T>
BasicVec3<T> closest_point_on_triangle(const BasicVec3<T>& p, const BasicVec3<T>& a,
                                       const BasicVec3<T>& b, const BasicVec3<T>& c) {
  const auto ab = b - a;
  const auto ac = c - a;
  const auto ap = p - a;
  const T d1 = dot(ab, ap);
  const T d2 = dot(ac, ap);
  if (d1 <= T(0) && d2 <= T(0)) return a;

  const auto bp = p - b;
  const T d3 = dot(ab, bp);
  const T d4 = dot(ac, bp);
  if (d3 >= T(0) && d4 <= d3) return b;

  const T vc = d1 * d4 - d3 * d2;
  if (vc <= T(0) && d1 >= T(0) && d3 <= T(0)) {
    const T denom = d1 - d3;
    return denom > T(0) ? a + ab * (d1 / denom) : a;
  }

  const auto cp = p - c;
  const T d5 = dot(ab, cp);
  const T d6 = dot(ac, cp);
  if (d6 >= T(0) && d5 <= d6) return c;

  const T vb = d5 * d2 - d1 * d6;
  if (vb <= T(0) && d2 >= T(0) && d6 <= T(0)) {
    const T denom = d2 - d6;
    return denom > T(0) ? a + ac * (d2 / denom) : a;
  }

  const T va = d3 * d6 - d5 * d4;
  if (va <= T(0) && (d4 - d3) >= T(0) && (d5 - d6) >= T(0)) {
    const T denom = (d4 - d3) + (d5 - d6);
    return denom > T(0) ? b + (c - b) * ((d4 - d3) / denom) : b;
  }

  const T sum = va + vb + vc;
  if (!(sum > T(0))) {
    // Degenerate (collinear) triangle: fall back to the closest of its edges.
    auto on_segment = [&](const BasicVec3<T>& s0, const BasicVec3<T>& s1) {
      const auto d = s1 - s0;
      const T len2 = dot(d, d);
      if (!(len2 > T(0))) return s0;
      T t = dot(p - s0, d) / len2;
      t = t < T(0) ? T(0) : (t > T(1) ? T(1) : t);
      return s0 + d * t;
    };
    BasicVec3<T> best = on_segment(a, b);
    for (const auto& cand : {on_segment(b, c), on_segment(c, a)}) {
      if (squared_norm(cand - p) < squared_norm(best - p)) best = cand;
    }
    return best;
  }
  const T denom = T(1) / sum;
  return a + ab * (vb * denom) + ac * (vc * denom);
}

template <typename T>
T point_triangle_distance(const BasicVec3<T>& p, const BasicVec3<T>& a, const BasicVec3<T>& b,
                          const BasicVec3<T>& c) {
  return norm(p - closest_point_on_triangle(p, a, b, c));
}

}  // namespace windvox
