#pragma once

// Algebraic intersection numbers of paths relative to puncture pairs, by
// signed crossing count and by winding of closed loops.

#include <functional>

#include "rotquad/sphere_geometry.hpp"

namespace rotquad {

/// alpha runs x1 -> x2 avoiding B = {x3, x4}; beta runs x3 -> x4 avoiding
/// A = {x1, x2}. All four points live in the same planar chart.
class MarkedPathPair {
 public:
  MarkedPathPair(Polyline alpha, Polyline beta, const Tolerances& tol = {});

  const Polyline& alpha() const noexcept { return alpha_; }
  const Polyline& beta() const noexcept { return beta_; }
  Complex x1() const noexcept { return alpha_.front(); }
  Complex x2() const noexcept { return alpha_.back(); }
  Complex x3() const noexcept { return beta_.front(); }
  Complex x4() const noexcept { return beta_.back(); }

  /// Same geometry with the roles of (alpha, A) and (beta, B) exchanged.
  MarkedPathPair swapped() const;

 private:
  Polyline alpha_;
  Polyline beta_;
};

/// Sum of segment_crossing signs over all segment pairs of two polylines.
int crossing_count(const Polyline& a, const Polyline& b, const Tolerances& tol = {});

/// alpha . beta by signed crossing count.
int algebraic_intersection(const MarkedPathPair& pair, const Tolerances& tol = {});

/// Class of a closed loop in H1(S^2 \ {x1, x2}) = Z, oriented so that a small
/// counterclockwise circle around x1 has class +1. x1, x2 are given in the
/// loop's chart; a point at infinity contributes no winding.
int loop_class(const Polyline& gamma, const SpherePoint& x1, const SpherePoint& x2,
               const Tolerances& tol = {});

/// An orientation-preserving homeomorphism of the sphere.
using SphereMap = std::function<SpherePoint(const SpherePoint&)>;

/// Whether (g o alpha) . (g o beta) == alpha . beta. Images are resampled
/// adaptively and measured in a chart that keeps both image paths finite.
bool homeo_invariance_check(const MarkedPathPair& pair, const SphereMap& g,
                            const Tolerances& tol = {});

}  // namespace rotquad
