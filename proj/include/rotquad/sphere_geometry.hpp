#pragma once

// Points of the Riemann sphere, Moebius charts, planar polylines, winding
// numbers and signed segment crossings.

#include <complex>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace rotquad {

using Complex = std::complex<double>;

/// Numerical tolerances shared by every geometric computation. Each scenario
/// may override them.
struct Tolerances {
  double edge = 1e-9;          // minimum point-to-edge distance
  double degenerate = 1e-12;   // orientation determinant threshold
  double winding_snap = 1e-6;  // max distance of a winding sum from an integer
  double fixed_point = 1e-9;   // |f(x) - x| allowed for a declared fixed point
  std::size_t max_samples = std::size_t{1} << 20;
  double jitter = 1e-7;
  int max_attempts = 5;
};

/// A point of S^2 = C u {inf}. Equality is exact.
class SpherePoint {
 public:
  SpherePoint() = default;
  SpherePoint(Complex z);  // NOLINT(google-explicit-constructor)
  SpherePoint(double re, double im = 0.0) : SpherePoint(Complex(re, im)) {}  // NOLINT

  static SpherePoint infinity() noexcept;

  bool is_infinite() const noexcept { return !z_.has_value(); }
  bool is_finite() const noexcept { return z_.has_value(); }
  /// Throws InvalidInput for the point at infinity.
  Complex value() const;

  friend bool operator==(const SpherePoint& a, const SpherePoint& b) noexcept {
    return a.z_ == b.z_;
  }

 private:
  std::optional<Complex> z_ = Complex{};
};

std::string to_string(const SpherePoint& p);

/// Chordal distance on the unit sphere (stereographic), in [0, 2].
double chordal_distance(const SpherePoint& a, const SpherePoint& b) noexcept;

/// z -> (a z + b) / (c z + d) with |ad - bc| > 1e-12.
class MobiusTransform {
 public:
  MobiusTransform(Complex a, Complex b, Complex c, Complex d);

  static MobiusTransform identity() noexcept;
  static MobiusTransform translation(Complex shift);
  static MobiusTransform inversion();  // z -> 1/z

  SpherePoint operator()(const SpherePoint& p) const noexcept;
  /// Finite-only evaluation; the caller guarantees p is not the pole.
  Complex eval(Complex z) const noexcept { return (a_ * z + b_) / (c_ * z + d_); }

  MobiusTransform inverse() const;
  /// (*this)(rhs(z))
  MobiusTransform operator*(const MobiusTransform& rhs) const;

  Complex a() const noexcept { return a_; }
  Complex b() const noexcept { return b_; }
  Complex c() const noexcept { return c_; }
  Complex d() const noexcept { return d_; }
  bool is_identity() const noexcept;

 private:
  Complex a_, b_, c_, d_;
};

/// Orientation-preserving h with h(x1) = 0, h(x2) = inf.
MobiusTransform mobius_normalize(const SpherePoint& x1, const SpherePoint& x2);

inline SpherePoint apply_mobius(const MobiusTransform& h, const SpherePoint& p) noexcept {
  return h(p);
}

/// Ordered vertex list in a planar chart; open paths need two vertices,
/// closed loops three. Consecutive vertices (and last/first for loops) differ.
class Polyline {
 public:
  Polyline(std::vector<Complex> vertices, bool closed);

  static Polyline path(std::vector<Complex> vertices) { return {std::move(vertices), false}; }
  static Polyline loop(std::vector<Complex> vertices) { return {std::move(vertices), true}; }

  const std::vector<Complex>& vertices() const noexcept { return vertices_; }
  bool closed() const noexcept { return closed_; }
  std::size_t segment_count() const noexcept {
    return closed_ ? vertices_.size() : vertices_.size() - 1;
  }
  struct Segment {
    Complex from;
    Complex to;
  };
  Segment segment(std::size_t i) const noexcept {
    return {vertices_[i], vertices_[(i + 1) % vertices_.size()]};
  }
  Complex front() const noexcept { return vertices_.front(); }
  Complex back() const noexcept { return vertices_.back(); }

  Polyline reversed() const;
  /// Loop traversed `times` times (times >= 1).
  Polyline repeated(int times) const;

 private:
  std::vector<Complex> vertices_;
  bool closed_;
};

using Segment = Polyline::Segment;

double point_segment_distance(Complex p, const Segment& s) noexcept;
double distance_to_polyline(Complex p, const Polyline& poly) noexcept;

/// Signed angle in (-pi, pi] from (a - c) to (b - c).
double angle_step(Complex a, Complex b, Complex c) noexcept;

/// Winding number of a closed polyline around p.
/// Throws PointOnLoop if p is within tol.edge of the loop, NonIntegerWinding if
/// the accumulated angle is not within tol.winding_snap of an integer.
int winding_number(const Polyline& loop, Complex p, const Tolerances& tol = {});

/// Sign of the transverse crossing of two directed segments: +1 when
/// det[s1', s2'] > 0. Throws DegenerateCrossing on touching, collinear overlap
/// or near-degenerate configurations.
std::optional<int> segment_crossing(const Segment& s1, const Segment& s2,
                                    const Tolerances& tol = {});

/// A continuous curve [0, 1] -> C.
using Curve = std::function<Complex(double)>;

/// Uniform-per-segment parametrization of a polyline over [0, 1]; loops
/// include the closing segment and return to the first vertex at t = 1.
Curve as_curve(const Polyline& poly);

/// Adaptive sampling of `curve` so that the resulting polyline is homotopic to
/// the curve in C minus the punctures: every chord subtends less than pi/2 at
/// every puncture and agrees with two interior probes at irrational fractions.
/// Starts from `initial` uniform pieces (>= 1). Throws PointOnLoop when the
/// curve comes within tol.edge of a puncture, SamplingFailure when the sample
/// budget tol.max_samples is exhausted or the curve leaves the finite plane.
std::vector<Complex> sample_curve(const Curve& curve, std::span<const Complex> punctures,
                                  std::size_t initial, const Tolerances& tol = {});

/// A curve that also reports phases (turns) of the motion producing it, one
/// per component; the count must not depend on t.
using TracedCurve = std::function<Complex(double, std::vector<double>&)>;

/// sample_curve, additionally refining until every phase moves by at most
/// 1/16 turn across each piece. Whole turns a piece could otherwise hide
/// (its angle tests only see values modulo 2 pi) show up in the phases.
std::vector<Complex> sample_curve(const TracedCurve& curve, std::span<const Complex> punctures,
                                  std::size_t initial, const Tolerances& tol = {});

/// Sum of principal angle steps of consecutive points around `center`.
double accumulated_argument(std::span<const Complex> points, Complex center) noexcept;

}  // namespace rotquad
