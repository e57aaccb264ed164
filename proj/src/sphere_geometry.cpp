#include "rotquad/sphere_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "rotquad/error.hpp"

namespace rotquad {

namespace {

constexpr double kPi = std::numbers::pi;

bool finite(Complex z) noexcept { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

double cross(Complex u, Complex v) noexcept { return u.real() * v.imag() - u.imag() * v.real(); }

double orient(Complex a, Complex b, Complex c) noexcept { return cross(b - a, c - a); }

int sign_of(double x, double eps) noexcept { return x > eps ? 1 : (x < -eps ? -1 : 0); }

}  // namespace

// ---------------------------------------------------------------- SpherePoint

SpherePoint::SpherePoint(Complex z) : z_(z) {
  if (!finite(z)) {
    throw Error(ErrorKind::InvalidInput, "non-finite sphere point coordinates");
  }
}

SpherePoint SpherePoint::infinity() noexcept {
  SpherePoint p;
  p.z_.reset();
  return p;
}

Complex SpherePoint::value() const {
  if (!z_) throw Error(ErrorKind::InvalidInput, "the point at infinity has no planar coordinate");
  return *z_;
}

std::string to_string(const SpherePoint& p) {
  if (p.is_infinite()) return "inf";
  std::ostringstream os;
  os.precision(17);
  const Complex z = p.value();
  os << '(' << z.real() << ", " << z.imag() << ')';
  return os.str();
}

double chordal_distance(const SpherePoint& a, const SpherePoint& b) noexcept {
  if (a.is_infinite() && b.is_infinite()) return 0.0;
  if (a.is_infinite() || b.is_infinite()) {
    const Complex z = a.is_infinite() ? b.value() : a.value();
    return 2.0 / std::sqrt(1.0 + std::norm(z));
  }
  const Complex z = a.value();
  const Complex w = b.value();
  return 2.0 * std::abs(z - w) / std::sqrt((1.0 + std::norm(z)) * (1.0 + std::norm(w)));
}

// ------------------------------------------------------------ MobiusTransform

MobiusTransform::MobiusTransform(Complex a, Complex b, Complex c, Complex d)
    : a_(a), b_(b), c_(c), d_(d) {
  if (!(std::abs(a * d - b * c) > 1e-12)) {
    throw Error(ErrorKind::DegenerateMobius, "|ad - bc| <= 1e-12");
  }
}

MobiusTransform MobiusTransform::identity() noexcept {
  return MobiusTransform(1.0, 0.0, 0.0, 1.0);
}

MobiusTransform MobiusTransform::translation(Complex shift) {
  return MobiusTransform(1.0, shift, 0.0, 1.0);
}

MobiusTransform MobiusTransform::inversion() { return MobiusTransform(0.0, 1.0, 1.0, 0.0); }

SpherePoint MobiusTransform::operator()(const SpherePoint& p) const noexcept {
  if (p.is_infinite()) {
    if (c_ == Complex{}) return SpherePoint::infinity();
    return SpherePoint(a_ / c_);
  }
  const Complex z = p.value();
  const Complex den = c_ * z + d_;
  if (den == Complex{}) return SpherePoint::infinity();
  const Complex w = (a_ * z + b_) / den;
  if (!finite(w)) return SpherePoint::infinity();
  return SpherePoint(w);
}

MobiusTransform MobiusTransform::inverse() const { return MobiusTransform(d_, -b_, -c_, a_); }

MobiusTransform MobiusTransform::operator*(const MobiusTransform& r) const {
  return MobiusTransform(a_ * r.a_ + b_ * r.c_, a_ * r.b_ + b_ * r.d_, c_ * r.a_ + d_ * r.c_,
                         c_ * r.b_ + d_ * r.d_);
}

bool MobiusTransform::is_identity() const noexcept {
  return b_ == Complex{} && c_ == Complex{} && a_ == d_;
}

MobiusTransform mobius_normalize(const SpherePoint& x1, const SpherePoint& x2) {
  if (x1 == x2) {
    throw Error(ErrorKind::CoincidentPoints, "cannot normalize " + to_string(x1) + " twice");
  }
  if (x2.is_infinite()) {
    const Complex a = x1.value();
    if (a == Complex{}) return MobiusTransform::identity();
    return MobiusTransform::translation(-a);
  }
  const Complex b = x2.value();
  if (x1.is_infinite()) return MobiusTransform(0.0, 1.0, 1.0, -b);
  return MobiusTransform(1.0, -x1.value(), 1.0, -b);
}

// ------------------------------------------------------------------- Polyline

Polyline::Polyline(std::vector<Complex> vertices, bool closed)
    : vertices_(std::move(vertices)), closed_(closed) {
  const std::size_t min_size = closed_ ? 3 : 2;
  if (vertices_.size() < min_size) {
    throw Error(ErrorKind::InvalidPolyline,
                closed_ ? "a closed polyline needs 3 vertices" : "a path needs 2 vertices");
  }
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (!finite(vertices_[i])) throw Error(ErrorKind::InvalidPolyline, "non-finite vertex");
    if (i + 1 < vertices_.size() && vertices_[i] == vertices_[i + 1]) {
      throw Error(ErrorKind::InvalidPolyline, "repeated consecutive vertex");
    }
  }
  if (closed_ && vertices_.front() == vertices_.back()) {
    throw Error(ErrorKind::InvalidPolyline, "closed polyline repeats its first vertex");
  }
}

Polyline Polyline::reversed() const {
  std::vector<Complex> v(vertices_.rbegin(), vertices_.rend());
  return {std::move(v), closed_};
}

Polyline Polyline::repeated(int times) const {
  if (!closed_ || times < 1) throw Error(ErrorKind::InvalidPolyline, "only loops repeat");
  std::vector<Complex> v;
  v.reserve(vertices_.size() * static_cast<std::size_t>(times));
  for (int k = 0; k < times; ++k) v.insert(v.end(), vertices_.begin(), vertices_.end());
  return {std::move(v), true};
}

double point_segment_distance(Complex p, const Segment& s) noexcept {
  const Complex d = s.to - s.from;
  const double len2 = std::norm(d);
  double t = len2 > 0 ? ((p - s.from) * std::conj(d)).real() / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return std::abs(p - (s.from + t * d));
}

double distance_to_polyline(Complex p, const Polyline& poly) noexcept {
  double best = std::abs(p - poly.front());
  for (std::size_t i = 0; i < poly.segment_count(); ++i) {
    best = std::min(best, point_segment_distance(p, poly.segment(i)));
  }
  return best;
}

double angle_step(Complex a, Complex b, Complex c) noexcept { return std::arg((b - c) / (a - c)); }

int winding_number(const Polyline& loop, Complex p, const Tolerances& tol) {
  if (!loop.closed()) throw Error(ErrorKind::InvalidPolyline, "winding number needs a closed loop");
  double total = 0.0;
  for (std::size_t i = 0; i < loop.segment_count(); ++i) {
    const Segment s = loop.segment(i);
    if (point_segment_distance(p, s) <= tol.edge) {
      throw Error(ErrorKind::PointOnLoop, "point lies on the loop");
    }
    total += angle_step(s.from, s.to, p);
  }
  const double turns = total / (2.0 * kPi);
  const double snapped = std::round(turns);
  if (std::abs(turns - snapped) > tol.winding_snap) {
    throw Error(ErrorKind::NonIntegerWinding, "winding sum " + std::to_string(turns));
  }
  return static_cast<int>(snapped);
}

std::optional<int> segment_crossing(const Segment& s1, const Segment& s2, const Tolerances& tol) {
  const double eps = tol.degenerate;
  const int o1 = sign_of(orient(s1.from, s1.to, s2.from), eps);
  const int o2 = sign_of(orient(s1.from, s1.to, s2.to), eps);
  const int o3 = sign_of(orient(s2.from, s2.to, s1.from), eps);
  const int o4 = sign_of(orient(s2.from, s2.to, s1.to), eps);

  // Strictly on one side of the other's supporting line: disjoint.
  if ((o1 != 0 && o1 == o2) || (o3 != 0 && o3 == o4)) return std::nullopt;
  if (o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0) {
    const double det = cross(s1.to - s1.from, s2.to - s2.from);
    return det > 0 ? 1 : -1;
  }
  if (o1 == 0 && o2 == 0 && o3 == 0 && o4 == 0) {
    // Collinear: overlap of the projections onto the common direction.
    const Complex d = s1.to - s1.from;
    auto proj = [&](Complex p) { return ((p - s1.from) * std::conj(d)).real(); };
    const double lo1 = std::min(0.0, std::norm(d));
    const double hi1 = std::max(0.0, std::norm(d));
    const double a = proj(s2.from);
    const double b = proj(s2.to);
    if (std::max(a, b) < lo1 || std::min(a, b) > hi1) return std::nullopt;
  }
  throw Error(ErrorKind::DegenerateCrossing, "segments touch or are nearly degenerate");
}

// ------------------------------------------------------------------ sampling

Curve as_curve(const Polyline& poly) {
  return [poly](double t) {
    const auto n = static_cast<double>(poly.segment_count());
    const double u = std::clamp(t, 0.0, 1.0) * n;
    auto i = static_cast<std::size_t>(std::floor(u));
    if (i >= poly.segment_count()) {
      return poly.closed() ? poly.front() : poly.back();
    }
    const Segment s = poly.segment(i);
    const double f = u - static_cast<double>(i);
    if (f == 0.0) return s.from;
    return s.from + f * (s.to - s.from);
  };
}

std::vector<Complex> sample_curve(const TracedCurve& curve, std::span<const Complex> punctures,
                                  std::size_t initial, const Tolerances& tol) {
  constexpr int kMaxDepth = 90;
  constexpr double kChordLimit = kPi / 2;
  constexpr double kAgreement = 0.05;
  constexpr double kPhaseStep = 1.0 / 16.0;

  struct Sample {
    Complex z;
    std::vector<double> phases;
  };
  auto eval = [&](double t) {
    Sample s;
    const Complex z = curve(t, s.phases);
    s.z = z;
    if (!finite(z)) throw Error(ErrorKind::SamplingFailure, "curve left the finite chart");
    for (const Complex c : punctures) {
      if (std::abs(z - c) <= tol.edge) {
        throw Error(ErrorKind::PointOnLoop, "curve passes through a puncture");
      }
    }
    return s;
  };
  auto phase_jump = [&](const Sample& a, const Sample& b) {
    if (a.phases.size() != b.phases.size()) return true;
    for (std::size_t i = 0; i < a.phases.size(); ++i) {
      if (std::abs(a.phases[i] - b.phases[i]) > kPhaseStep) return true;
    }
    return false;
  };

  std::vector<Complex> out;
  initial = std::max<std::size_t>(initial, 1);
  out.reserve(initial + 1);

  // Pieces split at an irrational fraction and are probed at a second one.
  // Dyadic midpoints alias with piecewise-linear twists: a piece spanning a
  // whole annulus has its midpoint on an integer turn as well, hiding the turns.
  constexpr double kSplit = 0.41421356237309503;  // sqrt(2) - 1
  constexpr double kProbe = 0.61803398874989485;  // golden section

  // The angle must also grow roughly in proportion to t across the piece.
  auto consistent = [&](Complex z0, Complex zi, Complex z1, Complex c, double whole, double frac) {
    const double a = angle_step(z0, zi, c), b = angle_step(zi, z1, c);
    return std::abs(a - frac * whole) <= kChordLimit / 2 && std::abs(b - (1 - frac) * whole) <= kChordLimit / 2 &&
           std::abs(a + b - whole) <= kAgreement;
  };
  auto needs_split = [&](const Sample& s0, const Sample& sm, const Sample& sq, const Sample& s1) {
    if (phase_jump(s0, s1) || phase_jump(s0, sm) || phase_jump(sm, s1) || phase_jump(s0, sq) || phase_jump(sq, s1)) {
      return true;
    }
    const Complex z0 = s0.z, zm = sm.z, zq = sq.z, z1 = s1.z;
    for (const Complex c : punctures) {
      const double whole = angle_step(z0, z1, c);
      if (std::abs(whole) >= kChordLimit) return true;
      if (!consistent(z0, zm, z1, c, whole, kSplit) || !consistent(z0, zq, z1, c, whole, kProbe)) return true;
      if (point_segment_distance(c, {z0, z1}) <= tol.edge) return true;
    }
    return false;
  };

  // Depth-first refinement; `out` receives every accepted right endpoint.
  struct Piece {
    double t0, t1;
    Sample s0, s1;
    int depth;
  };
  std::vector<Piece> stack;
  Sample prev = eval(0.0);
  out.push_back(prev.z);
  for (std::size_t k = 0; k < initial; ++k) {
    const double t0 = static_cast<double>(k) / static_cast<double>(initial);
    const double t1 = static_cast<double>(k + 1) / static_cast<double>(initial);
    Sample s1 = eval(t1);
    stack.push_back({t0, t1, prev, s1, 0});
    while (!stack.empty()) {
      Piece p = std::move(stack.back());
      stack.pop_back();
      const double tm = p.t0 + kSplit * (p.t1 - p.t0);
      Sample sm = eval(tm);
      const Sample sq = eval(p.t0 + kProbe * (p.t1 - p.t0));
      if (needs_split(p.s0, sm, sq, p.s1)) {
        if (p.depth >= kMaxDepth) {
          throw Error(ErrorKind::SamplingFailure, "refinement depth exhausted");
        }
        // Right part first so the left part is processed next.
        stack.push_back({tm, p.t1, sm, std::move(p.s1), p.depth + 1});
        stack.push_back({p.t0, tm, std::move(p.s0), std::move(sm), p.depth + 1});
        continue;
      }
      if (out.back() != p.s1.z) out.push_back(p.s1.z);
      if (out.size() > tol.max_samples) {
        throw Error(ErrorKind::SamplingFailure, "sample budget exhausted");
      }
    }
    prev = std::move(s1);
  }
  return out;
}

std::vector<Complex> sample_curve(const Curve& curve, std::span<const Complex> punctures,
                                  std::size_t initial, const Tolerances& tol) {
  return sample_curve([&curve](double t, std::vector<double>&) { return curve(t); }, punctures, initial, tol);
}

double accumulated_argument(std::span<const Complex> points, Complex center) noexcept {
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    total += angle_step(points[i], points[i + 1], center);
  }
  return total;
}

}  // namespace rotquad
