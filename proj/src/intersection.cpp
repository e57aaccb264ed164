#include "rotquad/intersection.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "rotquad/error.hpp"

namespace rotquad {

namespace {

void require_avoids(const Polyline& path, Complex p, const Tolerances& tol, const char* what) {
  if (distance_to_polyline(p, path) <= tol.edge) {
    throw Error(ErrorKind::PointOnLoop, what);
  }
}

int loop_winding(const Polyline& loop, const SpherePoint& p, const Tolerances& tol) {
  if (p.is_infinite()) return 0;
  return winding_number(loop, p.value(), tol);
}

}  // namespace

MarkedPathPair::MarkedPathPair(Polyline alpha, Polyline beta, const Tolerances& tol)
    : alpha_(std::move(alpha)), beta_(std::move(beta)) {
  if (alpha_.closed() || beta_.closed()) {
    throw Error(ErrorKind::InvalidPolyline, "marked paths must be open");
  }
  const std::array<Complex, 4> pts{x1(), x2(), x3(), x4()};
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      if (pts[i] == pts[j]) throw Error(ErrorKind::CoincidentPoints, "marked points coincide");
    }
  }
  require_avoids(alpha_, x3(), tol, "alpha meets x3");
  require_avoids(alpha_, x4(), tol, "alpha meets x4");
  require_avoids(beta_, x1(), tol, "beta meets x1");
  require_avoids(beta_, x2(), tol, "beta meets x2");
}

MarkedPathPair MarkedPathPair::swapped() const { return {beta_, alpha_}; }

int crossing_count(const Polyline& a, const Polyline& b, const Tolerances& tol) {
  int total = 0;
  for (std::size_t i = 0; i < a.segment_count(); ++i) {
    const Segment sa = a.segment(i);
    const double ax0 = std::min(sa.from.real(), sa.to.real());
    const double ax1 = std::max(sa.from.real(), sa.to.real());
    const double ay0 = std::min(sa.from.imag(), sa.to.imag());
    const double ay1 = std::max(sa.from.imag(), sa.to.imag());
    for (std::size_t j = 0; j < b.segment_count(); ++j) {
      const Segment sb = b.segment(j);
      if (std::max(sb.from.real(), sb.to.real()) < ax0 ||
          std::min(sb.from.real(), sb.to.real()) > ax1 ||
          std::max(sb.from.imag(), sb.to.imag()) < ay0 ||
          std::min(sb.from.imag(), sb.to.imag()) > ay1) {
        continue;
      }
      if (const auto s = segment_crossing(sa, sb, tol)) total += *s;
    }
  }
  return total;
}

int algebraic_intersection(const MarkedPathPair& pair, const Tolerances& tol) {
  return crossing_count(pair.alpha(), pair.beta(), tol);
}

int loop_class(const Polyline& gamma, const SpherePoint& x1, const SpherePoint& x2,
               const Tolerances& tol) {
  if (!gamma.closed()) throw Error(ErrorKind::InvalidPolyline, "loop_class needs a closed loop");
  if (x1 == x2) throw Error(ErrorKind::CoincidentPoints, "loop_class needs distinct punctures");
  // arg h(z) = arg(z - x1) - arg(z - x2) for the normalizing h, exactly along
  // each straight chord, so this is the winding of h o gamma around 0.
  return loop_winding(gamma, x1, tol) - loop_winding(gamma, x2, tol);
}

bool homeo_invariance_check(const MarkedPathPair& pair, const SphereMap& g,
                            const Tolerances& tol) {
  // A point off both paths; sending its image to infinity keeps the image
  // paths inside the finite plane.
  double max_re = -std::numeric_limits<double>::infinity();
  double max_im = max_re;
  double span = 0.0;
  for (const Polyline* p : {&pair.alpha(), &pair.beta()}) {
    for (const Complex v : p->vertices()) {
      max_re = std::max(max_re, v.real());
      max_im = std::max(max_im, v.imag());
      span = std::max(span, std::abs(v));
    }
  }
  const Complex spare(max_re + span + 1.0, max_im + span + 1.0);
  const SpherePoint spare_image = g(SpherePoint(spare));
  const MobiusTransform chart =
      spare_image.is_infinite()
          ? MobiusTransform::identity()
          : MobiusTransform(0.0, 1.0, 1.0, -spare_image.value());

  auto image = [&](Complex z) {
    const SpherePoint w = chart(g(SpherePoint(z)));
    if (w.is_infinite()) throw Error(ErrorKind::SamplingFailure, "image left the chart");
    return w.value();
  };
  auto image_path = [&](const Polyline& path, std::array<Complex, 2> others) {
    const Curve base = as_curve(path);
    const Curve curve = [&](double t) { return image(base(t)); };
    // An odd piece count keeps samples off the midpoints of symmetric configurations.
    return Polyline::path(sample_curve(curve, others, 8 * path.segment_count() + 1, tol));
  };

  const std::array<Complex, 2> a_ends{image(pair.x1()), image(pair.x2())};
  const std::array<Complex, 2> b_ends{image(pair.x3()), image(pair.x4())};
  const MarkedPathPair mapped(image_path(pair.alpha(), b_ends), image_path(pair.beta(), a_ends),
                              tol);
  return algebraic_intersection(mapped, tol) == algebraic_intersection(pair, tol);
}

}  // namespace rotquad
