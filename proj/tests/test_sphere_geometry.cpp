#include <doctest.h>

#include <cmath>
#include <vector>

#include "rotquad/error.hpp"
#include "rotquad/sphere_geometry.hpp"
#include "support.hpp"

using namespace rotquad;
using rqtest::kPi;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected a rotquad::Error");
  return ErrorKind::InvalidInput;
}

Polyline square(double half) {
  return Polyline::loop({{-half, -half}, {half, -half}, {half, half}, {-half, half}});
}

}  // namespace

TEST_CASE("sphere points and chordal distance") {
  const SpherePoint inf = SpherePoint::infinity();
  CHECK(inf.is_infinite());
  CHECK(SpherePoint(1.0, 2.0) == SpherePoint(Complex(1.0, 2.0)));
  CHECK_FALSE(SpherePoint(0.0) == inf);
  CHECK(chordal_distance(0.0, inf) == doctest::Approx(2.0));
  CHECK(chordal_distance(1.0, -1.0) == doctest::Approx(2.0));
  CHECK(chordal_distance(inf, inf) == 0.0);
  CHECK(kind_of([&] { (void)inf.value(); }) == ErrorKind::InvalidInput);
  CHECK(to_string(inf) == "inf");
}

TEST_CASE("moebius maps, inverses and normalization") {
  CHECK(kind_of([] { MobiusTransform(1.0, 2.0, 2.0, 4.0); }) == ErrorKind::DegenerateMobius);

  const MobiusTransform h(Complex(2, 1), 3.0, 1.0, Complex(0, -1));
  const MobiusTransform hi = h.inverse();
  rqtest::Gen gen(11);
  for (int i = 0; i < 50; ++i) {
    const Complex z = gen.point(5.0);
    const SpherePoint back = hi(h(z));
    REQUIRE(back.is_finite());
    CHECK(std::abs(back.value() - z) < 1e-10);
  }
  CHECK(h(SpherePoint::infinity()).value() == Complex(2, 1));
  CHECK(h(Complex(0, 1)).is_infinite());
  CHECK((h * hi).is_identity());

  const SpherePoint pairs[][2] = {{Complex(1, 1), Complex(-2, 0.5)},
                                  {SpherePoint::infinity(), Complex(3, 0)},
                                  {Complex(0, 2), SpherePoint::infinity()},
                                  {0.0, SpherePoint::infinity()}};
  for (const auto& pr : pairs) {
    const MobiusTransform n = mobius_normalize(pr[0], pr[1]);
    const SpherePoint a = n(pr[0]);
    REQUIRE(a.is_finite());
    CHECK(std::abs(a.value()) < 1e-12);
    CHECK(n(pr[1]).is_infinite());
  }
  CHECK(mobius_normalize(0.0, SpherePoint::infinity()).is_identity());
  CHECK(kind_of([] { mobius_normalize(1.0, 1.0); }) == ErrorKind::CoincidentPoints);
}

TEST_CASE("polyline validation") {
  CHECK(kind_of([] { Polyline::path({{0, 0}}); }) == ErrorKind::InvalidPolyline);
  CHECK(kind_of([] { Polyline::loop({{0, 0}, {1, 0}}); }) == ErrorKind::InvalidPolyline);
  CHECK(kind_of([] { Polyline::path({{0, 0}, {0, 0}, {1, 0}}); }) == ErrorKind::InvalidPolyline);
  CHECK(kind_of([] { Polyline::loop({{0, 0}, {1, 0}, {0, 0}}); }) == ErrorKind::InvalidPolyline);
  const Polyline sq = square(1.0);
  CHECK(sq.segment_count() == 4);
  CHECK(sq.repeated(3).vertices().size() == 12);
  CHECK(Polyline::path({{0, 0}, {1, 0}, {1, 1}}).reversed().front() == Complex(1, 1));
}

TEST_CASE("winding numbers") {
  const Polyline sq = square(1.0);
  CHECK(winding_number(sq, {0, 0}) == 1);
  CHECK(winding_number(sq.reversed(), {0.3, -0.2}) == -1);
  CHECK(winding_number(sq, {3, 0}) == 0);
  CHECK(winding_number(sq.repeated(4), {0, 0}) == 4);
  CHECK(kind_of([&] { (void)winding_number(sq, {1.0, 0.0}); }) == ErrorKind::PointOnLoop);

  // figure eight: opposite orientation in the two lobes
  const Polyline eight = Polyline::loop({{0, 0}, {1, 1}, {2, 0}, {1, -1}, {0, 0.001}, {-1, 1}, {-2, 0}, {-1, -1}});
  CHECK(winding_number(eight, {1, 0}) == -1);
  CHECK(winding_number(eight, {-1, 0}) == 1);
}

TEST_CASE("winding agrees with a ray-casting oracle") {
  // crossing parity of a horizontal ray gives the winding number mod 2
  rqtest::Gen gen(2024);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Complex> v;
    const int n = gen.integer(3, 9);
    for (int i = 0; i < n; ++i) v.push_back(gen.point(3.0));
    const Polyline loop = Polyline::loop(v);
    const Complex p = gen.point(3.0);
    int w = 0;
    try {
      w = winding_number(loop, p);
    } catch (const Error&) {
      continue;
    }
    int parity = 0;
    for (std::size_t i = 0; i < loop.segment_count(); ++i) {
      const auto s = loop.segment(i);
      if ((s.from.imag() > p.imag()) != (s.to.imag() > p.imag())) {
        const double x = s.from.real() + (p.imag() - s.from.imag()) * (s.to.real() - s.from.real()) /
                                             (s.to.imag() - s.from.imag());
        if (x > p.real()) ++parity;
      }
    }
    CHECK((std::abs(w) % 2) == parity % 2);
  }
}

TEST_CASE("segment crossings") {
  using S = Segment;
  CHECK(segment_crossing(S{{-1, 0}, {1, 0}}, S{{0, -1}, {0, 1}}) == 1);
  CHECK(segment_crossing(S{{0, -1}, {0, 1}}, S{{-1, 0}, {1, 0}}) == -1);
  CHECK_FALSE(segment_crossing(S{{-1, 0}, {1, 0}}, S{{0, 1}, {0, 2}}).has_value());
  CHECK(kind_of([] { (void)segment_crossing(S{{-1, 0}, {1, 0}}, S{{0, 0}, {0, 1}}); }) ==
        ErrorKind::DegenerateCrossing);
  CHECK(kind_of([] { (void)segment_crossing(S{{-1, 0}, {1, 0}}, S{{0, 0}, {2, 0}}); }) ==
        ErrorKind::DegenerateCrossing);
}

TEST_CASE("traced sampling resolves phases the angles cannot see") {
  // the point returns to 1 after every whole turn; only the phase shows the turns
  const TracedCurve turns = [](double t, std::vector<double>& phases) {
    phases.push_back(5 * t);
    return std::polar(1.0, 10 * kPi * t);
  };
  const std::vector<Complex> punct{Complex(0, 0)};
  const auto pts = sample_curve(turns, punct, 1);
  CHECK(accumulated_argument(pts, 0.0) == doctest::Approx(10 * kPi).epsilon(1e-9));
  CHECK(pts.size() >= 81);
}

TEST_CASE("adaptive sampling keeps the homotopy class") {
  // a curve winding three times around 0 sampled from a single piece
  const Curve spiral = [](double t) { return std::polar(1.0 + 0.2 * t, 6 * kPi * t); };
  const std::vector<Complex> punct{Complex(0, 0)};
  const auto pts = sample_curve(spiral, punct, 1);
  CHECK(accumulated_argument(pts, 0.0) == doctest::Approx(6 * kPi).epsilon(1e-9));
  for (std::size_t i = 1; i < pts.size(); ++i) CHECK(std::abs(angle_step(pts[i - 1], pts[i], 0.0)) < kPi / 2);

  const Curve through = [](double t) { return Complex(2 * t - 1, 0); };
  CHECK(kind_of([&] { (void)sample_curve(through, punct, 4); }) == ErrorKind::PointOnLoop);

  Tolerances tight;
  tight.max_samples = 8;
  CHECK(kind_of([&] { (void)sample_curve(spiral, punct, 1, tight); }) == ErrorKind::SamplingFailure);

  const Polyline sq = square(1.0);
  const Curve c = as_curve(sq);
  CHECK(std::abs(c(0.0) - sq.front()) < 1e-15);
  CHECK(std::abs(c(1.0) - sq.front()) < 1e-15);
}
