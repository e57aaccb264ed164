#include <doctest.h>

#include <chrono>
#include <cmath>
#include <fstream>
#include <vector>

#include <nlohmann/json.hpp>

#include "rotquad/error.hpp"
#include "rotquad/rotation_invariant.hpp"
#include "support.hpp"

using namespace rotquad;
using rqtest::kPi;

namespace {

const SpherePoint kInf = SpherePoint::infinity();
const MarkedTuple kTwistTuple{0.0, kInf, 1.0, 2.0};

// rho = 0.25 near 0, 0 on the circles 1 and 2, 1 near inf
MapSpec quarter_twist() {
  return MapSpec::twist(RadialProfile({{0.1, 0.25}, {0.5, 0.0}, {3.0, 0.0}, {4.0, 1.0}}));
}

MapSpec rigid_center(double rho0) {
  return MapSpec::twist(RadialProfile({{0.2, rho0}, {0.8, 0.0}}));
}

}  // namespace

TEST_CASE("twist family matches the golden values") {
  std::ifstream in(std::string(ROTQUAD_GOLDEN_DIR) + "/twist_family.json");
  REQUIRE(in.good());
  const auto golden = nlohmann::json::parse(in).at("values");
  for (int m = -3; m <= 3; ++m) {
    CAPTURE(m);
    const MapSpec f = MapSpec::twist(rqtest::step_profile(m));
    const ChartedPath beta = default_beta(kTwistTuple);
    const int loop = rf_loop(f, kTwistTuple, beta);
    const int lift = rf_lift(f, kTwistTuple, beta);
    CHECK(loop == golden.at(std::to_string(m)).get<int>());
    CHECK(lift == loop);
    CHECK(std::abs(loop) == std::abs(m));
    const auto trace = synthesize_twist_trace(f, kTwistTuple);
    REQUIRE(trace.has_value());
    CHECK(rf_trace(*trace) == loop);
  }
}

TEST_CASE("loop and lift examples") {
  const MarkedTuple x{Complex(0.3, 0.1), Complex(-2, 1), Complex(1, 1), kInf};
  for (int v = 0; v < 3; ++v) {
    const ChartedPath beta = default_beta(x, v);
    CHECK(rf_loop(MapSpec::identity(), x, beta) == 0);
    CHECK(rf_lift(MapSpec::identity(), x, beta) == 0);
  }
  const MapSpec f = MapSpec::twist(rqtest::step_profile(1));
  const ChartedPath beta = default_beta(kTwistTuple);
  CHECK(rf_loop(MapSpec::power(2, f), kTwistTuple, beta) == 2 * rf_loop(f, kTwistTuple, beta));

  const MobiusTransform shift = MobiusTransform::translation(-5.0);  // h(z) = z - 5
  const MapSpec moved = MapSpec::conjugate(shift, f);
  const MarkedTuple mx{5.0, kInf, 6.0, 7.0};
  CHECK(rf_lift(moved, mx, default_beta(mx)) == rf_lift(f, kTwistTuple, beta));
  CHECK(rf_loop(moved, mx, default_beta(mx)) == 1);
}

TEST_CASE("beta independence and jitter") {
  const MapSpec f = MapSpec::twist(rqtest::step_profile(2));
  const MarkedTuple x{0.0, Complex(0, 2.5), Complex(-1.0, 0.0), Complex(2.2, 0.9)};
  const int base = rf_loop(f, x, default_beta(x));
  const auto alts = alternative_betas(x, 3);
  CHECK(alts.size() == 3);
  for (const ChartedPath& b : alts) CHECK(rf_loop(f, x, b) == base);
  for (std::uint64_t s = 0; s < 5; ++s) CHECK(rf_loop(f, x, jittered(default_beta(x), s)) == base);
}

TEST_CASE("many turns inside one chart piece are not lost") {
  // beta from 0 to inf crosses annuli twisting by 2q and 3q turns; with x1, x2
  // on the circles 1 and 2 only the inner annulus separates them.
  const RadialProfile rho({{0.5, -0.3}, {0.9, 0.0}, {1.1, 0.0}, {1.9, -2.0}, {2.6, -2.0}, {3.2, 1.0}});
  const MapSpec f = MapSpec::twist(rho);
  const MarkedTuple x{1.0, -2.0, 0.0, kInf};
  for (int q : {1, 2, 3, -1, -3}) {
    const MapSpec fq = MapSpec::power(q, f);
    const int expected = q * static_cast<int>(rho(2.0) - rho(1.0));
    for (int v = 0; v < 4; ++v) {
      CAPTURE(q);
      CAPTURE(v);
      const ChartedPath beta = default_beta(x, v);
      CHECK(rf_loop(fq, x, beta) == expected);
      CHECK(rf_lift(fq, x, beta) == expected);
    }
  }
}

TEST_CASE("alternative betas stay clear of the chart pole under quarter turns") {
  // z -> 1/z conjugate of a twist with a quarter-turn plateau, x3 = inf at the
  // chart centre
  const MapSpec f = MapSpec::conjugate(
      MobiusTransform::inversion(),
      MapSpec::twist(RadialProfile({{0.5, 0.25}, {0.9, 0}, {1.1, 0}, {1.9, 1}, {2.5, 1}, {3, 2}})));
  const MarkedTuple x{1.0, 0.5, kInf, 0.0};
  const int base = rf_loop(f, x, default_beta(x));
  for (const ChartedPath& b : alternative_betas(x, 3)) CHECK(rf_loop(f, x, b) == base);
}

TEST_CASE("isotopy traces") {
  IsotopyTrace still;
  still.x1 = 0.0;
  still.x2 = kInf;
  still.x3 = 1.0;
  still.samples = {Complex(2.0)};
  CHECK(rf_trace(still) == 0);

  IsotopyTrace circle = still;
  circle.samples.clear();
  for (int k = 0; k < 32; ++k) circle.samples.push_back(std::polar(2.0, 2 * kPi * k / 32));
  CHECK(rf_trace(circle) == 1);

  // g then f: the trace of fg is the concatenation
  const MapSpec f = MapSpec::twist(rqtest::step_profile(1));
  const MapSpec g = MapSpec::twist(RadialProfile({{1.0, 0.0}, {1.5, -3.0}, {2.0, 2.0}}));
  const auto tf = synthesize_twist_trace(f, kTwistTuple);
  const auto tg = synthesize_twist_trace(g, kTwistTuple);
  REQUIRE(tf);
  REQUIRE(tg);
  IsotopyTrace cat = *tg;
  cat.samples.insert(cat.samples.end(), tf->samples.begin(), tf->samples.end());
  CHECK(rf_trace(cat) == rf_trace(*tf) + rf_trace(*tg));
  CHECK(rf_trace(cat) == rf_loop(MapSpec::compose({f, g}), kTwistTuple, default_beta(kTwistTuple)));
}

TEST_CASE("blow-up values") {
  const BlowupEstimate q = rf_blowup(quarter_twist(), 0.0, kInf, 2.0);
  CHECK(std::abs(std::abs(q.value) - 0.25) < 1e-3);
  CHECK(q.value == doctest::Approx(-0.25).epsilon(1e-3));
  CHECK(q.certified);
  CHECK(q.rigid);
  CHECK(q.error_bound == doctest::Approx(2e-4));

  CHECK(std::abs(rf_blowup(rigid_center(0.0), 0.0, kInf, 2.0).value) < 1e-12);

  const double r = std::sqrt(2.0) - 1.0;
  for (const bool extrapolate : {false, true}) {
    BlowupOptions o;
    o.extrapolate = extrapolate;
    const BlowupEstimate e = rf_blowup(rigid_center(r), 0.0, kInf, 2.0, o);
    CHECK(std::abs(e.value + r) < 1e-3);
    CHECK(std::abs(e.value + r) <= e.error_bound);
  }

  // the inverse map negates the blow-up value
  const BlowupEstimate inv = rf_blowup(MapSpec::inverse(rigid_center(r)), 0.0, kInf, 2.0);
  CHECK(inv.value == doctest::Approx(r).epsilon(1e-3));

  BlowupOptions hit;
  hit.alpha_direction = 0.25;  // beta leaves 0 towards 2, direction 0; a quarter turn reaches it
  bool raised = false;
  try {
    (void)rf_blowup(quarter_twist(), 0.0, kInf, 2.0, hit);
  } catch (const Error& e) {
    raised = e.kind() == ErrorKind::TangentCondition;
  }
  CHECK(raised);
}

TEST_CASE("double blow-up") {
  const MapSpec f = quarter_twist();
  const double d = rf_double_blowup(f, 0.0, kInf);
  CHECK(std::abs(std::abs(d) - 0.75) < 1e-9);
  CHECK(std::abs(rf_double_blowup(MapSpec::identity(), 0.0, kInf)) < 1e-12);
  CHECK(rf_double_blowup(MapSpec::power(2, f), 0.0, kInf) == doctest::Approx(2 * d).epsilon(1e-9));
  // closed form in the chart p1 -> 0, p2 -> inf: rho(inf) - rho(0)
  CHECK(d == doctest::Approx(0.75).epsilon(1e-12));
  // mod 1 through the differential rotations; the chart at inf reverses orientation
  const double a1 = differential_rotation(f, 0.0), a2 = differential_rotation(f, kInf);
  CHECK(std::abs(std::remainder(d + a1 + a2, 1.0)) < 1e-9);
}

TEST_CASE("periodic extension") {
  const MapSpec f = MapSpec::twist(rqtest::step_profile(2));
  const ChartedPath beta = default_beta(kTwistTuple);
  CHECK(rf_periodic(f, 3, kTwistTuple, beta) == Rational::make(rf_loop(f, kTwistTuple, beta), 1));
  CHECK(rf_periodic(MapSpec::identity(), 5, kTwistTuple, beta).num == 0);

  const MapSpec half = MapSpec::compose({MapSpec::twist(RadialProfile({{1.0, 0.0}, {2.0, 0.5}, {3.0, 0.5}})),
                                         MapSpec::twist(RadialProfile::constant(0.5))});
  const Rational r = rf_periodic(half, 2, kTwistTuple, beta);
  CHECK(r.den == 2);
  CHECK(std::abs(r.num) == 1);
  CHECK(to_string(Rational::make(4, 6)) == "2/3");
}

TEST_CASE("extended values on repeated points") {
  const MapSpec f = quarter_twist();
  CHECK(*rf_extended(f, {0.0, 0.0, 1.0, 2.0}) == 0.0);
  CHECK(*rf_extended(f, {0.0, kInf, 2.0, 2.0}) == 0.0);
  const double b = rf_blowup(f, 0.0, kInf, 2.0).value;
  CHECK(*rf_extended(f, {0.0, kInf, 0.0, 2.0}) == doctest::Approx(b));
  CHECK(*rf_extended(f, {kInf, 0.0, 0.0, 2.0}) == doctest::Approx(-b));
  CHECK(*rf_extended(f, {0.0, kInf, 0.0, kInf}) == doctest::Approx(rf_double_blowup(f, 0.0, kInf)));
  CHECK(*rf_extended(f, {0.0, kInf, kInf, 0.0}) == doctest::Approx(-rf_double_blowup(f, 0.0, kInf)));
  // 1.5 sits where rho moves, so no rigid local rotation there
  const MapSpec g = MapSpec::twist(RadialProfile({{1.0, 0.0}, {2.0, 1.0}}));
  CHECK(rf_extended(g, {Complex(1.0), kInf, Complex(1.0), 0.0}) == std::nullopt);
}

TEST_CASE("compute_rf validation and methods") {
  const MapSpec f = MapSpec::twist(rqtest::step_profile(1));
  for (const Method m : {Method::Loop, Method::Lift, Method::Trace}) {
    const RfOutcome o = compute_rf(f, kTwistTuple, m, {}, 0);
    REQUIRE(o.value.has_value());
    CHECK(*o.value == 1);
    CHECK(o.attempts >= 1);
  }
  bool raised = false;
  try {
    (void)compute_rf(f, {0.0, kInf, 1.0, Complex(1.5)}, Method::Loop, {}, 0);
  } catch (const Error& e) {
    raised = e.kind() == ErrorKind::NotFixed;
  }
  CHECK(raised);
  CHECK(parse_method("lift") == Method::Lift);
  CHECK_THROWS_AS(parse_method("nope"), Error);
}

TEST_CASE("identity suite on the identity and on a twist") {
  const std::vector<NamedPoint> pts{{"a", 0.0}, {"b", kInf}, {"c", 1.0}, {"d", Complex(0, 2)}, {"e", Complex(-3, 1)}};
  const Report id = verify_rf_identities(MapSpec::identity(), std::nullopt, pts);
  CHECK(id.all_passed());
  for (const auto& r : id.records()) {
    for (double v : r.values) CHECK(v == 0.0);
  }

  const std::vector<NamedPoint> tp{{"a", 0.0}, {"b", kInf}, {"c", 1.0}, {"d", 2.0}, {"e", Complex(0, 2.2)}};
  const MapSpec f = MapSpec::twist(RadialProfile({{0.5, 0.25}, {0.9, 0.0}, {1.1, 0.0}, {1.9, 1.0}, {2.5, 1.0}, {3.0, 2.0}}));
  const MapSpec g = MapSpec::twist(RadialProfile({{0.9, 0.0}, {1.1, 0.0}, {1.9, -2.0}, {2.5, -2.0}}));
  const auto start = std::chrono::steady_clock::now();
  const Report rep = verify_rf_identities(f, g, tp);
  MESSAGE("identity suite: " << rep.records().size() << " records in "
                             << std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() << " s");
  CHECK(rep.count(CheckStatus::Fail) == 0);
  CHECK(rep.count(CheckStatus::Inconclusive) == 0);
  std::size_t homs = 0;
  for (const auto& r : rep.records()) homs += r.name == "homomorphism";
  CHECK(homs == 120);
}
