#include "rotquad/rotation_invariant.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>

#include "parallel.hpp"
#include "rotquad/error.hpp"
#include "rotquad/intersection.hpp"
#include "seeded.hpp"

namespace rotquad {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

enum class Shape { Distinct, DegeneratePair, Mixed };

Shape classify(const MarkedTuple& x) {
  for (int i : {0, 1}) {
    for (int j : {2, 3}) {
      if (x[i] == x[j]) return Shape::Mixed;
    }
  }
  if (x[0] == x[1] || x[2] == x[3]) return Shape::DegeneratePair;
  return Shape::Distinct;
}

void require_fixed(const MapSpec& spec, std::span<const SpherePoint> pts, const Tolerances& tol) {
  for (const SpherePoint& p : pts) {
    const double res = fixed_point_residual(spec, p);
    if (!(res <= tol.fixed_point)) {
      std::ostringstream os;
      os << to_string(p) << " is not fixed (residual " << res << ")";
      throw Error(ErrorKind::NotFixed, os.str());
    }
  }
}

void require_distinct(std::span<const SpherePoint> pts) {
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      if (pts[i] == pts[j]) throw Error(ErrorKind::CoincidentPoints, to_string(pts[i]) + " repeated");
    }
  }
}

Complex or_nan(const SpherePoint& p) { return p.is_infinite() ? Complex(kNaN, kNaN) : p.value(); }

std::vector<Complex> finite_images(const MobiusTransform& chart, std::initializer_list<SpherePoint> pts) {
  std::vector<Complex> out;
  for (const SpherePoint& p : pts) {
    const SpherePoint q = chart(p);
    if (q.is_finite()) out.push_back(q.value());
  }
  return out;
}

// Removes consecutive repeats; for loops also a last vertex equal to the first.
void dedupe(std::vector<Complex>& v, bool closed) {
  v.erase(std::unique(v.begin(), v.end()), v.end());
  if (closed) {
    while (v.size() > 1 && v.back() == v.front()) v.pop_back();
  }
}

double principal_turns(double x) noexcept {
  // (-1/2, 1/2]
  double r = x - std::round(x);
  if (r <= -0.5) r += 1.0;
  return r;
}

int snap(double v, const Tolerances& tol) {
  const double n = std::round(v);
  if (!(std::abs(v - n) <= tol.winding_snap)) {
    std::ostringstream os;
    os << "accumulated turns " << v << " are not an integer";
    throw Error(ErrorKind::NonIntegerWinding, os.str());
  }
  return static_cast<int>(n);
}

MobiusTransform working_chart(const MarkedTuple& x, int variant) {
  if (x[2].is_finite() && x[3].is_finite()) return MobiusTransform::identity();
  double scale = 1.0;
  for (const SpherePoint& p : x) {
    if (p.is_finite()) scale = std::max(scale, std::abs(p.value()));
  }
  auto gen = detail::seeded_engine(0x6368617274ULL, 0, static_cast<std::uint64_t>(variant));
  Complex best{};
  double best_gap = -1.0;
  for (int k = 0; k < 64; ++k) {
    const Complex c(2.0 * scale * detail::symmetric_uniform(gen), 2.0 * scale * detail::symmetric_uniform(gen));
    double gap = std::numeric_limits<double>::infinity();
    for (const SpherePoint& p : x) {
      if (p.is_finite()) gap = std::min(gap, std::abs(c - p.value()));
    }
    if (gap > best_gap) {
      best_gap = gap;
      best = c;
    }
  }
  return MobiusTransform(0.0, 1.0, 1.0, -best);
}

std::vector<ChartedPath> beta_candidates(const MarkedTuple& x, int variant, std::size_t limit,
                                         const Tolerances& tol) {
  if (x[2] == x[3]) throw Error(ErrorKind::CoincidentPoints, "beta needs x3 != x4");
  const MobiusTransform chart = working_chart(x, variant);
  const Complex a = chart(x[2]).value();
  const Complex b = chart(x[3]).value();
  const std::vector<Complex> punctures = finite_images(chart, {x[0], x[1]});
  double margin = 0.05 * std::abs(b - a);
  for (const Complex c : punctures) {
    margin = std::min(margin, 0.25 * std::min(std::abs(c - a), std::abs(c - b)));
  }
  margin = std::max(margin, 2.0 * tol.edge);

  std::vector<ChartedPath> out;
  const Complex normal = Complex(0.0, 1.0) * (b - a);
  // Bends avoid simple fractions: with x3 or x4 at the chart centre a bend of
  // 1/2 puts the vertex a quarter turn from the chart pole about 0, which a
  // twist by a quarter turn then carries onto the pole.
  for (double lambda : {0.0, 0.4142, -0.5773, 0.8660, -1.1547, 1.7321, -2.2361, 2.6458, -3.1623}) {
    std::vector<Complex> v{a};
    if (lambda != 0.0) v.push_back(0.5 * (a + b) + lambda * normal);
    v.push_back(b);
    Polyline path = Polyline::path(std::move(v));
    const bool clear = std::all_of(punctures.begin(), punctures.end(),
                                   [&](Complex c) { return distance_to_polyline(c, path) > margin; });
    if (!clear) continue;
    out.push_back({chart, std::move(path)});
    if (out.size() >= limit) break;
  }
  return out;
}

void check_beta(const MarkedTuple& x, const ChartedPath& beta, const Tolerances& tol) {
  const SpherePoint a = beta.chart(x[2]);
  const SpherePoint b = beta.chart(x[3]);
  if (a.is_infinite() || b.is_infinite()) {
    throw Error(ErrorKind::InvalidPolyline, "beta endpoints must be finite in its chart");
  }
  auto close = [](Complex u, Complex v) { return std::abs(u - v) <= 1e-9 * (1.0 + std::abs(u)); };
  if (!close(a.value(), beta.path.front()) || !close(b.value(), beta.path.back())) {
    throw Error(ErrorKind::InvalidPolyline, "beta must run from x3 to x4");
  }
  if (beta.path.closed()) throw Error(ErrorKind::InvalidPolyline, "beta must be an open path");
  for (const Complex c : finite_images(beta.chart, {x[0], x[1]})) {
    if (distance_to_polyline(c, beta.path) <= tol.edge) {
      throw Error(ErrorKind::PointOnLoop, "beta meets x1 or x2");
    }
  }
}

// Checks shared by the loop and lift methods; true when the tuple is a
// degenerate pair (value 0).
bool prepare(const MapSpec& spec, const MarkedTuple& x, const Tolerances& tol) {
  const Shape shape = classify(x);
  if (shape == Shape::Mixed) {
    throw Error(ErrorKind::CoincidentPoints,
                "mixed coincidence " + to_string(x) + " needs the blow-up extension");
  }
  require_fixed(spec, x, tol);
  return shape == Shape::DegeneratePair;
}

TracedCurve mapped_curve(const MapSpec& spec, const MobiusTransform& out_chart, const MobiusTransform& in_inverse,
                         Curve base) {
  return [&spec, out_chart, in_inverse, base = std::move(base)](double t, std::vector<double>& phases) {
    return or_nan(out_chart(eval_map(spec, in_inverse(SpherePoint(base(t))), phases)));
  };
}

// Lifted displacement (turns) of H along `path` around 0, where H is spec seen
// in the chart h: accumulated arg of H o path minus that of path.
double displacement(const MapSpec& spec, const MobiusTransform& h, const Curve& path, const Tolerances& tol) {
  const MobiusTransform h_inv = h.inverse();
  const std::array<Complex, 1> origin{Complex{}};
  const TracedCurve image = mapped_curve(spec, h, h_inv, path);
  const auto img = sample_curve(image, origin, 1024, tol);
  const auto base = sample_curve(path, origin, 1024, tol);
  return (accumulated_argument(img, {}) - accumulated_argument(base, {})) / kTwoPi;
}

}  // namespace

std::string to_string(const MarkedTuple& x) {
  return "(" + to_string(x[0]) + ", " + to_string(x[1]) + ", " + to_string(x[2]) + ", " + to_string(x[3]) + ")";
}

ChartedPath default_beta(const MarkedTuple& x, int variant, const Tolerances& tol) {
  auto c = beta_candidates(x, variant, 1, tol);
  if (c.empty()) throw Error(ErrorKind::PointOnLoop, "no admissible beta for " + to_string(x));
  return std::move(c.front());
}

std::vector<ChartedPath> alternative_betas(const MarkedTuple& x, int count, const Tolerances& tol) {
  auto c = beta_candidates(x, 0, static_cast<std::size_t>(count) + 1, tol);
  if (!c.empty()) c.erase(c.begin());
  return c;
}

ChartedPath jittered(const ChartedPath& beta, std::uint64_t seed, const Tolerances& tol) {
  auto gen = detail::seeded_engine(seed, 0x6a6974746572ULL, 0);
  std::vector<Complex> v = beta.path.vertices();
  if (v.size() == 2) v.insert(v.begin() + 1, 0.5 * (v[0] + v[1]));
  for (std::size_t i = 1; i + 1 < v.size(); ++i) {
    const double dx = detail::symmetric_uniform(gen);
    const double dy = detail::symmetric_uniform(gen);
    v[i] += tol.jitter * Complex(dx, dy);
  }
  dedupe(v, false);
  return {beta.chart, Polyline::path(std::move(v))};
}

int rf_loop(const MapSpec& spec, const MarkedTuple& x, const ChartedPath& beta, const Tolerances& tol) {
  if (prepare(spec, x, tol)) return 0;
  check_beta(x, beta, tol);

  const MobiusTransform& k = beta.chart;
  const std::vector<Complex> punctures = finite_images(k, {x[0], x[1]});
  const TracedCurve image = mapped_curve(spec, k, k.inverse(), as_curve(beta.path));
  std::vector<Complex> gamma = sample_curve(image, punctures, 64 * beta.path.segment_count(), tol);
  // f fixes x3 and x4, so the image runs between the endpoints of beta up to
  // the fixed-point tolerance; snap them before closing up with beta reversed.
  gamma.front() = beta.path.front();
  gamma.back() = beta.path.back();
  const auto& bv = beta.path.vertices();
  gamma.insert(gamma.end(), bv.rbegin() + 1, bv.rend());
  dedupe(gamma, true);
  if (gamma.size() < 3) return 0;
  return loop_class(Polyline::loop(std::move(gamma)), k(x[0]), k(x[1]), tol);
}

int rf_lift(const MapSpec& spec, const MarkedTuple& x, const ChartedPath& beta, const Tolerances& tol) {
  if (prepare(spec, x, tol)) return 0;
  check_beta(x, beta, tol);

  const MobiusTransform h = mobius_normalize(x[0], x[1]);
  const MobiusTransform k_inv = beta.chart.inverse();
  const Curve base = as_curve(beta.path);
  const Curve lifted_base = [&](double t) { return or_nan(h(k_inv(SpherePoint(base(t))))); };
  const TracedCurve image = mapped_curve(spec, h, k_inv, base);
  const std::array<Complex, 1> origin{Complex{}};
  const std::size_t initial = 64 * beta.path.segment_count();
  const auto img = sample_curve(image, origin, initial, tol);
  const auto path = sample_curve(lifted_base, origin, initial, tol);
  return snap((accumulated_argument(img, {}) - accumulated_argument(path, {})) / kTwoPi, tol);
}

int rf_trace(const IsotopyTrace& trace, const Tolerances& tol) {
  std::vector<Complex> s = trace.samples;
  dedupe(s, true);
  if (s.empty()) throw Error(ErrorKind::InvalidPolyline, "empty isotopy trace");
  for (const Complex c : finite_images(trace.chart, {trace.x1, trace.x2, trace.x3})) {
    const double d = s.size() < 3 ? std::abs(s.front() - c) : distance_to_polyline(c, Polyline::loop(s));
    if (d <= tol.edge) throw Error(ErrorKind::PointOnLoop, "isotopy trace meets a marked point");
  }
  if (s.size() < 3) return 0;
  return loop_class(Polyline::loop(std::move(s)), trace.chart(trace.x1), trace.chart(trace.x2), tol);
}

std::optional<IsotopyTrace> synthesize_twist_trace(const MapSpec& spec, const MarkedTuple& x, int variant,
                                                   const Tolerances& tol) {
  require_distinct(x);
  require_fixed(spec, x, tol);
  const std::array<SpherePoint, 3> keep{x[0], x[1], x[2]};
  if (!isotopy_slice(spec, 1.0, keep, tol)) return std::nullopt;

  IsotopyTrace trace;
  trace.chart = working_chart(x, variant);
  trace.x1 = x[0];
  trace.x2 = x[1];
  trace.x3 = x[2];
  const TracedCurve curve = [&](double t, std::vector<double>& phases) {
    const auto slice = isotopy_slice(spec, t, keep, tol);
    if (!slice) return Complex(kNaN, kNaN);
    return or_nan(trace.chart(eval_map(*slice, x[3], phases)));
  };
  const std::vector<Complex> punctures = finite_images(trace.chart, {x[0], x[1], x[2]});
  trace.samples = sample_curve(curve, punctures, 256, tol);
  if (trace.samples.size() > 1) trace.samples.pop_back();  // f_1(x4) = x4
  dedupe(trace.samples, true);
  return trace;
}

BlowupEstimate rf_blowup(const MapSpec& spec, const SpherePoint& p, const SpherePoint& x2,
                         const SpherePoint& x4, const BlowupOptions& options, const Tolerances& tol) {
  if (options.n_iters <= 0) throw Error(ErrorKind::InvalidInput, "n_iters must be positive");
  const std::array<SpherePoint, 3> pts{p, x2, x4};
  require_distinct(pts);
  require_fixed(spec, pts, tol);

  const MobiusTransform h = mobius_normalize(p, x2);
  const MapSpec conj = MapSpec::conjugate(h.inverse(), spec);  // h o f o h^-1

  BlowupEstimate est;
  const LocalRotation lr = local_rotation(spec, p, tol);
  est.rigid = lr.rigid;
  Jacobian j;
  if (lr.rigid) {
    const double c = std::cos(kTwoPi * lr.turns);
    const double s = std::sin(kTwoPi * lr.turns);
    j = {c, -s, s, c};
  } else {
    j = finite_difference_jacobian(conj, SpherePoint(0.0, 0.0));
  }
  // Fractional displacement of the projectivized derivative on directions.
  auto frac_disp = [&j](double theta) {
    const double cx = std::cos(kTwoPi * theta);
    const double sy = std::sin(kTwoPi * theta);
    const double phi = std::atan2(j[2] * cx + j[3] * sy, j[0] * cx + j[1] * sy) / kTwoPi;
    return principal_turns(phi - theta);
  };

  const Complex w4 = h(x4).value();
  const double theta_beta = std::arg(w4) / kTwoPi;
  const double theta_alpha = options.alpha_direction.value_or(theta_beta + 1.0 / kTwoPi);

  if (lr.rigid) {
    const double a = frac_disp(theta_beta);
    est.certified = true;
    for (int q = 1; q <= 1000; ++q) {
      if (std::abs(a * q - std::round(a * q)) > 1e-9 * q) continue;
      const double gap = (theta_beta - theta_alpha) * q;
      if (std::abs(gap - std::round(gap)) <= 1e-9 * q) {
        throw Error(ErrorKind::TangentCondition, "an iterate of the alpha tangent meets the beta tangent");
      }
      break;
    }
  } else {
    est.warning = "tangent condition assumed: local rotation is not rigid";
  }

  // Integer part of the lifted circle map, read off the lift that fixes x4:
  // follow beta radially from x4 to a point very close to p.
  constexpr double kEps = 1e-6;
  const Curve radial = [w4](double t) { return w4 * std::pow(kEps, t); };
  const double near_p = displacement(spec, h, radial, tol);
  const double shift = std::round(near_p - frac_disp(theta_beta));

  const long n = options.n_iters;
  const long half = n / 2;
  double theta = theta_beta;
  double theta_half = theta;
  for (long i = 0; i < n; ++i) {
    theta += frac_disp(theta) + shift;
    if (i + 1 == half) theta_half = theta;
  }
  double tau = (theta - theta_beta) / static_cast<double>(n);
  if (options.extrapolate && half > 0) {
    tau = 2.0 * tau - (theta_half - theta_beta) / static_cast<double>(half);
  }
  est.value = -tau + 0.0;
  est.error_bound = 2.0 / static_cast<double>(n);
  return est;
}

double rf_double_blowup(const MapSpec& spec, const SpherePoint& p1, const SpherePoint& p2,
                        const Tolerances& tol) {
  const std::array<SpherePoint, 2> pts{p1, p2};
  require_distinct(pts);
  require_fixed(spec, pts, tol);
  const MobiusTransform h = mobius_normalize(p1, p2);
  constexpr double kEps = 1e-6;
  const Complex dir = std::polar(1.0, kTwoPi * 0.1234);
  // Radial path from next to p1 (near 0) out to next to p2 (near inf).
  const Curve radial = [dir](double t) { return dir * std::pow(kEps, 1.0 - 2.0 * t); };
  const double across = displacement(spec, h, radial, tol);
  // Near p2 the angular coordinate of the normalized chart is reversed.
  const double frac = -differential_rotation(spec, p2, tol) - differential_rotation(spec, p1, tol);
  return frac + std::round(across - frac) + 0.0;
}

Rational Rational::make(long long num, long long den) {
  if (den == 0) throw Error(ErrorKind::InvalidInput, "zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const long long g = std::gcd(num, den);
  return {num / g, den / g};
}

std::string to_string(const Rational& r) {
  return r.den == 1 ? std::to_string(r.num) : std::to_string(r.num) + "/" + std::to_string(r.den);
}

Rational rf_periodic(const MapSpec& spec, int q, const MarkedTuple& x, const ChartedPath& beta,
                     const Tolerances& tol) {
  if (q <= 0) throw Error(ErrorKind::InvalidInput, "period must be positive");
  return Rational::make(rf_loop(MapSpec::power(q, spec), x, beta, tol), q);
}

std::optional<double> rf_extended(const MapSpec& spec, const MarkedTuple& x, const BlowupOptions& options,
                                  const Tolerances& tol) {
  require_fixed(spec, x, tol);
  const auto& [a, b, c, d] = x;
  if (a == b || c == d) return 0.0;
  const Shape shape = classify(x);
  if (shape == Shape::Distinct) return rf_loop(spec, x, default_beta(x, 0, tol), tol);

  auto rigid = [&](const SpherePoint& p) { return local_rotation(spec, p, tol).rigid; };
  if (a == c && b == d) {
    if (!rigid(a) || !rigid(b)) return std::nullopt;
    return rf_double_blowup(spec, a, b, tol);
  }
  if (a == d && b == c) {
    if (!rigid(a) || !rigid(b)) return std::nullopt;
    return -rf_double_blowup(spec, a, b, tol) + 0.0;
  }
  // One repeated point; move it into the blow-up slots (p, x2, p, x4) using
  // the sign rules for swapping within a pair and swapping the pairs.
  auto blowup = [&](const SpherePoint& p, const SpherePoint& other2, const SpherePoint& other4, double sign)
      -> std::optional<double> {
    if (!rigid(p)) return std::nullopt;
    return sign * rf_blowup(spec, p, other2, other4, options, tol).value + 0.0;
  };
  if (a == c) return blowup(a, b, d, 1.0);
  if (b == d) return blowup(b, a, c, 1.0);
  if (a == d) return blowup(a, b, c, -1.0);
  return blowup(b, a, d, -1.0);  // b == c
}

const char* to_string(Method m) noexcept {
  switch (m) {
    case Method::Loop: return "loop";
    case Method::Lift: return "lift";
    case Method::Trace: return "trace";
  }
  return "unknown";
}

Method parse_method(const std::string& text) {
  if (text == "loop") return Method::Loop;
  if (text == "lift") return Method::Lift;
  if (text == "trace") return Method::Trace;
  throw Error(ErrorKind::ParseError, "unknown method '" + text + "'");
}

RfOutcome compute_rf(const MapSpec& spec, const MarkedTuple& x, Method method, const EngineOptions& options,
                     std::uint64_t stream) {
  const Tolerances& tol = options.tol;
  RfOutcome out;
  if (prepare(spec, x, tol)) {
    out.value = 0;
    return out;
  }
  std::string last_error;
  for (int attempt = 0; attempt < std::max(1, tol.max_attempts); ++attempt) {
    out.attempts = attempt + 1;
    try {
      if (method == Method::Trace) {
        const auto trace = synthesize_twist_trace(spec, x, attempt, tol);
        if (!trace) {
          out.supported = false;
          out.message = "no canonical isotopy for this map";
          return out;
        }
        out.value = rf_trace(*trace, tol);
        return out;
      }
      ChartedPath beta = default_beta(x, attempt, tol);
      if (attempt > 0) {
        auto gen = detail::seeded_engine(options.seed, stream, static_cast<std::uint64_t>(attempt));
        beta = jittered(beta, gen(), tol);
      }
      out.value = method == Method::Loop ? rf_loop(spec, x, beta, tol) : rf_lift(spec, x, beta, tol);
      return out;
    } catch (const Error& e) {
      if (!is_numerical(e.kind())) throw;
      last_error = e.what();
    }
  }
  out.message = "inconclusive after " + std::to_string(out.attempts) + " attempts: " + last_error;
  return out;
}

// ------------------------------------------------------------ identity suite

namespace {

using Idx = std::array<int, 4>;

struct Suite {
  const std::vector<NamedPoint>& points;
  int n;
  std::vector<Idx> tuples;
  std::vector<int> position;  // code -> index into tuples, -1 for non-distinct

  explicit Suite(const std::vector<NamedPoint>& pts) : points(pts), n(static_cast<int>(pts.size())) {
    position.assign(static_cast<std::size_t>(n * n * n * n), -1);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          for (int d = 0; d < n; ++d) {
            if (a == b || a == c || a == d || b == c || b == d || c == d) continue;
            position[static_cast<std::size_t>(code({a, b, c, d}))] = static_cast<int>(tuples.size());
            tuples.push_back({a, b, c, d});
          }
  }

  int code(const Idx& t) const { return ((t[0] * n + t[1]) * n + t[2]) * n + t[3]; }
  std::size_t index(const Idx& t) const { return static_cast<std::size_t>(position[static_cast<std::size_t>(code(t))]); }
  MarkedTuple marked(const Idx& t) const {
    return {points[t[0]].point, points[t[1]].point, points[t[2]].point, points[t[3]].point};
  }
  std::string label(const Idx& t) const {
    return "(" + points[t[0]].name + "," + points[t[1]].name + "," + points[t[2]].name + "," + points[t[3]].name + ")";
  }
};

struct Term {
  std::optional<int> value;
  int coefficient;
};

// Records sum(coefficient * value) == 0.
void add_linear(Report& report, std::string name, std::string inputs, std::string expected,
                const std::vector<Term>& terms) {
  CheckRecord rec;
  rec.name = std::move(name);
  rec.inputs = std::move(inputs);
  rec.expected = std::move(expected);
  long long sum = 0;
  bool complete = true;
  for (const Term& t : terms) {
    if (!t.value) {
      complete = false;
      rec.values.push_back(kNaN);
      continue;
    }
    rec.values.push_back(*t.value);
    sum += static_cast<long long>(t.coefficient) * *t.value;
  }
  if (!complete) {
    rec.status = CheckStatus::Inconclusive;
    rec.residual = kNaN;
  } else {
    rec.residual = static_cast<double>(sum);
    rec.status = sum == 0 ? CheckStatus::Pass : CheckStatus::Fail;
  }
  report.add(std::move(rec));
}

}  // namespace

Report verify_rf_identities(const MapSpec& f, const std::optional<MapSpec>& g,
                            const std::vector<NamedPoint>& points, const EngineOptions& options) {
  if (points.size() < 5) throw Error(ErrorKind::InvalidInput, "the identity suite needs at least 5 points");
  std::vector<SpherePoint> pts;
  for (const NamedPoint& p : points) pts.push_back(p.point);
  require_distinct(pts);
  require_fixed(f, pts, options.tol);
  if (g) require_fixed(*g, pts, options.tol);

  struct NamedMap {
    std::string name;
    MapSpec spec;
    int power;  // n for f^n; 0 for g and fg
  };
  std::vector<NamedMap> maps{{"f", f, 1},
                             {"f^-1", MapSpec::inverse(f), -1},
                             {"f^-2", MapSpec::power(-2, f), -2},
                             {"f^2", MapSpec::power(2, f), 2},
                             {"f^3", MapSpec::power(3, f), 3}};
  if (g) {
    maps.push_back({"g", *g, 0});
    maps.push_back({"fg", MapSpec::compose({f, *g}), 0});
  }

  const Suite suite(points);
  const std::size_t T = suite.tuples.size();
  const std::uint64_t codes = static_cast<std::uint64_t>(suite.position.size());

  std::vector<RfOutcome> loop(maps.size() * T);
  detail::parallel_for(loop.size(), [&](std::size_t i) {
    const std::size_t m = i / T;
    const Idx& t = suite.tuples[i % T];
    loop[i] = compute_rf(maps[m].spec, suite.marked(t), Method::Loop, options,
                         m * codes + static_cast<std::uint64_t>(suite.code(t)));
  });
  std::vector<RfOutcome> lift(T), trace(T);
  std::vector<std::vector<std::optional<int>>> betas(T);
  detail::parallel_for(T, [&](std::size_t i) {
    const Idx& t = suite.tuples[i];
    const MarkedTuple x = suite.marked(t);
    const std::uint64_t c = static_cast<std::uint64_t>(suite.code(t));
    lift[i] = compute_rf(f, x, Method::Lift, options, (maps.size() + 0) * codes + c);
    trace[i] = compute_rf(f, x, Method::Trace, options, (maps.size() + 1) * codes + c);
    for (const ChartedPath& beta : alternative_betas(x, 3, options.tol)) {
      try {
        betas[i].push_back(rf_loop(f, x, beta, options.tol));
      } catch (const Error& e) {
        if (!is_numerical(e.kind())) throw;
        betas[i].push_back(std::nullopt);
      }
    }
  });

  auto R = [&](std::size_t m, const Idx& t) { return loop[m * T + suite.index(t)].value; };

  Report report;
  std::vector<std::size_t> bases{0};
  if (g) bases.push_back(5);
  for (std::size_t m : bases) {
    const std::string& mname = maps[m].name;
    for (const Idx& t : suite.tuples) {
      const auto [a, b, c, d] = t;
      const std::string in = mname + " " + suite.label(t);
      add_linear(report, "cR-tau", in, "R(x) + R(x_tau) + R(x_tau^2) = 0",
                 {{R(m, t), 1}, {R(m, {b, c, a, d}), 1}, {R(m, {c, a, b, d}), 1}});
      add_linear(report, "cR-sigma1", in, "R(x_sigma1) = -R(x)", {{R(m, {b, a, c, d}), 1}, {R(m, t), 1}});
      add_linear(report, "cR-sigma3", in, "R(x_sigma3) = -R(x)", {{R(m, {a, b, d, c}), 1}, {R(m, t), 1}});
      add_linear(report, "swap-13-24", in, "R(x3,x4,x1,x2) = R(x1,x2,x3,x4)",
                 {{R(m, {c, d, a, b}), 1}, {R(m, t), -1}});
      for (int w = 0; w < suite.n; ++w) {
        if (w == a || w == b || w == c || w == d) continue;
        const std::string inw = in + " w=" + points[w].name;
        add_linear(report, "coboundary12", inw, "R(x1,x2,x3,x4) = R(x1,w,x3,x4) + R(w,x2,x3,x4)",
                   {{R(m, t), 1}, {R(m, {a, w, c, d}), -1}, {R(m, {w, b, c, d}), -1}});
        add_linear(report, "coboundary34", inw, "R(x1,x2,x3,x4) = R(x1,x2,x3,w) + R(x1,x2,w,x4)",
                   {{R(m, t), 1}, {R(m, {a, b, c, w}), -1}, {R(m, {a, b, w, d}), -1}});
      }
      const MarkedTuple x = suite.marked(t);
      const MarkedTuple pair12{x[1], x[1], x[2], x[3]};
      const MarkedTuple pair34{x[0], x[1], x[2], x[2]};
      add_linear(report, "degenerate-pair", in, "R(x2,x2,x3,x4) = R(x1,x2,x3,x3) = 0",
                 {{compute_rf(maps[m].spec, pair12, Method::Loop, options, 0).value, 1},
                  {compute_rf(maps[m].spec, pair34, Method::Loop, options, 0).value, 1}});
    }
  }

  for (std::size_t i = 0; i < T; ++i) {
    const Idx& t = suite.tuples[i];
    const std::string in = "f " + suite.label(t);
    const auto base = R(0, t);
    for (std::size_t m = 1; m < 5; ++m) {
      const int n = maps[m].power;
      add_linear(report, n == -1 ? "inverse" : "power", maps[m].name + " " + suite.label(t),
                 "R_{f^n} = n R_f", {{R(m, t), 1}, {base, -n}});
    }
    add_linear(report, "method-agreement", in + " lift", "loop = lift", {{base, 1}, {lift[i].value, -1}});
    if (trace[i].supported) {
      add_linear(report, "method-agreement", in + " trace", "loop = trace", {{base, 1}, {trace[i].value, -1}});
    }
    for (std::size_t k = 0; k < betas[i].size(); ++k) {
      add_linear(report, "beta-independence", in + " beta" + std::to_string(k + 1),
                 "value does not depend on beta", {{base, 1}, {betas[i][k], -1}});
    }
    if (g) {
      add_linear(report, "homomorphism", suite.label(t), "R_{fg} = R_f + R_g",
                 {{R(6, t), 1}, {base, -1}, {R(5, t), -1}});
    }
  }
  report.sort();
  return report;
}

}  // namespace rotquad
