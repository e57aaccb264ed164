#pragma once

// R_f(x1, x2, x3, x4) for four fixed points of an orientation-preserving sphere
// homeomorphism, computed three independent ways, plus the real-valued
// extensions to repeated points (blow-up) and periodic points.
//
// Conventions: in the chart sending x1 -> 0 and x2 -> inf the positive
// generator is a counterclockwise loop around x1. R_f is the deck exponent of
// the lift fixing x3 evaluated at x4, which equals the winding around x1
// (relative to x2) of the loop (f o beta) * beta^-1.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rotquad/dynamics_maps.hpp"
#include "rotquad/report.hpp"
#include "rotquad/sphere_geometry.hpp"

namespace rotquad {

using MarkedTuple = std::array<SpherePoint, 4>;

std::string to_string(const MarkedTuple& x);

/// A polyline drawn in the planar chart `chart`; `chart` maps the sphere to the
/// plane the vertices live in.
struct ChartedPath {
  MobiusTransform chart = MobiusTransform::identity();
  Polyline path;
};

/// Path x3 -> x4 avoiding x1 and x2: the chord in the plane when that clears
/// the punctures, otherwise a one-vertex detour. When x3 or x4 is inf the path
/// lives in the chart z -> 1/(z - c) for a centre c chosen by `variant`.
ChartedPath default_beta(const MarkedTuple& x, int variant = 0, const Tolerances& tol = {});

/// Alternative admissible betas (distinct detours) for independence checks.
std::vector<ChartedPath> alternative_betas(const MarkedTuple& x, int count, const Tolerances& tol = {});

/// Interior vertices displaced by at most tol.jitter in each coordinate; a
/// single-segment path gains a jittered midpoint.
ChartedPath jittered(const ChartedPath& beta, std::uint64_t seed, const Tolerances& tol = {});

/// Loop method: winding class of (f o beta) * beta^-1.
int rf_loop(const MapSpec& spec, const MarkedTuple& x, const ChartedPath& beta,
            const Tolerances& tol = {});

/// Lift method: accumulated-argument difference of f o beta and beta around 0
/// in the chart x1 -> 0, x2 -> inf.
int rf_lift(const MapSpec& spec, const MarkedTuple& x, const ChartedPath& beta,
            const Tolerances& tol = {});

/// Sampled trace t -> f_t(x4) of an isotopy from the identity, with context.
struct IsotopyTrace {
  MobiusTransform chart = MobiusTransform::identity();
  std::vector<Complex> samples;  // closed: the last sample joins the first
  SpherePoint x1, x2, x3;
};

/// Class of the trace loop around x1 relative to x2. A trace with fewer than
/// three distinct samples is null-homotopic.
int rf_trace(const IsotopyTrace& trace, const Tolerances& tol = {});

/// Trace of the canonical twist isotopy (profiles scaled by t), when the map
/// is built from twists that keep x1, x2, x3 fixed throughout.
/// `variant` selects the working chart as in default_beta.
std::optional<IsotopyTrace> synthesize_twist_trace(const MapSpec& spec, const MarkedTuple& x,
                                                   int variant = 0, const Tolerances& tol = {});

struct BlowupOptions {
  long n_iters = 10000;
  bool extrapolate = false;
  /// Tangent direction at p of the path alpha, in turns. Defaults to the beta
  /// direction plus 1/(2 pi).
  std::optional<double> alpha_direction;
};

struct BlowupEstimate {
  double value = 0.0;
  double error_bound = 0.0;  // 2 / n_iters
  bool certified = false;    // tangent condition verified, not just assumed
  bool rigid = false;        // local rotation at p is exact
  std::string warning;
};

/// R_f(p, x2, p, x4) via the translation number of the tangent circle map at p.
BlowupEstimate rf_blowup(const MapSpec& spec, const SpherePoint& p, const SpherePoint& x2,
                         const SpherePoint& x4, const BlowupOptions& options = {},
                         const Tolerances& tol = {});

/// R_f(p1, p2, p1, p2): the difference of rotation numbers on the two boundary
/// circles of the doubly blown-up annulus.
double rf_double_blowup(const MapSpec& spec, const SpherePoint& p1, const SpherePoint& p2,
                        const Tolerances& tol = {});

struct Rational {
  long long num = 0;
  long long den = 1;

  static Rational make(long long num, long long den);
  double to_double() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const Rational&, const Rational&) = default;
};

std::string to_string(const Rational& r);

/// R_f for points of period dividing q: R_{f^q} / q.
Rational rf_periodic(const MapSpec& spec, int q, const MarkedTuple& x, const ChartedPath& beta,
                     const Tolerances& tol = {});

/// R_f on any 4-tuple of marked points: integer values on distinct tuples, 0
/// on x1 = x2 or x3 = x4, blow-up values on the remaining coincidences. Blow-up
/// entries need a rigid local rotation at the repeated point; otherwise
/// nullopt.
std::optional<double> rf_extended(const MapSpec& spec, const MarkedTuple& x,
                                  const BlowupOptions& options = {}, const Tolerances& tol = {});

enum class Method { Loop, Lift, Trace };

const char* to_string(Method m) noexcept;
Method parse_method(const std::string& text);

struct EngineOptions {
  Tolerances tol;
  std::uint64_t seed = 0;
};

/// One R_f evaluation with jitter retries on numerical failures.
struct RfOutcome {
  std::optional<int> value;  // empty when inconclusive or unsupported
  int attempts = 0;
  bool supported = true;     // false when the trace method has no isotopy
  std::string message;
};

/// `stream` separates the jitter sequences of independent computations.
/// Validation errors (coincident or non-fixed points) propagate.
RfOutcome compute_rf(const MapSpec& spec, const MarkedTuple& x, Method method,
                     const EngineOptions& options, std::uint64_t stream);

struct NamedPoint {
  std::string name;
  SpherePoint point;
};

/// Symmetry, coboundary, inversion, power and (with g) homomorphism checks on
/// all distinct tuples of `points` (at least five common fixed points).
Report verify_rf_identities(const MapSpec& f, const std::optional<MapSpec>& g,
                            const std::vector<NamedPoint>& points, const EngineOptions& options = {});

}  // namespace rotquad
