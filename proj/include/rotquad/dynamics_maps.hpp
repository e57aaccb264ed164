#pragma once

// A closed family of explicitly evaluable orientation-preserving sphere
// homeomorphisms: radial twists, Moebius conjugates, compositions, inverses
// and powers.

#include <array>
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "rotquad/sphere_geometry.hpp"

namespace rotquad {

/// Piecewise-linear rho(r), constant before the first and after the last
/// breakpoint. Radii are >= 0 and strictly increasing.
class RadialProfile {
 public:
  using Breakpoint = std::pair<double, double>;  // (radius, value)

  explicit RadialProfile(std::vector<Breakpoint> breakpoints);
  static RadialProfile constant(double value) { return RadialProfile({{1.0, value}}); }

  double operator()(double r) const noexcept;
  double inner_value() const noexcept { return breakpoints_.front().second; }
  double outer_value() const noexcept { return breakpoints_.back().second; }

  /// rho is constant on a neighbourhood of r (r = 0 included).
  bool locally_constant(double r) const noexcept;

  /// t * (rho - shift)
  RadialProfile affine(double t, double shift) const;

  const std::vector<Breakpoint>& breakpoints() const noexcept { return breakpoints_; }

 private:
  std::vector<Breakpoint> breakpoints_;
};

class MapSpec;

struct IdentityMap {};
/// z -> exp(2 pi i rho(|z|)) z in the current chart.
struct RadialTwist {
  RadialProfile profile;
};
/// h^{-1} o inner o h
struct MobiusConjugate;
/// parts[0] o parts[1] o ... (the last part is applied first)
struct Compose;
struct InverseMap;
/// inner^q, q != 0
struct PowerMap;

class MapSpec {
 public:
  using Node = std::variant<IdentityMap, RadialTwist, MobiusConjugate, Compose, InverseMap, PowerMap>;

  static MapSpec identity();
  static MapSpec twist(RadialProfile profile);
  static MapSpec conjugate(MobiusTransform h, MapSpec inner);
  static MapSpec compose(std::vector<MapSpec> parts);
  static MapSpec inverse(MapSpec inner);
  static MapSpec power(int q, MapSpec inner);

  const Node& node() const noexcept;

 private:
  explicit MapSpec(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct MobiusConjugate {
  MobiusTransform h;
  MapSpec inner;
};
struct Compose {
  std::vector<MapSpec> parts;
};
struct InverseMap {
  MapSpec inner;
};
struct PowerMap {
  int q;
  MapSpec inner;
};

SpherePoint eval_map(const MapSpec& spec, const SpherePoint& p);

/// Same, appending to `phases` the unreduced turns applied by each twist
/// evaluation, in evaluation order.
SpherePoint eval_map(const MapSpec& spec, const SpherePoint& p, std::vector<double>& phases);

/// Depth of the variant tree (a leaf has depth 1).
int depth(const MapSpec& spec);

/// Residual of a declared fixed point: |f(x) - x| for finite x, 0 when inf is
/// mapped to inf and +inf otherwise.
double fixed_point_residual(const MapSpec& spec, const SpherePoint& x);

/// Validated marked fixed points. A bare RadialTwist contributes 0 and inf
/// automatically (first, when not already marked). Throws NotFixed.
std::vector<SpherePoint> fixed_points(const MapSpec& spec, std::span<const SpherePoint> marks,
                                      const Tolerances& tol = {});

/// Rotation of the tangent circle action of Df at a fixed point, in turns.
struct LocalRotation {
  double turns;  // in [0, 1)
  bool rigid;    // the map is a conformal rotation near p, so `turns` is exact
};

/// Real 2x2 Jacobian, row-major.
using Jacobian = std::array<double, 4>;

/// Central finite-difference Jacobian at p (in the chart w = 1/z when p = inf).
Jacobian finite_difference_jacobian(const MapSpec& spec, const SpherePoint& p, double step = 1e-6);

/// Rotation number, in turns in [0, 1), of v -> Jv/|Jv| for det J > 0.
double projective_rotation(const Jacobian& j) noexcept;

LocalRotation local_rotation(const MapSpec& spec, const SpherePoint& p, const Tolerances& tol = {});

/// Rotation angle (turns in [0, 1)) of Df_p at a marked fixed point. Exact
/// where the map is locally a rigid rotation, finite differences otherwise.
/// Throws NotFixed.
double differential_rotation(const MapSpec& spec, const SpherePoint& p, const Tolerances& tol = {});

/// Isotopy slice f_t for twist-built maps: every twist profile rho becomes
/// t * (rho - k) with k the integer value of rho on the kept points. Returns
/// nullopt when some part does not fix the kept points for every t.
std::optional<MapSpec> isotopy_slice(const MapSpec& spec, double t, std::span<const SpherePoint> keep,
                                     const Tolerances& tol = {});

}  // namespace rotquad
