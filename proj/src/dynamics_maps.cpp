#include "rotquad/dynamics_maps.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "rotquad/error.hpp"

namespace rotquad {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double mod1(double x) noexcept {
  double r = x - std::floor(x);
  if (r >= 1.0) r -= 1.0;
  return r;
}

using PhaseLog = std::vector<double>*;

SpherePoint twist_point(const RadialProfile& profile, const SpherePoint& p, bool inverse, PhaseLog log) {
  const double sign = inverse ? -1.0 : 1.0;
  if (p.is_infinite()) {
    if (log) log->push_back(sign * profile.outer_value());
    return p;
  }
  const Complex z = p.value();
  const double rho = sign * profile(std::abs(z));
  if (log) log->push_back(rho);
  if (z == Complex{}) return p;
  const double frac = rho - std::round(rho);
  if (frac == 0.0) return p;
  return SpherePoint(z * std::polar(1.0, kTwoPi * frac));
}

SpherePoint eval_node(const MapSpec& spec, const SpherePoint& p, bool inverse, PhaseLog log);

SpherePoint eval_power(const MapSpec& inner, int q, const SpherePoint& p, bool inverse, PhaseLog log) {
  const bool inv = (q < 0) != inverse;
  SpherePoint x = p;
  for (int k = 0, n = std::abs(q); k < n; ++k) x = eval_node(inner, x, inv, log);
  return x;
}

SpherePoint eval_node(const MapSpec& spec, const SpherePoint& p, bool inverse, PhaseLog log) {
  return std::visit(
      Overloaded{
          [&](const IdentityMap&) { return p; },
          [&](const RadialTwist& t) { return twist_point(t.profile, p, inverse, log); },
          [&](const MobiusConjugate& c) {
            return c.h.inverse()(eval_node(c.inner, c.h(p), inverse, log));
          },
          [&](const Compose& c) {
            SpherePoint x = p;
            if (inverse) {
              for (const MapSpec& part : c.parts) x = eval_node(part, x, true, log);
            } else {
              for (auto it = c.parts.rbegin(); it != c.parts.rend(); ++it) {
                x = eval_node(*it, x, false, log);
              }
            }
            return x;
          },
          [&](const InverseMap& i) { return eval_node(i.inner, p, !inverse, log); },
          [&](const PowerMap& pw) { return eval_power(pw.inner, pw.q, p, inverse, log); },
      },
      spec.node());
}

bool fixes(const MapSpec& spec, const SpherePoint& p, const Tolerances& tol) {
  return fixed_point_residual(spec, p) <= tol.fixed_point;
}

bool fixes_all(const MapSpec& spec, std::span<const SpherePoint> pts, const Tolerances& tol) {
  return std::all_of(pts.begin(), pts.end(), [&](const SpherePoint& p) { return fixes(spec, p, tol); });
}

// Rotation angle (turns, unreduced) where the map is a conformal rotation near
// the fixed point p.
std::optional<double> rigid_rotation(const MapSpec& spec, const SpherePoint& p,
                                     const Tolerances& tol) {
  return std::visit(
      Overloaded{
          [&](const IdentityMap&) -> std::optional<double> { return 0.0; },
          [&](const RadialTwist& t) -> std::optional<double> {
            if (p.is_infinite()) return -t.profile.outer_value();
            const double r = std::abs(p.value());
            if (!t.profile.locally_constant(r)) return std::nullopt;
            // Off the centre the twist is locally a rotation by an integer
            // number of turns about 0, i.e. the identity.
            return r == 0.0 ? t.profile.inner_value() : 0.0;
          },
          [&](const MobiusConjugate& c) { return rigid_rotation(c.inner, c.h(p), tol); },
          [&](const Compose& c) -> std::optional<double> {
            double sum = 0.0;
            for (const MapSpec& part : c.parts) {
              if (!fixes(part, p, tol)) return std::nullopt;
              const auto r = rigid_rotation(part, p, tol);
              if (!r) return std::nullopt;
              sum += *r;
            }
            return sum;
          },
          [&](const InverseMap& i) -> std::optional<double> {
            const auto r = rigid_rotation(i.inner, p, tol);
            if (!r) return std::nullopt;
            return -*r;
          },
          [&](const PowerMap& pw) -> std::optional<double> {
            if (!fixes(pw.inner, p, tol)) return std::nullopt;
            const auto r = rigid_rotation(pw.inner, p, tol);
            if (!r) return std::nullopt;
            return pw.q * *r;
          },
      },
      spec.node());
}

std::optional<MapSpec> slice_node(const MapSpec& spec, double t, std::span<const SpherePoint> keep,
                                  const Tolerances& tol) {
  return std::visit(
      Overloaded{
          [&](const IdentityMap&) -> std::optional<MapSpec> { return MapSpec::identity(); },
          [&](const RadialTwist& tw) -> std::optional<MapSpec> {
            std::optional<long long> shift;
            for (const SpherePoint& p : keep) {
              if (p.is_infinite() || p.value() == Complex{}) continue;
              const double v = tw.profile(std::abs(p.value()));
              const double k = std::round(v);
              if (std::abs(v - k) > tol.fixed_point) return std::nullopt;
              if (shift && *shift != static_cast<long long>(k)) return std::nullopt;
              shift = static_cast<long long>(k);
            }
            return MapSpec::twist(tw.profile.affine(t, static_cast<double>(shift.value_or(0))));
          },
          [&](const MobiusConjugate& c) -> std::optional<MapSpec> {
            std::vector<SpherePoint> moved;
            moved.reserve(keep.size());
            for (const SpherePoint& p : keep) moved.push_back(c.h(p));
            auto inner = slice_node(c.inner, t, moved, tol);
            if (!inner) return std::nullopt;
            return MapSpec::conjugate(c.h, std::move(*inner));
          },
          [&](const Compose& c) -> std::optional<MapSpec> {
            std::vector<MapSpec> parts;
            for (const MapSpec& part : c.parts) {
              if (!fixes_all(part, keep, tol)) return std::nullopt;
              auto s = slice_node(part, t, keep, tol);
              if (!s) return std::nullopt;
              parts.push_back(std::move(*s));
            }
            return MapSpec::compose(std::move(parts));
          },
          [&](const InverseMap& i) -> std::optional<MapSpec> {
            auto s = slice_node(i.inner, t, keep, tol);
            if (!s) return std::nullopt;
            return MapSpec::inverse(std::move(*s));
          },
          [&](const PowerMap& pw) -> std::optional<MapSpec> {
            if (!fixes_all(pw.inner, keep, tol)) return std::nullopt;
            auto s = slice_node(pw.inner, t, keep, tol);
            if (!s) return std::nullopt;
            return MapSpec::power(pw.q, std::move(*s));
          },
      },
      spec.node());
}

}  // namespace

const MapSpec::Node& MapSpec::node() const noexcept { return *node_; }

// -------------------------------------------------------------- RadialProfile

RadialProfile::RadialProfile(std::vector<Breakpoint> breakpoints)
    : breakpoints_(std::move(breakpoints)) {
  if (breakpoints_.empty()) throw Error(ErrorKind::InvalidInput, "profile needs a breakpoint");
  for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
    const auto [r, v] = breakpoints_[i];
    if (!std::isfinite(r) || !std::isfinite(v) || r < 0.0) {
      throw Error(ErrorKind::InvalidInput, "profile radii must be finite and >= 0");
    }
    if (i > 0 && !(r > breakpoints_[i - 1].first)) {
      throw Error(ErrorKind::InvalidInput, "profile radii must increase strictly");
    }
  }
}

double RadialProfile::operator()(double r) const noexcept {
  if (r <= breakpoints_.front().first) return breakpoints_.front().second;
  if (r >= breakpoints_.back().first) return breakpoints_.back().second;
  const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), r,
                                   [](double x, const Breakpoint& b) { return x < b.first; });
  const Breakpoint& hi = *it;
  const Breakpoint& lo = *(it - 1);
  const double f = (r - lo.first) / (hi.first - lo.first);
  return lo.second + f * (hi.second - lo.second);
}

bool RadialProfile::locally_constant(double r) const noexcept {
  const auto& b = breakpoints_;
  if (r < b.front().first || (r == 0.0 && b.size() == 1)) return true;
  if (r > b.back().first) return true;
  // r on or inside [b[i], b[i+1]]: constant nearby when every segment touching
  // r is flat.
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (r == b[i].first) {
      const bool left_flat = i == 0 || b[i - 1].second == b[i].second;
      const bool right_flat = i + 1 == b.size() || b[i + 1].second == b[i].second;
      return left_flat && right_flat;
    }
    if (i + 1 < b.size() && r > b[i].first && r < b[i + 1].first) {
      return b[i].second == b[i + 1].second;
    }
  }
  return false;
}

RadialProfile RadialProfile::affine(double t, double shift) const {
  std::vector<Breakpoint> out = breakpoints_;
  for (auto& [r, v] : out) v = t * (v - shift);
  return RadialProfile(std::move(out));
}

// -------------------------------------------------------------------- MapSpec

MapSpec MapSpec::identity() { return MapSpec(std::make_shared<const Node>(IdentityMap{})); }

MapSpec MapSpec::twist(RadialProfile profile) {
  return MapSpec(std::make_shared<const Node>(RadialTwist{std::move(profile)}));
}

MapSpec MapSpec::conjugate(MobiusTransform h, MapSpec inner) {
  return MapSpec(std::make_shared<const Node>(MobiusConjugate{h, std::move(inner)}));
}

MapSpec MapSpec::compose(std::vector<MapSpec> parts) {
  if (parts.empty()) return identity();
  return MapSpec(std::make_shared<const Node>(Compose{std::move(parts)}));
}

MapSpec MapSpec::inverse(MapSpec inner) {
  return MapSpec(std::make_shared<const Node>(InverseMap{std::move(inner)}));
}

MapSpec MapSpec::power(int q, MapSpec inner) {
  if (q == 0) throw Error(ErrorKind::InvalidInput, "power exponent must be nonzero");
  return MapSpec(std::make_shared<const Node>(PowerMap{q, std::move(inner)}));
}

SpherePoint eval_map(const MapSpec& spec, const SpherePoint& p) { return eval_node(spec, p, false, nullptr); }

SpherePoint eval_map(const MapSpec& spec, const SpherePoint& p, std::vector<double>& phases) {
  return eval_node(spec, p, false, &phases);
}

int depth(const MapSpec& spec) {
  return std::visit(Overloaded{
                        [](const IdentityMap&) { return 1; },
                        [](const RadialTwist&) { return 1; },
                        [](const MobiusConjugate& c) { return 1 + depth(c.inner); },
                        [](const Compose& c) {
                          int d = 0;
                          for (const MapSpec& p : c.parts) d = std::max(d, depth(p));
                          return 1 + d;
                        },
                        [](const InverseMap& i) { return 1 + depth(i.inner); },
                        [](const PowerMap& p) { return 1 + depth(p.inner); },
                    },
                    spec.node());
}

double fixed_point_residual(const MapSpec& spec, const SpherePoint& x) {
  const SpherePoint y = eval_map(spec, x);
  if (x.is_infinite() && y.is_infinite()) return 0.0;
  if (x.is_infinite() || y.is_infinite()) return std::numeric_limits<double>::infinity();
  return std::abs(y.value() - x.value());
}

std::vector<SpherePoint> fixed_points(const MapSpec& spec, std::span<const SpherePoint> marks,
                                      const Tolerances& tol) {
  std::vector<SpherePoint> out;
  if (std::holds_alternative<RadialTwist>(spec.node())) {
    for (const SpherePoint& centre : {SpherePoint(0.0, 0.0), SpherePoint::infinity()}) {
      if (std::find(marks.begin(), marks.end(), centre) == marks.end()) out.push_back(centre);
    }
  }
  for (const SpherePoint& m : marks) {
    const double res = fixed_point_residual(spec, m);
    if (!(res <= tol.fixed_point)) {
      std::ostringstream os;
      os << to_string(m) << " residual " << res;
      throw Error(ErrorKind::NotFixed, os.str());
    }
    out.push_back(m);
  }
  return out;
}

Jacobian finite_difference_jacobian(const MapSpec& spec, const SpherePoint& p, double step) {
  const bool at_infinity = p.is_infinite();
  const Complex centre = at_infinity ? Complex{} : p.value();
  auto local = [&](Complex w) {
    const SpherePoint z = at_infinity ? (w == Complex{} ? SpherePoint::infinity() : SpherePoint(1.0 / w))
                                      : SpherePoint(w);
    const SpherePoint fz = eval_map(spec, z);
    if (at_infinity) return fz.is_infinite() ? Complex{} : 1.0 / fz.value();
    if (fz.is_infinite()) throw Error(ErrorKind::SamplingFailure, "map sends a nearby point to inf");
    return fz.value();
  };
  const Complex dx = (local(centre + step) - local(centre - step)) / (2.0 * step);
  const Complex dy =
      (local(centre + Complex(0.0, step)) - local(centre - Complex(0.0, step))) / (2.0 * step);
  return {dx.real(), dy.real(), dx.imag(), dy.imag()};
}

double projective_rotation(const Jacobian& j) noexcept {
  const double trace = j[0] + j[3];
  const double det = j[0] * j[3] - j[1] * j[2];
  if (!(det > 0.0)) return std::numeric_limits<double>::quiet_NaN();
  const double disc = trace * trace - 4.0 * det;
  if (disc >= 0.0) return trace > 0.0 ? 0.0 : 0.5;
  const double c = std::clamp(trace / (2.0 * std::sqrt(det)), -1.0, 1.0);
  const double phi = std::acos(c);
  return mod1((j[2] > 0.0 ? phi : -phi) / kTwoPi);
}

LocalRotation local_rotation(const MapSpec& spec, const SpherePoint& p, const Tolerances& tol) {
  if (const auto r = rigid_rotation(spec, p, tol)) return {mod1(*r), true};
  return {projective_rotation(finite_difference_jacobian(spec, p)), false};
}

double differential_rotation(const MapSpec& spec, const SpherePoint& p, const Tolerances& tol) {
  const double res = fixed_point_residual(spec, p);
  if (!(res <= tol.fixed_point)) {
    throw Error(ErrorKind::NotFixed, to_string(p) + " residual " + std::to_string(res));
  }
  return local_rotation(spec, p, tol).turns;
}

std::optional<MapSpec> isotopy_slice(const MapSpec& spec, double t, std::span<const SpherePoint> keep,
                                     const Tolerances& tol) {
  if (!fixes_all(spec, keep, tol)) return std::nullopt;
  return slice_node(spec, t, keep, tol);
}

}  // namespace rotquad
