#pragma once

// Shared fixtures: seeded generators, the scenario corpus and small oracles.

#include <cmath>
#include <complex>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "rotquad/cli.hpp"
#include "rotquad/intersection.hpp"
#include "rotquad/symmetry_algebra.hpp"

#ifndef ROTQUAD_DATA_DIR
#define ROTQUAD_DATA_DIR "data"
#endif

namespace rqtest {

using rotquad::Complex;

inline constexpr double kPi = 3.14159265358979323846;

// Raw 64-bit draws only, so sequences are identical on every standard library.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : engine_(seed * 0x9E3779B97F4A7C15ULL + 0x2545F4914F6CDD1DULL) {}

  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }
  int integer(int lo, int hi) {  // inclusive
    return lo + static_cast<int>(engine_() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  Complex point(double radius) { return {uniform(-radius, radius), uniform(-radius, radius)}; }

 private:
  std::mt19937_64 engine_;
};

inline std::filesystem::path data_dir() { return ROTQUAD_DATA_DIR; }

inline std::vector<std::filesystem::path> corpus_files() {
  std::vector<std::filesystem::path> out;
  for (const auto& e : std::filesystem::directory_iterator(data_dir() / "scenarios")) {
    if (e.path().extension() == ".json") out.push_back(e.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<rotquad::cli::ScenarioConfig> corpus() {
  std::vector<rotquad::cli::ScenarioConfig> out;
  for (const auto& p : corpus_files()) out.push_back(rotquad::cli::load_scenario(p.string()));
  return out;
}

// Profile with rho = 0 up to radius 1, rising to m across (1, 2) and flat after.
inline rotquad::RadialProfile step_profile(double m) {
  return rotquad::RadialProfile({{0.5, 0.0}, {1.0, 0.0}, {2.0, m}, {3.0, m}});
}

// Random integer g on labels "p0".."p{n-1}": a symmetric table s shifted to
// g(u, v) = s(u, v) - s(0, v) - s(u, 1) + s(0, 1), so g(0, .) = g(., 1) = 0.
// Symmetry of s is what makes the cyclic relation hold for build_F_from_g(g).
inline rotquad::GTable random_gtable(Gen& gen, int n, int range = 9) {
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) labels.push_back("p" + std::to_string(i));
  std::vector<std::vector<int>> s(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n)));
  for (std::size_t u = 0; u < s.size(); ++u) {
    for (std::size_t v = u; v < s.size(); ++v) s[u][v] = s[v][u] = gen.integer(-range, range);
  }
  rotquad::GTable g(labels);
  for (std::size_t u = 0; u < s.size(); ++u) {
    for (std::size_t v = 0; v < s.size(); ++v) {
      g.set(static_cast<int>(u), static_cast<int>(v), s[u][v] - s[0][v] - s[u][1] + s[0][1]);
    }
  }
  return g;
}

struct LoopInstance {
  rotquad::Polyline alpha;  // x1 -> x2
  rotquad::Polyline gamma;  // closed
  int expected;             // winding around x1 minus winding around x2, by construction
};

// Loop that circles x1 k1 times, travels to x2, circles it k2 times and comes
// back along a different bridge; alpha is a random path from x1 to x2.
inline LoopInstance random_loop_instance(Gen& gen, int cls) {
  const Complex x1 = gen.point(2.0);
  Complex x2;
  do x2 = gen.point(2.0); while (std::abs(x2 - x1) < 1.5);
  const double d = std::abs(x2 - x1);
  const int k2 = gen.integer(-2, 2);
  const int k1 = cls + k2;

  // Circles start facing each other, tilted towards the side both bridges run
  // on, so the bridging quadrilateral lies strictly on that side and encloses
  // neither puncture.
  const Complex u = (x2 - x1) / d;
  std::vector<Complex> v;
  auto circle = [&](Complex c, int turns, double r, double phase) {
    const int per = 7 + gen.integer(0, 5);
    const int steps = per * std::abs(turns);
    const double dir = turns < 0 ? -1.0 : 1.0;
    for (int s = 0; s <= steps; ++s) {
      const double rr = (s == 0 || s == steps) ? r : r * gen.uniform(0.6, 1.0);
      v.push_back(c + std::polar(rr, phase + dir * 2 * kPi * s / per));
    }
  };
  const double r1 = d * gen.uniform(0.15, 0.3);
  const double r2 = d * gen.uniform(0.15, 0.3);
  const double sgn = gen.unit() < 0.5 ? 1.0 : -1.0;
  const Complex side = u * Complex(0, sgn);
  const double p1 = std::arg(u) + sgn * gen.uniform(0.1, 0.4);
  const double p2 = std::arg(-u) - sgn * gen.uniform(0.1, 0.4);
  if (k1 != 0) circle(x1, k1, r1, p1);
  else v.push_back(x1 + std::polar(r1, p1));
  v.push_back(0.5 * (x1 + x2) + side * d * gen.uniform(0.05, 0.2));
  if (k2 != 0) circle(x2, k2, r2, p2);
  else v.push_back(x2 + std::polar(r2, p2));
  v.push_back(0.5 * (x1 + x2) + side * d * gen.uniform(0.25, 0.4));

  std::vector<Complex> a{x1};
  const int inner = gen.integer(0, 3);
  for (int i = 0; i < inner; ++i) a.push_back(x1 + (x2 - x1) * gen.uniform(0.1, 0.9) + gen.point(d * 0.5));
  a.push_back(x2);
  return {rotquad::Polyline::path(a), rotquad::Polyline::loop(v), cls};
}

}  // namespace rqtest
