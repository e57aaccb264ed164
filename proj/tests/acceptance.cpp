// Acceptance run: one PASS/FAIL line per criterion, exit status 0 iff all pass.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "rotquad/error.hpp"
#include "rotquad/rf_table.hpp"
#include "support.hpp"

using namespace rotquad;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail << "first failure: " << what << "; ";
    pass = pass && ok;
  }
};

// 1: twist family, loop = lift = golden, |R| = |m|, each under 1 s
void twist_family(Outcome& o) {
  std::ifstream in(std::string(ROTQUAD_GOLDEN_DIR) + "/twist_family.json");
  const auto golden = nlohmann::json::parse(in).at("values");
  const MarkedTuple x{0.0, SpherePoint::infinity(), 1.0, 2.0};
  double worst = 0.0;
  for (int m = -3; m <= 3; ++m) {
    const MapSpec f = MapSpec::twist(rqtest::step_profile(m));
    const ChartedPath beta = default_beta(x);
    auto t = Clock::now();
    const int loop = rf_loop(f, x, beta);
    worst = std::max(worst, seconds_since(t));
    t = Clock::now();
    const int lift = rf_lift(f, x, beta);
    worst = std::max(worst, seconds_since(t));
    const std::string tag = "m=" + std::to_string(m);
    o.require(loop == lift, tag + " loop != lift");
    o.require(std::abs(loop) == std::abs(m), tag + " |R| != |m|");
    o.require(loop == golden.at(std::to_string(m)).get<int>(), tag + " differs from golden");
  }
  o.require(worst < 1.0, "a computation took over 1 s");
  o.detail << "m in [-3,3], slowest " << worst << " s";
}

// 2 and 3: identity suite and homomorphism over the corpus
void identity_suite(Outcome& two, Outcome& three) {
  const auto corpus = rqtest::corpus();
  std::size_t records = 0, pairs = 0, homs = 0, powers = 0;
  two.require(corpus.size() >= 20, "fewer than 20 scenarios");
  for (const auto& c : corpus) {
    const Report r = verify_rf_identities(c.map, c.g, c.points, c.engine);
    records += r.records().size();
    pairs += c.g.has_value();
    for (const auto& rec : r.records()) {
      const bool ok = rec.status == CheckStatus::Pass;
      const std::string where = c.name + " " + rec.name + " " + rec.inputs;
      if (rec.name == "homomorphism") {
        ++homs;
        three.require(ok, where);
      } else if (rec.name == "inverse" || rec.name == "power") {
        ++powers;
        three.require(ok, where);
      } else if (rec.name == "cR-tau" || rec.name == "cR-sigma1" || rec.name == "cR-sigma3" ||
                 rec.name == "swap-13-24" || rec.name == "coboundary12" || rec.name == "coboundary34") {
        two.require(ok, where);
      } else {
        two.require(ok, where);
      }
    }
  }
  three.require(pairs >= 5, "fewer than 5 (f, g) pairs");
  two.detail << corpus.size() << " scenarios, " << records << " checks, none inconclusive";
  three.detail << pairs << " pairs, " << homs << " homomorphism and " << powers << " power checks";
}

// 4: Theta
void theta_suite(Outcome& o) {
  const auto t = Clock::now();
  const Report r = verify_theta();
  const KernelImage ki = theta_kernel_image();
  const double dt = seconds_since(t);
  o.require(r.all_passed(), "a Theta record failed");
  const std::set<Permutation> kernel(ki.kernel.begin(), ki.kernel.end());
  const std::set<Permutation> klein{Permutation(), parse_cycles("(12)(34)"), parse_cycles("(13)(24)"),
                                    parse_cycles("(14)(23)")};
  o.require(kernel == klein, "kernel");
  o.require(ki.image_size == 6, "image size");
  o.require(theta(parse_cycles("(13)(24)")) == IntMatrix3::identity(), "Theta((13)(24)) != I");
  o.require(theta_generator(1) == IntMatrix3{{{{-1, 0, 0}, {0, 0, -1}, {0, -1, 0}}}}, "sigma1 display");
  o.require(theta_generator(2) == IntMatrix3{{{{0, 0, -1}, {0, -1, 0}, {-1, 0, 0}}}}, "sigma2 display");
  o.require(theta_generator(3) == IntMatrix3{{{{-1, 0, 0}, {0, 0, -1}, {0, -1, 0}}}}, "sigma3 display");
  o.require(dt < 0.1, "slower than 0.1 s");
  o.detail << r.records().size() << " records in " << dt << " s";
}

// 5: F-symmetry on random g-tables and on R_f tables
void fsym(Outcome& o) {
  rqtest::Gen gen(5);
  int perturbed = 0;
  for (int k = 0; k < 10; ++k) {
    FunctionTable f = build_F_from_g(rqtest::random_gtable(gen, 5));
    o.require(verify_theorem_Fsym(f, ThetaConvention::Action, 0.0).all_passed(), "random table " + std::to_string(k));
    const auto tuples = f.tuples(true);
    const auto& hit = tuples[static_cast<std::size_t>(gen.integer(0, static_cast<int>(tuples.size()) - 1))];
    f.set(hit, *f.at(hit) + 1.0);
    const bool caught = !verify_theorem_Fsym(f, ThetaConvention::Action, 0.0).all_passed();
    perturbed += caught;
    o.require(caught, "perturbation missed in table " + std::to_string(k));
  }
  std::size_t tables = 0;
  for (const auto& c : rqtest::corpus()) {
    RfTableOptions opt;
    opt.engine = c.engine;
    const RfTable t = rf_table(c.map, c.points, opt);
    o.require(t.inconclusive == 0, c.name + " has inconclusive entries");
    o.require(verify_theorem_Fsym(t.table, ThetaConvention::Action, 0.0).all_passed(), c.name);
    ++tables;
  }
  o.detail << "10 g-tables (" << perturbed << "/10 perturbations caught), " << tables << " R_f tables";
}

// 6: golden proof vectors for (r, s) = (2, 5)
void proof_vectors(Outcome& o) {
  GTable g({"p0", "p1", "p2", "p3", "p4"});
  g.set(0, 2, 2);
  g.set(2, 0, 2);
  g.set(0, 1, 7);
  g.set(1, 0, 7);
  const FunctionTable f = build_F_from_g(g);
  const FunctionTable::Index x{0, 1, 2, 3};
  o.require(f_triple(f, x) == RTriple{2, 5, -7}, "base triple");
  o.require(f_triple(f, act_on_tuple(x, Permutation::generator(1))) == RTriple{-2, 7, -5}, "sigma1");
  o.require(f_triple(f, act_on_tuple(x, Permutation::generator(2))) == RTriple{7, -5, -2}, "sigma2");
  o.require(f_triple(f, act_on_tuple(x, Permutation::generator(3))) == RTriple{-2, 7, -5}, "sigma3");
  for (const auto& p : all_permutations()) {
    for (double c : f_triple(f, act_on_tuple(x, p))) {
      const double a = std::abs(c);
      o.require(a == 2 || a == 5 || a == 7, "value outside {+-2, +-5, +-7} for " + to_string(p));
    }
  }
  o.detail << "sigma1 (-2,7,-5), sigma2 (7,-5,-2), sigma3 (-2,7,-5), 24 permutations";
}

// 7: decomposition
void decomposition(Outcome& o) {
  rqtest::Gen gen(7);
  for (int k = 0; k < 20; ++k) {
    const GTable g = rqtest::random_gtable(gen, 5);
    o.require(decompose_g(build_F_from_g(g), 0, 1, 0.0) == g, "round trip " + std::to_string(k));
  }
  const GTable q = decompose_g(quadratic_table({0, 1, 2, 3, 4}), 0, 0, 0.0);
  for (int u = 0; u < 5; ++u) {
    for (int v = 0; v < 5; ++v) o.require(q.at(u, v) == u * v, "g(u,v) != uv");
  }
  o.detail << "20 round trips, g(u,v) = uv on {0,...,4}";
}

// 8: blow-up convergence
void blowup(Outcome& o) {
  const auto t = Clock::now();
  const double r = std::sqrt(2.0) - 1.0;
  const MapSpec f = MapSpec::twist(RadialProfile({{0.2, r}, {0.8, 0.0}, {3.0, 0.0}, {4.0, 0.5}}));
  const SpherePoint inf = SpherePoint::infinity();
  BlowupOptions opt;
  opt.n_iters = 10000;
  const BlowupEstimate e = rf_blowup(f, 0.0, inf, 2.0, opt);
  // closed form: a rigid rotation by r turns has translation number r; the value is -r
  const double err = std::abs(e.value + r);
  o.require(err < 1e-3, "estimate off by more than 1e-3");
  o.require(err <= e.error_bound, "bound does not contain the error");
  o.require(e.error_bound == 2.0 / 10000, "bound is not 2/n");

  double worst = 0.0;
  for (const double inner : {0.25, 0.1, r, -0.3}) {
    for (const double outer : {1.0, 0.5, -2.0, 0.0}) {
      const MapSpec g = MapSpec::twist(RadialProfile({{0.2, inner}, {0.8, 0.0}, {3.0, 0.0}, {4.0, outer}}));
      // local rotation numbers in the chart p1 -> 0, p2 -> inf are inner and
      // outer; the value is minus their difference
      const double d = rf_double_blowup(g, 0.0, inf);
      worst = std::max(worst, std::abs(d + (inner - outer)));
    }
  }
  o.require(worst < 1e-9, "double blow-up differs from the local angle difference");
  const double dt = seconds_since(t);
  o.require(dt < 5.0, "slower than 5 s");
  o.detail << "value " << e.value << ", |error| " << err << " <= bound " << e.error_bound << ", double max dev "
           << worst << ", " << dt << " s";
}

// 9: oracle equivalence on random loops
void oracle(Outcome& o) {
  rqtest::Gen gen(9);
  std::set<int> classes;
  for (int i = 0; i < 100; ++i) {
    const int cls = i % 11 - 5;
    const auto inst = rqtest::random_loop_instance(gen, cls);
    const int w = loop_class(inst.gamma, inst.alpha.front(), inst.alpha.back());
    const int c = crossing_count(inst.alpha, inst.gamma);
    o.require(w == c && w == cls, "instance " + std::to_string(i));
    classes.insert(w);
  }
  o.detail << "100 instances, " << classes.size() << " distinct classes in [-5,5]";
}

}  // namespace

int main() {
  struct Line {
    int id;
    const char* title;
    Outcome out;
  };
  Line lines[9] = {{1, "twist family exactness", {}},  {2, "identity suite", {}},
                   {3, "homomorphism and powers", {}}, {4, "Theta suite", {}},
                   {5, "F-symmetry", {}},              {6, "golden proof vectors", {}},
                   {7, "decomposition", {}},           {8, "blow-up convergence", {}},
                   {9, "oracle equivalence", {}}};

  auto guarded = [](Outcome& o, const std::function<void()>& fn) {
    try {
      fn();
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
  };
  guarded(lines[0].out, [&] { twist_family(lines[0].out); });
  guarded(lines[1].out, [&] { identity_suite(lines[1].out, lines[2].out); });
  guarded(lines[3].out, [&] { theta_suite(lines[3].out); });
  guarded(lines[4].out, [&] { fsym(lines[4].out); });
  guarded(lines[5].out, [&] { proof_vectors(lines[5].out); });
  guarded(lines[6].out, [&] { decomposition(lines[6].out); });
  guarded(lines[7].out, [&] { blowup(lines[7].out); });
  guarded(lines[8].out, [&] { oracle(lines[8].out); });

  int failed = 0;
  for (auto& l : lines) {
    std::printf("[%s] %d. %s: %s\n", l.out.pass ? "PASS" : "FAIL", l.id, l.title, l.out.detail.str().c_str());
    failed += !l.out.pass;
  }
  std::printf("%d/9 criteria passed\n", 9 - failed);
  return failed == 0 ? 0 : 1;
}
