#include <doctest.h>

#include <set>

#include "rotquad/rf_table.hpp"
#include "support.hpp"

using namespace rotquad;

namespace {

std::set<std::string> kinds(const MapSpec& m) {
  std::set<std::string> out;
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, RadialTwist>) {
          out.insert("twist");
        } else if constexpr (std::is_same_v<T, MobiusConjugate>) {
          out.insert("conjugate");
          out.merge(kinds(n.inner));
        } else if constexpr (std::is_same_v<T, Compose>) {
          out.insert("compose");
          for (const auto& p : n.parts) out.merge(kinds(p));
        } else if constexpr (std::is_same_v<T, InverseMap>) {
          out.insert("inverse");
          out.merge(kinds(n.inner));
        } else if constexpr (std::is_same_v<T, PowerMap>) {
          out.insert("power");
          out.merge(kinds(n.inner));
        } else {
          out.insert("identity");
        }
      },
      m.node());
  return out;
}

}  // namespace

TEST_CASE("the scenario corpus covers the map family") {
  const auto all = rqtest::corpus();
  CHECK(all.size() >= 20);
  std::set<std::string> seen;
  int pairs = 0;
  for (const auto& c : all) {
    seen.merge(kinds(c.map));
    CHECK(c.points.size() >= 5);
    pairs += c.g.has_value();
  }
  for (const char* k : {"twist", "conjugate", "compose", "inverse", "power", "identity"}) CHECK(seen.count(k) == 1);
  CHECK(pairs >= 5);
}

TEST_CASE("identity suite holds exactly on every corpus scenario") {
  for (const auto& c : rqtest::corpus()) {
    CAPTURE(c.name);
    const Report r = verify_rf_identities(c.map, c.g, c.points, c.engine);
    CHECK(r.count(CheckStatus::Fail) == 0);
    CHECK(r.count(CheckStatus::Inconclusive) == 0);
    for (const auto& rec : r.records()) {
      if (rec.status != CheckStatus::Pass) MESSAGE(rec.name << " " << rec.inputs << " residual " << rec.residual);
    }
  }
}

TEST_CASE("R_f tables satisfy relations, F-symmetry and decompose") {
  for (const auto& c : rqtest::corpus()) {
    CAPTURE(c.name);
    RfTableOptions o;
    o.engine = c.engine;
    const RfTable t = rf_table(c.map, c.points, o);
    CHECK(t.inconclusive == 0);
    CHECK(t.table.total_on_distinct());
    const Report rel = check_relations(t.table);
    CHECK(rel.all_passed());
    for (const auto& rec : rel.records()) {
      if (rec.status != CheckStatus::Pass) MESSAGE(rec.name << " " << rec.inputs);
    }
    const Report fs = verify_theorem_Fsym(t.table, ThetaConvention::Action, 0.0);
    CHECK(fs.records().size() == 24);
    CHECK(fs.all_passed());
    CHECK_NOTHROW((void)decompose_g(t.table));
  }
}
