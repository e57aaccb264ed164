#include "rotquad/rf_table.hpp"

#include "parallel.hpp"
#include "rotquad/error.hpp"

namespace rotquad {

RfTable rf_table(const MapSpec& spec, const std::vector<NamedPoint>& points, const RfTableOptions& options) {
  std::vector<std::string> labels;
  std::vector<SpherePoint> pts;
  for (const NamedPoint& p : points) {
    labels.push_back(p.name);
    pts.push_back(p.point);
  }
  if (points.size() < 4) throw Error(ErrorKind::InvalidInput, "an R_f table needs at least 4 points");
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      if (pts[i] == pts[j]) throw Error(ErrorKind::CoincidentPoints, labels[i] + " and " + labels[j] + " coincide");
    }
  }
  fixed_points(spec, pts, options.engine.tol);

  RfTable out{FunctionTable(labels), 0, {}};
  const auto tuples = out.table.tuples(false);
  std::vector<std::optional<double>> values(tuples.size());
  std::vector<std::string> notes(tuples.size());
  const std::size_t n = points.size();

  detail::parallel_for(tuples.size(), [&](std::size_t i) {
    const auto& t = tuples[i];
    const MarkedTuple x{pts[static_cast<std::size_t>(t[0])], pts[static_cast<std::size_t>(t[1])],
                        pts[static_cast<std::size_t>(t[2])], pts[static_cast<std::size_t>(t[3])]};
    const bool distinct = t[0] != t[1] && t[0] != t[2] && t[0] != t[3] && t[1] != t[2] && t[1] != t[3] && t[2] != t[3];
    if (t[0] == t[1] || t[2] == t[3]) {
      values[i] = 0.0;
    } else if (distinct) {
      const std::uint64_t stream = ((static_cast<std::uint64_t>(t[0]) * n + t[1]) * n + t[2]) * n + t[3];
      const RfOutcome r = compute_rf(spec, x, Method::Loop, options.engine, stream);
      if (r.value) {
        values[i] = *r.value;
      } else {
        notes[i] = label_tuple(out.table, t) + ": " + r.message;
      }
    } else if (options.extend) {
      values[i] = rf_extended(spec, x, options.blowup, options.engine.tol);
    }
  });

  for (std::size_t i = 0; i < tuples.size(); ++i) {
    if (values[i]) out.table.set(tuples[i], *values[i]);
    if (!notes[i].empty()) {
      ++out.inconclusive;
      out.notes.push_back(notes[i]);
    }
  }
  return out;
}

}  // namespace rotquad
