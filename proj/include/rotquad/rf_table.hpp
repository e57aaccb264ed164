#pragma once

// R_f evaluated on every 4-tuple of a marked point set, as a FunctionTable.

#include <cstddef>
#include <string>
#include <vector>

#include "rotquad/rotation_invariant.hpp"
#include "rotquad/symmetry_algebra.hpp"

namespace rotquad {

struct RfTableOptions {
  EngineOptions engine;
  BlowupOptions blowup;
  /// Fill tuples with a repeated point from the blow-up extension where the
  /// local rotation is rigid. Otherwise only distinct tuples and degenerate
  /// pairs are filled.
  bool extend = true;
};

struct RfTable {
  FunctionTable table;
  std::size_t inconclusive = 0;  // distinct tuples left undefined
  std::vector<std::string> notes;
};

/// Distinct tuples use the loop method with jitter retries.
RfTable rf_table(const MapSpec& spec, const std::vector<NamedPoint>& points, const RfTableOptions& options = {});

}  // namespace rotquad
