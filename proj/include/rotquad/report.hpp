#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace rotquad {

enum class CheckStatus { Pass, Fail, Inconclusive };

const char* to_string(CheckStatus s) noexcept;

struct CheckRecord {
  std::string name;
  std::string inputs;
  std::vector<double> values;
  std::string expected;
  CheckStatus status = CheckStatus::Pass;
  double residual = 0.0;
};

/// Ordered collection of check records. Inconclusive records count as
/// failures for `all_passed`.
class Report {
 public:
  void add(CheckRecord record) { records_.push_back(std::move(record)); }
  void append(const Report& other);
  /// Lexicographic by (name, inputs); stable for equal keys.
  void sort();

  const std::vector<CheckRecord>& records() const noexcept { return records_; }
  std::size_t count(CheckStatus s) const noexcept;
  bool all_passed() const noexcept;

 private:
  std::vector<CheckRecord> records_;
};

}  // namespace rotquad
