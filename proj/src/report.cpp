#include "rotquad/report.hpp"

#include <algorithm>
#include <tuple>

namespace rotquad {

const char* to_string(CheckStatus s) noexcept {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Inconclusive: return "inconclusive";
  }
  return "unknown";
}

void Report::append(const Report& other) {
  records_.insert(records_.end(), other.records_.begin(), other.records_.end());
}

void Report::sort() {
  std::stable_sort(records_.begin(), records_.end(), [](const CheckRecord& a, const CheckRecord& b) {
    return std::tie(a.name, a.inputs) < std::tie(b.name, b.inputs);
  });
}

std::size_t Report::count(CheckStatus s) const noexcept {
  return static_cast<std::size_t>(std::count_if(records_.begin(), records_.end(),
                                                [s](const CheckRecord& r) { return r.status == s; }));
}

bool Report::all_passed() const noexcept { return count(CheckStatus::Pass) == records_.size(); }

}  // namespace rotquad
