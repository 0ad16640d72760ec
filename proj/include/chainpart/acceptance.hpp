#pragma once

#include <optional>
#include <string>
#include <vector>

namespace chainpart {

enum class Profile { Quick, Full };

struct AcceptanceOptions {
  Profile profile = Profile::Full;
  unsigned threads = 1;
  /// Run a single criterion (1-based) instead of all of them.
  std::optional<int> only;
  /// Test hook: plants a wrong W(19) in the count table used by the suite.
  bool corrupt_memo = false;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string detail;
  double seconds = 0;
};

constexpr int kCriterionCount = 14;

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts);

/// "PASS  3  12.41s  title: detail"
std::string format_text(const CriterionResult& r);
/// One JSON object per line.
std::string format_json(const CriterionResult& r);

}  // namespace chainpart
