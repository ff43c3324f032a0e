#ifndef NECKLACE_VERIFY_HPP
#define NECKLACE_VERIFY_HPP

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace necklace {

struct CheckResult {
  std::string name;
  bool passed;
  std::string detail;
};

struct VerifyOptions {
  long chain_length = 20000;
  int realizations = 8;
  std::uint64_t seed = 1;
};

/// Reduced-scale run of every invariant of the library, one row per invariant.
std::vector<CheckResult> run_verification(const VerifyOptions &options);

/// Prints `PASS|FAIL  name  detail` rows; returns true iff every row passed.
bool print_table(std::ostream &out, const std::vector<CheckResult> &rows);

} // namespace necklace

#endif // NECKLACE_VERIFY_HPP
