#ifndef NECKLACE_RUN_HPP
#define NECKLACE_RUN_HPP

#include "necklace/config.hpp"

#include <ostream>

namespace necklace {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumeric = 3;

/// Executes one configured run and writes its output files. Messages go to
/// `log`. Returns the process exit status.
int run(const RunConfig &config, std::ostream &log);

} // namespace necklace

#endif // NECKLACE_RUN_HPP
