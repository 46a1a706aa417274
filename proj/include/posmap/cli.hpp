#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace posmap::cli {

/// Runs one CLI invocation. Machine output goes to `out`, logs to `err`.
/// Exit codes: 0 success, 1 failed verification, 2 usage error.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

/// Worker-pool width: POSMAP_THREADS if set, hardware concurrency otherwise.
int worker_threads();

}  // namespace posmap::cli
