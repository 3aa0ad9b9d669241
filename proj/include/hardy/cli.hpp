#pragma once

namespace hardy::cli {

// Exit codes: 0 success, 1 numerical-contract failure (including a failed
// verification suite), 2 usage error.
int run(int argc, char** argv);

}  // namespace hardy::cli
