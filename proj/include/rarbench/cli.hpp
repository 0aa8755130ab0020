#pragma once

namespace rarbench {
namespace cli {

// Exit codes: 0 success, 1 runtime failure, 2 usage error.
int run(int argc, const char* const* argv);

}  // namespace cli
}  // namespace rarbench
