#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pmiso::cli {

// Exit statuses.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitParse = 2;
inline constexpr int kExitSizeGuard = 3;
inline constexpr int kExitDomain = 4;

// args excludes the program name. The report goes to out, diagnostics to
// err; the graph is read from in when --graph is absent or "-".
int run_command(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
                std::ostream& err);

}  // namespace pmiso::cli
