#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace levycds::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitCompute = 3;
inline constexpr int kExitVerify = 4;

/// Runs one subcommand. args excludes the program name. Tables go to `out`
/// (or the --output file), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int main(int argc, char** argv);

}  // namespace levycds::cli
