#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace treedet {

// Exit status of the command line front end.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUnequal = 1;
inline constexpr int kExitConfig = 2;

// Runs `treedet <args...>`; args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace treedet
