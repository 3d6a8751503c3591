// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace thompson::cli {

struct CommandInfo {
  std::string name;
  /// Library operations the subcommand calls.
  std::vector<std::string> operations;
};

const std::vector<CommandInfo>& command_table();

/// Runs one command line (without the program name). Returns 0 on success,
/// 1 on a domain error (its name goes to `err`), 2 on a usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace thompson::cli
