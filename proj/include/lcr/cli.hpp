// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The lcr Authors

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lcr {

/// Runs the command line (args excludes the program name). Reports go to
/// out as JSON, progress and logs to err. Pipeline failures print
/// {"error": <name>, "message": ...} to out and return 1; usage errors
/// return 2.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lcr
