#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace adbsde::cli {

/// Flat `section.key -> value` view of a run configuration.
using Settings = std::map<std::string, std::string>;

/// Parses `section.key = value` lines; `#` starts a comment.
Settings parse_config(std::istream& in, const std::string& origin = "config");

/// Entry point; returns 0 on success, 1 on a clean negative result, 2 on usage errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace adbsde::cli
