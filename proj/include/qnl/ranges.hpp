#pragma once

#include <string>
#include <vector>

namespace qnl {

/// Parse a scan specification into a value list.  Accepted forms:
///   "0.5"                 single value
///   "0.1,0.2,0.5"         comma list
///   "0.05:0.95:37"        37 linearly spaced values
///   "0.01:20:log:60"      60 log-spaced values
/// Throws std::invalid_argument with a message on malformed input.
std::vector<double> parse_range(const std::string& spec);

}  // namespace qnl
