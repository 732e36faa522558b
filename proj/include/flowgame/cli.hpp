#pragma once

#include "flowgame/pathstruct.hpp"
#include "flowgame/netmodel.hpp"

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace flowgame {

namespace exit_code {
inline constexpr int success = 0;
inline constexpr int usage = 1;
inline constexpr int invalid = 2;
inline constexpr int size_guard = 3;
}  // namespace exit_code

/// Runs one subcommand. `args` excludes the program name. Reports go to
/// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Allocation file: one "player-id p/q" line per player, '#' comments.
/// Throws std::invalid_argument unless every player appears exactly once.
Allocation parse_allocation(const FlowNetwork& net, std::string_view text);
std::string format_allocation(const FlowNetwork& net, const Allocation& x);

}  // namespace flowgame
