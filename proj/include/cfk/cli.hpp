#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cfk {

/**
 * Command-line front door.  Subcommands: enumerate, export-complex,
 * export-fan, trace, foliate, green, homology, polygons, verify.
 * Returns the process exit code (0 ok, 1 error/failed check, 2 truncated
 * enumeration).
 */
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace cfk
