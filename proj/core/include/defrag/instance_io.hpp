#pragma once

#include "defrag/layout.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace defrag {

/**
 * Line-oriented instance format:
 *
 *   # comment
 *   device <length>
 *   types <slot-type string>          (optional, default all logic)
 *   module <id> <start> <pattern>     (one per module)
 *
 * Blank lines and text after '#' at the start of a line are ignored. Slot
 * indices are 0-based. Throws DefragError(Parse) on malformed input and the
 * usual layout errors on an invalid placement.
 */
Layout read_instance(std::istream &in);
Layout read_instance_file(const std::string &path);

/// Writes the layout; each entry of `comments` becomes a leading "# " line.
void write_instance(std::ostream &out, const Layout &layout, const std::vector<std::string> &comments = {});

/// One `move <id> <new_start>` line per move.
void write_moves(std::ostream &out, const std::vector<Move> &moves);

}  // namespace defrag
