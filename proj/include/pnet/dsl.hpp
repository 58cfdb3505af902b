#pragma once

#include <string>

#include "pnet/core.hpp"

namespace pnet {

struct ParseError : PnetError {
  int line;
  ParseError(const std::string& what, int line_no)
      : PnetError("line " + std::to_string(line_no) + ": " + what), line(line_no) {}
};

/// Line-oriented net description:
///   place <id> [init <n>]
///   trans <id>
///   arc <id> -> <id> [weight <n>]
///   # comment
/// Arcs connect a place and a transition (either direction); duplicate arcs,
/// undeclared identifiers and place-to-place arcs are rejected with the
/// offending line number.
System parse_net(const std::string& text);

/// Canonical text form; parse(serialize(s)) yields an equal system.
std::string serialize(const System& s);

}  // namespace pnet
