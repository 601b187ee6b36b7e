#pragma once

#include <iosfwd>
#include <string>

#include "permint/family.hpp"

namespace permint {

// Family file format (text):
//   n=<n>
//   <n space-separated one-based images>   (one line per member)
// Lines starting with '#' are comments. The structured alternative is a JSON
// object {"n": <n>, "members": [[...], ...]}; parse_family sniffs the first
// non-space character to pick the format.

PermFamily parse_family(const std::string& path);
PermFamily parse_family_stream(std::istream& in, const std::string& name);

void emit_family(const PermFamily& F, const std::string& path);
void emit_family_text(const PermFamily& F, std::ostream& out);
void emit_family_json(const PermFamily& F, const std::string& path);

std::string family_to_json_string(const PermFamily& F);

}  // namespace permint
