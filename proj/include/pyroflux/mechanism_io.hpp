#pragma once

#include <string>

#include "pyroflux/kinetics.hpp"

namespace pyroflux::kinetics {

// Parse and validate a mechanism JSON document. Messages carry the file
// path plus the offending species/reaction so bad files are rejected with
// actionable context; syntax errors carry the line number.
ReactionMechanism load_mechanism(const std::string& path);
ReactionMechanism parse_mechanism(const std::string& json_text, const std::string& origin);

}  // namespace pyroflux::kinetics
