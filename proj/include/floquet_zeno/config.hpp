// config.hpp — `key = value` parameter files

#pragma once

#include <istream>
#include <map>
#include <string>

#include "floquet_zeno/params.hpp"

namespace floquet_zeno::config {

// Raw key/value pairs; keys restricted to the SystemParams field names.
using Overrides = std::map<std::string, double>;

// Parses one `key = value` per line. Blank lines and `#` comments are
// ignored. Unknown or repeated keys and unparsable values throw
// Error{ConfigError}.
Overrides parse(std::istream& in);
Overrides load_file(const std::string& path);

bool is_known_key(const std::string& key);

// Applies overrides on top of base (no validation).
SystemParams apply(SystemParams base, const Overrides& overrides);

}  // namespace floquet_zeno::config
