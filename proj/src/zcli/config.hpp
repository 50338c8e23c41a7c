#pragma once

#include <map>
#include <string>

namespace zcli {

using ConfigMap = std::map<std::string, std::string>;

// Flat `key = value` lines; `#` starts a comment. Throws std::runtime_error naming the bad line.
ConfigMap load_config(const std::string& path);
ConfigMap parse_config(const std::string& text, const std::string& origin = "<config>");

}  // namespace zcli
