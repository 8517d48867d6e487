#pragma once

#include <string>
#include <vector>

#include "duc/perm_map.h"

namespace duc {

/// Named permutation maps transcribed from their published tables.
PermMap builtin_map(const std::string &name);
std::vector<std::string> builtin_names();

}  // namespace duc
