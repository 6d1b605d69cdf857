#pragma once

#include <cstdint>
#include <vector>

namespace loopchar {

using IntVector = std::vector<std::int64_t>;

}  // namespace loopchar
