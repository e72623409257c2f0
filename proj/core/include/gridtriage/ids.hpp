#pragma once

#include <cstdint>
#include <string>

namespace gridtriage {

using BusId = std::int64_t;
using LineId = std::int64_t;
using ClassId = int;
using FeederId = std::string;

}  // namespace gridtriage
