#pragma once

namespace lcube {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace lcube
