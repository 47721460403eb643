#pragma once

namespace rdacert {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace rdacert
