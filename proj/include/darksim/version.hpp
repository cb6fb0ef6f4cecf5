#pragma once

namespace darksim {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace darksim
