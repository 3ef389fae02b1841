#pragma once

namespace boa {

inline constexpr const char* kToolVersion = "boa 0.1.0";

}  // namespace boa
