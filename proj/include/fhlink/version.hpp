#pragma once

namespace fhlink {
inline constexpr const char* kVersion = "1.0.0";
}
