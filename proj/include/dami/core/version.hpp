#pragma once

namespace dami {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace dami
