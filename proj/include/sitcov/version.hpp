#pragma once

namespace sitcov {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace sitcov
