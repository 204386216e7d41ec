#pragma once

namespace nanonmr {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace nanonmr
