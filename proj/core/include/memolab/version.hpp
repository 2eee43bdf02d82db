#pragma once

namespace memolab {

inline constexpr const char* kVersion = "memolab-0.1.0";

}  // namespace memolab
