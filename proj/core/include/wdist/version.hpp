#pragma once

namespace wdist {

inline constexpr const char* kVersion = "1.0.0";

}
