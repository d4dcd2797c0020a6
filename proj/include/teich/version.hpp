#pragma once

namespace teich {

inline constexpr const char* kVersion = "0.1.0";

}
