#pragma once

namespace rpp {

inline constexpr char kVersion[] = "0.1.0";

}  // namespace rpp
