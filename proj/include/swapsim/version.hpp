// version.hpp: tool version constant, embedded in result provenance
#pragma once

#include <string_view>

namespace swapsim {

inline constexpr std::string_view kVersion = "0.1.0";

}  // namespace swapsim
