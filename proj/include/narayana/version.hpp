#pragma once

#define NARAYANA_REPDIGITS_VERSION "0.1.0"

namespace narayana {
inline constexpr const char* version = NARAYANA_REPDIGITS_VERSION;
}
