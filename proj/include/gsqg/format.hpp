#pragma once

#include <string>

namespace gsqg {

/// Round-trippable decimal with 17 significant digits ("%.17g").
std::string format_double(double v);

}  // namespace gsqg
