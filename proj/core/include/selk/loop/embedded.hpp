#pragma once

#include <string_view>

namespace selk::loop {

/// Loop-language sources compiled into the library, by file name
/// ("lib.loop", "stdlib.loop", "prf.loop"). Empty if unknown.
std::string_view embedded_source(std::string_view name);

}  // namespace selk::loop
