#pragma once

#include <string_view>

namespace screenforge::render {

// The in-page extraction script shipped with the library. It defines
// `__screenforgeExtract()` returning the payload as a JSON string.
std::string_view bundled_extractor_source();

}  // namespace screenforge::render
