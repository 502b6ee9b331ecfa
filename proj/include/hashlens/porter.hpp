#pragma once

#include <string>
#include <string_view>

namespace hashlens {

/// Porter (1980) suffix-stripping stemmer, following the reference
/// implementation distributed by its author (including the "bli"->"ble"
/// and "logi"->"log" rules). Expects a lower-case ASCII word; words of
/// length <= 2 and words containing other characters are returned as is.
std::string porter_stem(std::string_view word);

}  // namespace hashlens
